#include "trp/fixtures.hpp"

#include <stdexcept>

namespace trp {

std::string books_xml() {
  std::string s = "<books>";
  for (int i = 0; i < 5; ++i) s += "<book><author/><title/><isbn/></book>";
  return s + "</books>";
}

namespace {

// Perfect binary tree in preorder; leaf(k) names the k-th leaf from the left.
template <class LeafName>
BinaryTree perfect(int depth, LeafName leaf) {
  BinaryTree t;
  auto f = t.alphabet.intern("f", Characteristic::TwoChildren);
  std::vector<std::tuple<std::int32_t, int, int>> stack{{-1, 0, 0}};
  std::uint64_t leaves = 0;
  while (!stack.empty()) {
    auto [parent, slot, level] = stack.back();
    stack.pop_back();
    auto v = static_cast<std::int32_t>(t.nodes.size());
    t.nodes.emplace_back();
    auto& n = t.nodes.back();
    n.parent = parent;
    n.index = slot;
    if (parent >= 0) t.nodes[parent].kid[slot] = v;
    if (level == depth) {
      t.nodes[v].label = t.alphabet.intern(leaf(leaves++), Characteristic::NoChildren);
    } else {
      t.nodes[v].label = f;
      stack.emplace_back(v, 1, level + 1);
      stack.emplace_back(v, 0, level + 1);
    }
  }
  return t;
}

}  // namespace

BinaryTree gen_perfect_binary(int d) {
  if (d < 1) throw std::invalid_argument("depth must be at least 1");
  return perfect(d, [](std::uint64_t) { return std::string("a"); });
}

BinaryTree gen_M(int i) {
  if (i < 1 || i > 4) throw std::invalid_argument("gen_M supports 1 <= i <= 4");
  return perfect(1 << i, [](std::uint64_t k) { return "leaf_" + std::to_string(k); });
}

char u_label(std::uint64_t i) { return static_cast<char>('a' + i % 5); }

BinaryTree gen_U(int n) {
  if (n < 3 || n > 24) throw std::invalid_argument("gen_U supports 3 <= n <= 24");
  BinaryTree t;
  auto f = t.alphabet.intern("f", Characteristic::TwoChildren);
  std::uint64_t spine = std::uint64_t{1} << n;
  t.nodes.reserve(2 * spine + 1);
  std::int32_t prev = -1;
  for (std::uint64_t i = 0; i <= spine; ++i) {
    auto v = static_cast<std::int32_t>(t.nodes.size());
    t.nodes.emplace_back();
    t.nodes[v].parent = prev;
    t.nodes[v].index = 1;
    if (prev >= 0) t.nodes[prev].kid[1] = v;
    if (i == spine) {
      t.nodes[v].label = t.alphabet.intern(std::string(1, u_label(i)), Characteristic::NoChildren);
      break;
    }
    t.nodes[v].label = f;
    auto leaf = static_cast<std::int32_t>(t.nodes.size());
    t.nodes.emplace_back();
    t.nodes[leaf].parent = v;
    t.nodes[leaf].index = 0;
    t.nodes[leaf].label = t.alphabet.intern(std::string(1, u_label(i)), Characteristic::NoChildren);
    t.nodes[v].kid[0] = leaf;
    prev = v;
  }
  t.nodes[0].index = 0;
  return t;
}

BinaryTree random_tree(std::mt19937_64& rng, std::size_t max_nodes, int labels) {
  std::uniform_int_distribution<std::size_t> size_dist(2, std::max<std::size_t>(2, max_nodes));
  std::uniform_int_distribution<int> label_dist(0, labels - 1);
  std::size_t n = size_dist(rng);
  // Random parent sequence: node k attaches below a node on the current open path.
  TreeBuilder b;
  b.start_element("r");
  std::size_t depth = 1;
  for (std::size_t k = 1; k < n; ++k) {
    std::uniform_int_distribution<std::size_t> close_dist(0, depth - 1);
    std::size_t close = close_dist(rng);
    if (rng() % 3 != 0) close = 0;
    for (std::size_t c = 0; c < close; ++c) b.end_element();
    depth -= close;
    b.start_element("e" + std::to_string(label_dist(rng)));
    ++depth;
  }
  while (depth-- > 0) b.end_element();
  return b.finish();
}

}  // namespace trp
