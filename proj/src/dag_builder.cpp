#include "trp/dag_builder.hpp"

#include <array>
#include <unordered_map>

namespace trp {

namespace {

// Label and up to two child symbols; unused positions hold kNone.
using Key = std::array<std::uint64_t, 3>;
constexpr std::uint64_t kNone = ~std::uint64_t{0};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : k) h = (h ^ x) * 1099511628211ull + (h >> 29);
    return h;
  }
};

class Sharer {
 public:
  explicit Sharer(const BinaryTree& t) : t_(t), g_(grammar_from_tree(t)), done_(t.size(), 0) {}

  SlcfGrammar run() {
    for (auto v : postorder(t_)) {
      share(v);
      done_[v] = 1;
    }
    return std::move(g_);
  }

 private:
  // Key of a node whose children are all leaves or references.
  bool key(std::int32_t v, Key& k) const {
    const auto& n = g_.nodes[v];
    k = {n.sym.key(), kNone, kNone};
    for (std::size_t i = 0; i < n.kids.size(); ++i) {
      const auto& s = g_.nodes[n.kids[i]];
      if (!s.sym.is_nonterminal() && !s.kids.empty()) return false;
      k[i + 1] = s.sym.key();
    }
    return true;
  }

  void to_reference(std::int32_t v, std::uint32_t x) {
    auto p = g_.nodes[v].parent;
    auto r = g_.add_node(Symbol::nonterminal(x), -1);
    g_.nodes[r].parent = p;
    for (auto& k : g_.nodes[p].kids)
      if (k == v) k = r;
  }

  void kill(std::int32_t v) {
    std::vector<std::int32_t> stack{v};
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      g_.nodes[u].alive = false;
      for (auto k : g_.nodes[u].kids) stack.push_back(k);
    }
  }

  void share(std::int32_t v) {
    if (g_.nodes[v].kids.empty() || g_.nodes[v].parent < 0) return;
    Key k;
    if (!key(v, k)) return;
    auto [it, fresh] = seen_.try_emplace(k, Entry{v, -1});
    if (fresh) return;
    auto& e = it->second;
    if (e.prod < 0) {
      auto u = e.node;
      auto p = g_.nodes[u].parent;
      e.prod = static_cast<std::int32_t>(g_.add_production(0));
      to_reference(u, static_cast<std::uint32_t>(e.prod));
      g_.set_root(static_cast<std::uint32_t>(e.prod), u);
      if (done_[p]) {
        Key pk;
        if (g_.nodes[p].parent >= 0 && key(p, pk)) seen_.try_emplace(pk, Entry{p, -1});
      }
    }
    to_reference(v, static_cast<std::uint32_t>(e.prod));
    kill(v);
  }

  struct Entry {
    std::int32_t node;
    std::int32_t prod;
  };
  const BinaryTree& t_;
  SlcfGrammar g_;
  std::vector<std::uint8_t> done_;
  std::unordered_map<Key, Entry, KeyHash> seen_;
};

}  // namespace

bool collapse_single_refs(SlcfGrammar& g) {
  bool any = false, changed = false;
  for (std::uint32_t a = 0; a < g.prods.size() && !changed; ++a)
    changed = g.prods[a].alive && a != g.start && g.ref_count(a) == 1;
  while (changed) {
    changed = false;
    auto order = g.hierarchical_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it)
      if (*it != g.start && g.ref_count(*it) == 1) {
        g.eliminate(*it);
        changed = any = true;
      }
  }
  return any;
}

SlcfGrammar build_dag(const BinaryTree& t) {
  auto g = Sharer(t).run().compacted();
  if (!collapse_single_refs(g)) return g;
  return g.compacted();
}

}  // namespace trp
