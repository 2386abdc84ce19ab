#include "trp/slcf_grammar.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

namespace trp {

std::uint32_t SlcfGrammar::add_production(int rank) {
  prods.push_back({-1, rank, true});
  refs_.emplace_back();
  ref_count_.push_back(0);
  return static_cast<std::uint32_t>(prods.size() - 1);
}

std::int32_t SlcfGrammar::add_node(Symbol s, std::int32_t parent) {
  auto id = static_cast<std::int32_t>(nodes.size());
  nodes.push_back({s, parent, -1, true, {}});
  if (parent >= 0) {
    auto& kids = nodes[parent].kids;
    auto ps = nodes[parent].sym;
    if (kids.empty() && (!ps.is_nonterminal() || ps.id < prods.size())) kids.reserve(std::max(rank(ps), 1));
    kids.push_back(id);
  }
  if (s.is_nonterminal()) {
    if (s.id >= refs_.size()) {
      refs_.resize(s.id + 1);
      ref_count_.resize(s.id + 1, 0);
    }
    refs_[s.id].push_back(id);
    ++ref_count_[s.id];
  }
  return id;
}

void SlcfGrammar::set_root(std::uint32_t a, std::int32_t node) {
  prods[a].root = node;
  nodes[node].parent = -1;
  nodes[node].owner = static_cast<std::int32_t>(a);
}

int SlcfGrammar::rank(Symbol s) const {
  switch (s.kind) {
    case Symbol::Kind::Terminal: return alphabet.at(s.id).rank();
    case Symbol::Kind::Nonterminal: return prods.at(s.id).rank;
    default: return 0;
  }
}

std::string SlcfGrammar::symbol_name(Symbol s) const {
  switch (s.kind) {
    case Symbol::Kind::Terminal: {
      const auto& t = alphabet.at(s.id);
      return t.name + "^" + characteristic_bits(t.ch);
    }
    case Symbol::Kind::Nonterminal: return s.id == start ? "S" : "A" + std::to_string(s.id);
    default: return "y";
  }
}

std::vector<std::uint32_t> SlcfGrammar::nonterminals() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 0; a < prods.size(); ++a)
    if (prods[a].alive) out.push_back(a);
  return out;
}

std::vector<std::int32_t> SlcfGrammar::preorder(std::int32_t root) const {
  std::vector<std::int32_t> out;
  for_each_preorder(root, [&](std::int32_t v) { out.push_back(v); });
  return out;
}

std::size_t SlcfGrammar::rhs_edges(std::uint32_t a) const {
  std::size_t n = 0;
  for_each_preorder(prods.at(a).root, [&](std::int32_t) { ++n; });
  return n - 1;
}

std::size_t SlcfGrammar::size() const {
  std::size_t s = 0;
  for (auto a : nonterminals()) s += rhs_edges(a);
  return s;
}

std::vector<std::pair<std::uint32_t, std::int32_t>> SlcfGrammar::ref(std::uint32_t a) const {
  if (a >= prods.size() || !prods[a].alive) throw std::out_of_range("unknown nonterminal " + std::to_string(a));
  std::vector<std::pair<std::uint32_t, std::int32_t>> out;
  if (a >= refs_.size()) return out;
  for (auto v : refs_[a]) {
    if (!nodes[v].alive || nodes[v].sym != Symbol::nonterminal(a)) continue;
    auto r = v;
    while (nodes[r].parent >= 0) r = nodes[r].parent;
    out.emplace_back(static_cast<std::uint32_t>(nodes[r].owner), v);
  }
  return out;
}

std::vector<std::int32_t> SlcfGrammar::ref_nodes(std::uint32_t a) {
  auto& list = refs_[a];
  std::erase_if(list, [&](std::int32_t v) { return !nodes[v].alive || nodes[v].sym != Symbol::nonterminal(a); });
  std::sort(list.begin(), list.end());
  list.erase(std::unique(list.begin(), list.end()), list.end());
  return list;
}

long long SlcfGrammar::sav(std::uint32_t a) const {
  if (a == start) throw std::logic_error("sav of the start nonterminal");
  auto t = static_cast<long long>(rhs_edges(a));
  return static_cast<long long>(ref_count(a)) * (t - prods[a].rank) - t;
}

std::vector<std::uint32_t> SlcfGrammar::hierarchical_order() const {
  auto live = nonterminals();
  std::vector<std::vector<std::uint32_t>> users(prods.size());
  std::vector<std::size_t> pending(prods.size(), 0);
  for (auto a : live) {
    std::vector<std::uint32_t> used;
    for_each_preorder(prods[a].root, [&](std::int32_t v) {
      if (nodes[v].sym.is_nonterminal()) used.push_back(nodes[v].sym.id);
    });
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (auto b : used) {
      if (b >= prods.size() || !prods[b].alive) throw std::logic_error("reference to missing nonterminal");
      users[b].push_back(a);
    }
    pending[a] = used.size();
  }
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
  for (auto a : live)
    if (pending[a] == 0 && a != start) ready.push(a);
  std::vector<std::uint32_t> order;
  bool start_ready = pending[start] == 0;
  while (!ready.empty()) {
    auto a = ready.top();
    ready.pop();
    order.push_back(a);
    for (auto u : users[a])
      if (--pending[u] == 0) {
        if (u == start) start_ready = true;
        else ready.push(u);
      }
  }
  if (!start_ready || order.size() + 1 != live.size()) throw std::logic_error("cyclic grammar");
  order.push_back(start);
  return order;
}

void SlcfGrammar::kill_subtree(std::int32_t v) {
  std::vector<std::int32_t> stack{v};
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    nodes[u].alive = false;
    if (nodes[u].sym.is_nonterminal()) --ref_count_[nodes[u].sym.id];
    for (auto k : nodes[u].kids) stack.push_back(k);
  }
}

void SlcfGrammar::replace_node(std::int32_t old_node, std::int32_t new_node) {
  auto p = nodes[old_node].parent;
  if (p < 0) {
    set_root(static_cast<std::uint32_t>(nodes[old_node].owner), new_node);
    return;
  }
  nodes[new_node].parent = p;
  nodes[new_node].owner = -1;
  for (auto& k : nodes[p].kids)
    if (k == old_node) k = new_node;
}

void SlcfGrammar::eliminate(std::uint32_t a) {
  if (a == start) throw std::logic_error("cannot eliminate the start production");
  auto refs = ref_nodes(a);
  auto rhs = preorder(prods[a].root);
  for (std::size_t r = 0; r < refs.size(); ++r) {
    auto v = refs[r];
    std::vector<std::int32_t> args(nodes[v].kids.begin(), nodes[v].kids.end());
    std::size_t next_arg = 0;
    if (r + 1 < refs.size()) {
      // Copy the right-hand side, substituting the reference's subtrees for parameters.
      std::vector<std::int32_t> image(nodes.size(), -1);
      std::int32_t root_copy = -1;
      for (auto u : rhs) {
        auto pu = nodes[u].parent;
        std::int32_t pc = (u == prods[a].root) ? -1 : image[pu];
        if (nodes[u].sym.is_parameter()) {
          auto arg = args.at(next_arg++);
          nodes[arg].parent = pc;
          nodes[pc].kids.push_back(arg);
        } else {
          auto c = add_node(nodes[u].sym, pc);
          if (u >= static_cast<std::int32_t>(image.size())) image.resize(u + 1, -1);
          image[u] = c;
          if (pc < 0) root_copy = c;
        }
      }
      replace_node(v, root_copy);
    } else {
      for (auto u : rhs) {
        if (!nodes[u].sym.is_parameter()) continue;
        auto arg = args.at(next_arg++);
        replace_node(u, arg);
        nodes[u].alive = false;
      }
      auto root = prods[a].root;
      nodes[root].owner = -1;
      replace_node(v, root);
    }
    nodes[v].alive = false;
    --ref_count_[a];
  }
  if (refs.empty()) kill_subtree(prods[a].root);
  prods[a].alive = false;
  prods[a].root = -1;
}

BinaryTree SlcfGrammar::unfold(std::size_t cap) const {
  std::vector<std::int32_t> param_ord(nodes.size(), -1);
  for (auto a : nonterminals()) {
    int k = 0;
    for (auto v : preorder(prods[a].root))
      if (nodes[v].sym.is_parameter()) param_ord[v] = k++;
  }
  struct Thunk {
    std::int32_t node;
    std::int32_t env;  // offset into envs, -1 for none
  };
  std::vector<Thunk> envs;
  struct Item {
    Thunk th;
    std::int32_t parent;
    int slot;
  };
  BinaryTree out;
  out.alphabet = alphabet;
  std::vector<Item> stack{{{prods[start].root, -1}, -1, 0}};
  while (!stack.empty()) {
    auto [th, parent, slot] = stack.back();
    stack.pop_back();
    while (!nodes[th.node].sym.is_terminal()) {
      const auto& n = nodes[th.node];
      if (n.sym.is_parameter()) {
        th = envs.at(th.env + param_ord[th.node]);
      } else {
        auto env = static_cast<std::int32_t>(envs.size());
        for (auto k : n.kids) envs.push_back({k, th.env});
        th = {prods[n.sym.id].root, env};
      }
    }
    if (out.nodes.size() >= cap) throw std::length_error("unfolded tree exceeds size cap");
    auto id = static_cast<std::int32_t>(out.nodes.size());
    out.nodes.emplace_back();
    out.nodes[id].label = nodes[th.node].sym.id;
    out.nodes[id].parent = parent;
    out.nodes[id].index = slot;
    if (parent >= 0) out.nodes[parent].kid[slot] = id;
    const auto& k = nodes[th.node].kids;
    for (int i = static_cast<int>(k.size()) - 1; i >= 0; --i) stack.push_back({{k[i], th.env}, id, i});
  }
  return out;
}

std::size_t SlcfGrammar::unfolded_edges() const { return unfolded_edges(hierarchical_order()); }

std::size_t SlcfGrammar::unfolded_edges(const std::vector<std::uint32_t>& order) const {
  std::vector<std::size_t> expanded(prods.size(), 0);
  constexpr std::size_t kMax = std::size_t{1} << 62;
  for (auto a : order) {
    std::size_t e = 0;
    for_each_preorder(prods[a].root, [&](std::int32_t v) {
      const auto& s = nodes[v].sym;
      if (s.is_terminal()) e += 1;
      else if (s.is_nonterminal()) e += expanded[s.id];
      e = std::min(e, kMax);
    });
    expanded[a] = e;
  }
  return expanded[start] - 1;
}

std::string SlcfGrammar::to_text() const {
  std::string out;
  for (auto a : hierarchical_order()) {
    out += symbol_name(Symbol::nonterminal(a));
    if (prods[a].rank > 0) {
      out += '(';
      for (int i = 0; i < prods[a].rank; ++i) out += i ? ",y" : "y";
      out += ')';
    }
    out += " -> ";
    std::function<void(std::int32_t)> emit = [&](std::int32_t v) {
      out += symbol_name(nodes[v].sym);
      if (nodes[v].kids.empty()) return;
      out += '(';
      for (std::size_t i = 0; i < nodes[v].kids.size(); ++i) {
        if (i) out += ',';
        emit(nodes[v].kids[i]);
      }
      out += ')';
    };
    emit(prods[a].root);
    out += '\n';
  }
  return out;
}

void SlcfGrammar::validate() const {
  if (start >= prods.size() || !prods[start].alive || prods[start].rank != 0)
    throw std::logic_error("invalid start production");
  for (auto a : nonterminals()) {
    int params = 0;
    for (auto v : preorder(prods[a].root)) {
      const auto& n = nodes[v];
      if (!n.alive) throw std::logic_error("dead node in right-hand side");
      if (static_cast<int>(n.kids.size()) != rank(n.sym))
        throw std::logic_error("rank mismatch at " + symbol_name(n.sym));
      for (auto k : n.kids)
        if (nodes[k].parent != v) throw std::logic_error("broken parent link");
      if (n.sym.is_parameter()) ++params;
      if (n.sym.is_nonterminal() && (n.sym.id >= prods.size() || !prods[n.sym.id].alive))
        throw std::logic_error("reference to missing nonterminal");
    }
    if (params != prods[a].rank) throw std::logic_error("parameter count differs from rank");
    if (nodes[prods[a].root].sym.is_parameter()) throw std::logic_error("bare parameter right-hand side");
  }
  hierarchical_order();
}

SlcfGrammar SlcfGrammar::compacted() const {
  SlcfGrammar g;
  g.alphabet = alphabet;
  g.start = start;
  for (const auto& p : prods) {
    g.add_production(p.rank);
    g.prods.back().alive = p.alive;
  }
  g.nodes.reserve(static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return n.alive; })));
  for (auto a : nonterminals()) {
    std::vector<std::pair<std::int32_t, std::int32_t>> stack{{prods[a].root, -1}};
    while (!stack.empty()) {
      auto [v, parent] = stack.back();
      stack.pop_back();
      auto c = g.add_node(nodes[v].sym, parent);
      if (parent < 0) g.set_root(a, c);
      // Children are pushed after creation so they are appended in order.
      const auto& k = nodes[v].kids;
      for (auto it = k.rbegin(); it != k.rend(); ++it) stack.emplace_back(*it, c);
    }
  }
  return g;
}

SlcfGrammar grammar_from_tree(const BinaryTree& t) {
  SlcfGrammar g;
  g.alphabet = t.alphabet;
  g.start = g.add_production(0);
  std::vector<std::int32_t> image(t.size(), -1);
  g.nodes.reserve(t.size());
  for (std::size_t v = 0; v < t.size(); ++v) {
    auto p = t.nodes[v].parent;
    image[v] = g.add_node(Symbol::terminal(t.nodes[v].label), p < 0 ? -1 : image[p]);
  }
  g.set_root(g.start, image[0]);
  return g;
}

}  // namespace trp
