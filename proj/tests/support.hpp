// Test helpers: term syntax for trees and grammars, and independent oracles.
#pragma once

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "trp/slcf_grammar.hpp"
#include "trp/xml_tree.hpp"

namespace test {

// Term "f(a,g(b))"; a name may carry a characteristic suffix "^01".
struct Term {
  std::string name;
  std::vector<Term> kids;
};

inline Term parse_term(const std::string& s) {
  std::size_t pos = 0;
  std::function<Term()> go = [&]() {
    Term t;
    while (pos < s.size() && s[pos] == ' ') ++pos;
    while (pos < s.size() && s[pos] != '(' && s[pos] != ',' && s[pos] != ')') t.name += s[pos++];
    while (!t.name.empty() && t.name.back() == ' ') t.name.pop_back();
    if (pos < s.size() && s[pos] == '(') {
      ++pos;
      while (true) {
        t.kids.push_back(go());
        if (s[pos++] == ')') break;
      }
    }
    return t;
  };
  return go();
}

inline std::pair<std::string, trp::Characteristic> terminal_of(const Term& t) {
  auto hat = t.name.find('^');
  if (hat != std::string::npos) {
    auto bits = t.name.substr(hat + 1);
    int v = (bits[0] - '0') * 2 + (bits[1] - '0');
    return {t.name.substr(0, hat), static_cast<trp::Characteristic>(v)};
  }
  static const trp::Characteristic by_rank[] = {trp::Characteristic::NoChildren, trp::Characteristic::NoRightChild,
                                                trp::Characteristic::TwoChildren};
  return {t.name, by_rank[t.kids.size()]};
}

inline trp::BinaryTree make_tree(const std::string& s) {
  trp::BinaryTree bt;
  std::function<void(const Term&, std::int32_t, int)> go = [&](const Term& t, std::int32_t parent, int slot) {
    auto v = static_cast<std::int32_t>(bt.nodes.size());
    bt.nodes.emplace_back();
    auto [name, ch] = terminal_of(t);
    bt.nodes[v].label = bt.alphabet.intern(name, ch);
    bt.nodes[v].parent = parent;
    bt.nodes[v].index = slot;
    if (parent >= 0) bt.nodes[parent].kid[slot] = v;
    for (std::size_t i = 0; i < t.kids.size(); ++i) go(t.kids[i], v, static_cast<int>(i));
  };
  go(parse_term(s), -1, 0);
  return bt;
}

// Productions as (lhs, rhs); the first is the start. "y" is a parameter.
inline trp::SlcfGrammar make_grammar(const std::vector<std::pair<std::string, std::string>>& prods) {
  trp::SlcfGrammar g;
  std::map<std::string, std::uint32_t> nts;
  std::vector<Term> terms;
  for (const auto& [lhs, rhs] : prods) {
    nts[lhs] = g.add_production(0);
    terms.push_back(parse_term(rhs));
  }
  g.start = 0;
  for (std::size_t a = 0; a < prods.size(); ++a) {
    int params = 0;
    std::function<std::int32_t(const Term&, std::int32_t)> go = [&](const Term& t, std::int32_t parent) {
      trp::Symbol s;
      if (t.name == "y") {
        s = trp::Symbol::parameter();
        ++params;
      } else if (nts.count(t.name)) {
        s = trp::Symbol::nonterminal(nts[t.name]);
      } else {
        auto [name, ch] = terminal_of(t);
        s = trp::Symbol::terminal(g.alphabet.intern(name, ch));
      }
      auto v = g.add_node(s, parent);
      for (const auto& k : t.kids) go(k, v);
      return v;
    };
    g.set_root(static_cast<std::uint32_t>(a), go(terms[a], -1));
    g.prods[a].rank = params;
  }
  return g;
}

// ---- Oracles ----

inline std::vector<std::int32_t> recursive_postorder(const trp::BinaryTree& t) {
  std::vector<std::int32_t> out;
  std::function<void(std::int32_t)> go = [&](std::int32_t v) {
    for (int i = 0; i < t.rank(v); ++i) go(t.child(v, i));
    out.push_back(v);
  };
  go(0);
  return out;
}

struct UTree {
  std::string name;
  std::vector<UTree> kids;
};

inline UTree random_utree(std::mt19937_64& rng, int max_nodes, int labels) {
  int budget = 1 + static_cast<int>(rng() % max_nodes);
  std::function<UTree(int)> go = [&](int depth) {
    UTree u{"e" + std::to_string(rng() % labels), {}};
    while (budget > 1 && depth < 12 && rng() % 3 != 0) {
      --budget;
      u.kids.push_back(go(depth + 1));
    }
    return u;
  };
  UTree root{"root", {}};
  while (budget > 1) {
    --budget;
    root.kids.push_back(go(1));
  }
  if (root.kids.empty()) root.kids.push_back({"leaf", {}});
  return root;
}

inline std::string to_xml(const UTree& u) {
  if (u.kids.empty()) return "<" + u.name + "/>";
  std::string s = "<" + u.name + ">";
  for (const auto& k : u.kids) s += to_xml(k);
  return s + "</" + u.name + ">";
}

// Naive first-child/next-sibling encoding as a term string with characteristics.
inline std::string fcns_term(const UTree& u) {
  std::function<std::string(const std::vector<UTree>&, std::size_t)> go = [&](const std::vector<UTree>& sibs,
                                                                               std::size_t i) {
    const auto& n = sibs[i];
    bool fc = !n.kids.empty(), ns = i + 1 < sibs.size();
    std::string s = n.name + "^" + (fc ? "1" : "0") + (ns ? "1" : "0");
    if (fc || ns) {
      s += "(";
      if (fc) s += go(n.kids, 0);
      if (fc && ns) s += ",";
      if (ns) s += go(sibs, i + 1);
      s += ")";
    }
    return s;
  };
  return go({u}, 0);
}

inline std::string tree_term(const trp::BinaryTree& t, std::int32_t v = 0) {
  const auto& s = t.symbol(v);
  std::string out = s.name + "^" + trp::characteristic_bits(s.ch);
  if (t.rank(v) > 0) {
    out += "(";
    for (int i = 0; i < t.rank(v); ++i) out += (i ? "," : "") + tree_term(t, t.child(v, i));
    out += ")";
  }
  return out;
}

// Maximum number of pairwise non-overlapping occurrences. Overlaps link an occurrence
// to the occurrence at its i-th child, so the conflict graph is a union of paths.
inline std::size_t max_non_overlapping(const trp::BinaryTree& t, std::uint32_t a, int i, std::uint32_t b) {
  std::vector<std::uint8_t> occ(t.size(), 0);
  for (std::size_t v = 0; v < t.size(); ++v)
    if (t.nodes[v].label == a && t.rank(v) >= i && t.nodes[t.child(v, i - 1)].label == b) occ[v] = 1;
  std::size_t total = 0;
  for (std::size_t v = 0; v < t.size(); ++v) {
    if (!occ[v]) continue;
    auto p = t.nodes[v].parent;
    bool has_prev = a == b && p >= 0 && occ[p] && t.nodes[v].index == i - 1;
    if (has_prev) continue;
    std::size_t k = 0;
    for (auto u = static_cast<std::int32_t>(v);;) {
      ++k;
      if (a != b) break;
      auto c = t.child(u, i - 1);
      if (!occ[c]) break;
      u = c;
    }
    total += (k + 1) / 2;
  }
  return total;
}

// Exhaustive search over subsets for small occurrence sets.
inline std::size_t max_non_overlapping_exhaustive(const trp::BinaryTree& t, std::uint32_t a, int i, std::uint32_t b) {
  std::vector<std::int32_t> occ;
  for (std::size_t v = 0; v < t.size(); ++v)
    if (t.nodes[v].label == a && t.rank(v) >= i && t.nodes[t.child(v, i - 1)].label == b)
      occ.push_back(static_cast<std::int32_t>(v));
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << occ.size()); ++mask) {
    std::set<std::int32_t> used;
    bool ok = true;
    for (std::size_t k = 0; k < occ.size() && ok; ++k) {
      if (!(mask >> k & 1)) continue;
      auto v = occ[k];
      auto c = t.child(v, i - 1);
      ok = !used.count(v) && !used.count(c);
      used.insert(v);
      used.insert(c);
    }
    if (ok) best = std::max<std::size_t>(best, __builtin_popcount(mask));
  }
  return best;
}

// Edge count of the minimal DAG by hashing every subtree to a class id.
inline std::size_t dag_edges_oracle(const trp::BinaryTree& t) {
  std::map<std::pair<std::uint32_t, std::vector<int>>, int> classes;
  std::size_t edges = 0;
  std::function<int(std::int32_t)> go = [&](std::int32_t v) {
    std::vector<int> kids;
    for (int i = 0; i < t.rank(v); ++i) kids.push_back(go(t.child(v, i)));
    auto [it, fresh] = classes.try_emplace({t.nodes[v].label, kids}, static_cast<int>(classes.size()));
    if (fresh) edges += kids.size();
    return it->second;
  };
  go(0);
  return edges;
}

// Unfolding by recursive substitution, independent of the grammar's own evaluator.
inline std::string unfold_term(const trp::SlcfGrammar& g) {
  std::function<std::string(std::int32_t, const std::vector<std::string>&, std::size_t&)> go =
      [&](std::int32_t v, const std::vector<std::string>& args, std::size_t& next) -> std::string {
    const auto& n = g.nodes[v];
    if (n.sym.is_parameter()) return args.at(next++);
    std::vector<std::string> kids;
    for (auto k : n.kids) kids.push_back(go(k, args, next));
    if (n.sym.is_nonterminal()) {
      std::size_t inner = 0;
      return go(g.prods[n.sym.id].root, kids, inner);
    }
    const auto& s = g.alphabet.at(n.sym.id);
    std::string out = s.name + "^" + trp::characteristic_bits(s.ch);
    if (!kids.empty()) {
      out += "(";
      for (std::size_t i = 0; i < kids.size(); ++i) out += (i ? "," : "") + kids[i];
      out += ")";
    }
    return out;
  };
  std::size_t next = 0;
  return go(g.prods[g.start].root, {}, next);
}

}  // namespace test
