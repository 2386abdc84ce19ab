#include "trp/replacer.hpp"

#include <stdexcept>

namespace trp {

Replacer::Replacer(WorkForest& f, std::size_t n, int max_rank) : f_(f), index_(f, n, max_rank) {}

void Replacer::remove_parent_edges(std::int32_t v) {
  f_.for_parent_edges(v, [&](std::int32_t p, int i) { index_.remove(p, i); });
}

void Replacer::remove_child_edges(std::int32_t v) {
  for (int i = 0; i < static_cast<int>(f_.nodes[v].kids.size()); ++i) index_.remove(v, i);
}

void Replacer::add_new(std::int32_t v) {
  f_.for_parent_edges(v, [&](std::int32_t p, int i) { index_.add(p, i); });
  for (int i = 0; i < static_cast<int>(f_.nodes[v].kids.size()); ++i) index_.add(v, i);
}

void Replacer::set_kids(std::int32_t v, WorkForest::Kids kids) {
  f_.nodes[v].kids = std::move(kids);
  relink_kids(v);
}

void Replacer::relink_kids(std::int32_t v) {
  const auto& kids = f_.nodes[v].kids;
  for (int i = 0; i < static_cast<int>(kids.size()); ++i) {
    auto& k = f_.nodes[kids[i]];
    k.parent = v;
    k.index = i;
    k.occ = {};
  }
}

void Replacer::inline_reference(std::int32_t v, int j) {
  index_.remove(v, j);
  auto c = f_.nodes[v].kids[j];
  auto x = f_.nodes[c].sym.id;
  auto r = f_.nts[x].root;
  f_.drop_ref(c);
  f_.kill(c);
  f_.nodes[v].kids[j] = r;
  f_.nodes[r].parent = v;
  f_.nodes[r].index = j;
  f_.nts[x].alive = false;
  f_.nts[x].root = -1;
  f_.nts[x].uf = f_.prod_of(v);
}

void Replacer::split_reference(std::int32_t v, int j, std::uint32_t a) {
  auto c = f_.nodes[v].kids[j];
  auto x = f_.nodes[c].sym.id;
  auto r = f_.nts[x].root;
  remove_parent_edges(v);
  remove_child_edges(v);
  remove_child_edges(r);
  auto old_mult = f_.nts[x].mult;
  auto pv = f_.prod_of(v);
  for (int i = 0; i < static_cast<int>(f_.nodes[r].kids.size()); ++i) {
    auto k = f_.nodes[r].kids[i];
    if (f_.is_ref(k)) continue;
    auto b = f_.add_nonterminal(WorkForest::Kind::Dag, 0);
    created_.push_back(b);
    f_.nts[b].root = k;
    f_.nts[b].mult = old_mult;
    f_.nodes[k].parent = -1;
    f_.nodes[k].index = 0;
    std::vector<std::int32_t> stack{k};
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      f_.nodes[u].prod = b;
      for (auto w : f_.nodes[u].kids) stack.push_back(w);
    }
    f_.add_node(Symbol::nonterminal(b), r, i, x);
  }
  WorkForest::Kids kids(f_.nodes[v].kids.begin(), f_.nodes[v].kids.begin() + j);
  for (auto k : f_.nodes[r].kids) {
    auto copy = f_.add_node(f_.nodes[k].sym, -1, 0, f_.nodes[v].prod);
    kids.push_back(copy);
  }
  kids.insert(kids.end(), f_.nodes[v].kids.begin() + j + 1, f_.nodes[v].kids.end());
  f_.drop_ref(c);
  f_.kill(c);
  f_.nts[x].mult -= f_.nts[pv].mult;
  f_.nodes[v].sym = Symbol::nonterminal(a);
  set_kids(v, std::move(kids));
  add_new(v);
  for (int i = 0; i < static_cast<int>(f_.nodes[r].kids.size()); ++i) index_.add(r, i);
}

void Replacer::replace_occurrence(std::int32_t v, int j, std::uint32_t a) {
  const auto& pat = f_.nts[a].pattern;
  if (!f_.nodes[v].alive || !(f_.nodes[v].sym == pat.a) || j + 1 != pat.i ||
      !(f_.nodes[f_.target(v, j)].sym == pat.b))
    throw std::logic_error("stale occurrence");
  auto c = f_.nodes[v].kids[j];
  if (f_.is_ref(c)) {
    if (f_.nts[f_.nodes[c].sym.id].refs.size() > 1) {
      split_reference(v, j, a);
      return;
    }
    inline_reference(v, j);
    c = f_.nodes[v].kids[j];
  }
  remove_parent_edges(v);
  remove_child_edges(v);
  remove_child_edges(c);
  auto ck = std::move(f_.nodes[c].kids);
  f_.kill(c);
  f_.nodes[c].kids.clear();
  auto& vk = f_.nodes[v].kids;
  vk[j] = ck.empty() ? -1 : ck[0];
  if (ck.empty()) vk.erase(vk.begin() + j);
  else vk.insert(vk.begin() + j + 1, ck.begin() + 1, ck.end());
  f_.nodes[v].sym = Symbol::nonterminal(a);
  relink_kids(v);
  add_new(v);
}

std::int64_t Replacer::step() {
  if (f_.dead > 4096 && 4 * f_.dead > f_.nodes.size()) index_.remap(f_.compact());
  auto id = index_.pop();
  if (id < 0) return -1;
  return replace_digram(id);
}

std::uint32_t Replacer::replace_digram(std::int32_t id) {
  auto d = index_.record(id).d;
  auto a = f_.add_nonterminal(WorkForest::Kind::Repair, index_.record(id).par);
  f_.nts[a].pattern = d;
  created_.push_back(a);
  index_.set_active(id, true);
  while (index_.record(id).head >= 0) {
    auto o = index_.edge(index_.record(id).head);
    replace_occurrence(o.node, o.slot, a);
  }
  index_.set_active(id, false);
  return a;
}

void Replacer::run() {
  while (step() >= 0) {
  }
}

ReplacementResult run_replacement_step(const SlcfGrammar& g, int max_rank) {
  auto f = WorkForest::from_grammar(g);
  Replacer r(f, g.unfolded_edges(), max_rank);
  r.index().build(g.hierarchical_order());
  r.run();
  return {f.to_grammar(), r.created()};
}

ReplacementResult run_replacement_step(SlcfGrammar&& g, int max_rank) {
  auto order = g.hierarchical_order();
  auto f = WorkForest::from_grammar(g, order);
  auto n = g.unfolded_edges(order);
  g = SlcfGrammar();
  Replacer r(f, n, max_rank);
  r.index().build(order);
  r.run();
  return {f.to_grammar(), r.created()};
}

}  // namespace trp
