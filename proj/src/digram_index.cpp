#include "trp/digram_index.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trp {

std::vector<std::int32_t> compute_occurrences(const BinaryTree& t, const TerminalDigram& d) {
  std::vector<std::int32_t> out;
  std::vector<std::uint8_t> chosen(t.size(), 0);
  int slot = d.i - 1;
  for (auto v : postorder(t)) {
    auto p = t.nodes[v].parent;
    if (p < 0 || t.nodes[v].index != slot) continue;
    if (t.nodes[p].label != d.a || t.nodes[v].label != d.b) continue;
    if (d.a == d.b && chosen[v]) continue;
    chosen[p] = 1;
    out.push_back(p);
  }
  return out;
}

WorkForest WorkForest::from_grammar(const SlcfGrammar& g) { return from_grammar(g, g.hierarchical_order()); }

WorkForest WorkForest::from_grammar(const SlcfGrammar& g, const std::vector<std::uint32_t>& order) {
  WorkForest f;
  f.alphabet = g.alphabet;
  f.start = g.start;
  for (std::uint32_t a = 0; a < g.prods.size(); ++a) {
    const auto& p = g.prods[a];
    auto x = f.add_nonterminal(a == g.start ? Kind::Start : Kind::Dag, p.rank);
    f.nts[x].alive = p.alive;
    f.nts[x].mult = 0;
    if (p.alive && a != g.start && p.rank != 0) throw std::invalid_argument("initial grammar must be 0-bounded");
  }
  f.nodes.reserve(g.nodes.size());
  for (auto a : g.nonterminals()) {
    std::vector<std::pair<std::int32_t, std::int32_t>> stack{{g.prods[a].root, -1}};
    while (!stack.empty()) {
      auto [u, parent] = stack.back();
      stack.pop_back();
      int index = parent < 0 ? 0 : static_cast<int>(f.nodes[parent].kids.size());
      auto c = f.add_node(g.nodes[u].sym, parent, index, a);
      if (parent < 0) f.nts[a].root = c;
      const auto& k = g.nodes[u].kids;
      for (auto it = k.rbegin(); it != k.rend(); ++it) stack.emplace_back(*it, c);
    }
  }
  f.nts[g.start].mult = 1;
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (auto r : f.nts[*it].refs) f.nts[*it].mult += f.nts[f.nodes[r].prod].mult;
  return f;
}

SlcfGrammar WorkForest::to_grammar() const {
  SlcfGrammar g;
  g.alphabet = alphabet;
  g.start = start;
  for (const auto& x : nts) {
    g.add_production(x.rank);
    g.prods.back().alive = x.alive;
  }
  for (std::uint32_t a = 0; a < nts.size(); ++a) {
    const auto& x = nts[a];
    if (!x.alive) continue;
    if (x.kind == Kind::Repair) {
      auto root = g.add_node(x.pattern.a, -1);
      g.set_root(a, root);
      for (int i = 0; i < rank(x.pattern.a); ++i) {
        if (i + 1 != x.pattern.i) {
          g.add_node(Symbol::parameter(), root);
          continue;
        }
        auto b = g.add_node(x.pattern.b, root);
        for (int k = 0; k < rank(x.pattern.b); ++k) g.add_node(Symbol::parameter(), b);
      }
      continue;
    }
    std::vector<std::pair<std::int32_t, std::int32_t>> stack{{x.root, -1}};
    while (!stack.empty()) {
      auto [u, parent] = stack.back();
      stack.pop_back();
      auto c = g.add_node(nodes[u].sym, parent);
      if (parent < 0) g.set_root(a, c);
      const auto& k = nodes[u].kids;
      for (auto it = k.rbegin(); it != k.rend(); ++it) stack.emplace_back(*it, c);
    }
  }
  return g;
}

std::vector<std::int32_t> WorkForest::compact() {
  std::vector<std::int32_t> map(nodes.size(), -1);
  std::int32_t n = 0;
  for (std::size_t u = 0; u < nodes.size(); ++u)
    if (nodes[u].alive) map[u] = n++;
  auto at = [&](std::int32_t v) { return v < 0 ? v : map[v]; };
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    if (!nodes[u].alive) continue;
    auto& x = nodes[map[u]];
    if (static_cast<std::size_t>(map[u]) != u) x = std::move(nodes[u]);
    x.parent = at(x.parent);
    for (auto& k : x.kids) k = at(k);
    x.occ.next = at(x.occ.next);
    x.occ.prev = at(x.occ.prev);
  }
  nodes.resize(static_cast<std::size_t>(n));
  for (auto& x : nts) {
    x.root = at(x.root);
    for (auto& r : x.refs) r = at(r);
  }
  dead = 0;
  return map;
}

int WorkForest::rank(Symbol s) const {
  if (s.is_terminal()) return alphabet.at(s.id).rank();
  if (s.is_nonterminal()) return nts[s.id].rank;
  return 0;
}

bool WorkForest::is_ref(std::int32_t v) const {
  const auto& s = nodes[v].sym;
  return s.is_nonterminal() && nts[s.id].kind == Kind::Dag;
}

std::uint32_t WorkForest::find(std::uint32_t x) {
  while (nts[x].uf != x) {
    nts[x].uf = nts[nts[x].uf].uf;
    x = nts[x].uf;
  }
  return x;
}

std::int32_t WorkForest::target(std::int32_t v, int i) const {
  auto c = nodes[v].kids[i];
  return is_ref(c) ? nts[nodes[c].sym.id].root : c;
}

std::uint32_t WorkForest::add_nonterminal(Kind kind, int rank) {
  Nonterminal x;
  x.kind = kind;
  x.rank = rank;
  x.uf = static_cast<std::uint32_t>(nts.size());
  nts.push_back(std::move(x));
  return nts.back().uf;
}

std::int32_t WorkForest::add_node(Symbol s, std::int32_t parent, int index, std::uint32_t prod) {
  auto id = static_cast<std::int32_t>(nodes.size());
  Node n;
  n.sym = s;
  n.parent = parent;
  n.index = index;
  n.prod = prod;
  nodes.push_back(std::move(n));
  if (parent >= 0) {
    auto& p = nodes[parent];
    if (p.kids.empty()) p.kids.reserve(static_cast<std::size_t>(std::max(rank(p.sym), index + 1)));
    if (static_cast<int>(p.kids.size()) <= index) p.kids.resize(index + 1, -1);
    p.kids[index] = id;
  }
  if (is_ref(id)) add_ref(id);
  return id;
}

void WorkForest::add_ref(std::int32_t v) {
  auto& refs = nts[nodes[v].sym.id].refs;
  nodes[v].ref_pos = static_cast<std::int32_t>(refs.size());
  refs.push_back(v);
}

void WorkForest::drop_ref(std::int32_t v) {
  auto& refs = nts[nodes[v].sym.id].refs;
  auto pos = nodes[v].ref_pos;
  refs[pos] = refs.back();
  nodes[refs[pos]].ref_pos = pos;
  refs.pop_back();
  nodes[v].ref_pos = -1;
}

std::size_t DigramIndex::KeyHash::operator()(const std::tuple<std::uint64_t, int, std::uint64_t>& k) const {
  auto h = std::get<0>(k) * 0x9E3779B97F4A7C15ull;
  h ^= static_cast<std::uint64_t>(std::get<1>(k)) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
  h ^= std::get<2>(k) * 0xC2B2AE3D27D4EB4Full + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

DigramIndex::DigramIndex(WorkForest& f, std::size_t n, int max_rank) : f_(f), max_rank_(max_rank) {
  s_ = std::max<std::int32_t>(1, static_cast<std::int32_t>(std::sqrt(static_cast<double>(n))));
  while (static_cast<std::size_t>(s_ + 1) * static_cast<std::size_t>(s_ + 1) <= n) ++s_;
  while (s_ > 1 && static_cast<std::size_t>(s_) * static_cast<std::size_t>(s_) > n) --s_;
  bhead_.assign(s_, -1);
  btail_.assign(s_, -1);
}

int DigramIndex::par_of(const Digram& d) const { return f_.rank(d.a) + f_.rank(d.b) - 1; }

std::int32_t DigramIndex::intern(const Digram& d) {
  auto [it, fresh] = ids_.try_emplace({d.a.key(), d.i, d.b.key()}, static_cast<std::int32_t>(recs_.size()));
  if (fresh) {
    Record r;
    r.d = d;
    r.par = par_of(d);
    recs_.push_back(r);
  }
  return it->second;
}

std::int32_t DigramIndex::find(const Digram& d) const {
  auto it = ids_.find({d.a.key(), d.i, d.b.key()});
  return it == ids_.end() ? -1 : it->second;
}

std::int64_t DigramIndex::frequency(const Digram& d) const {
  auto id = find(d);
  return id < 0 ? 0 : recs_[id].freq;
}

std::vector<OccRef> DigramIndex::occurrences(std::int32_t id) const {
  std::vector<OccRef> out;
  for (auto c = recs_[id].head; c >= 0; c = f_.nodes[c].occ.next) out.push_back(edge(c));
  return out;
}

void DigramIndex::unlink_bucket(std::int32_t id) {
  auto& r = recs_[id];
  if (r.bucket < 0) return;
  if (r.bprev >= 0) recs_[r.bprev].bnext = r.bnext;
  else bhead_[r.bucket] = r.bnext;
  if (r.bnext >= 0) recs_[r.bnext].bprev = r.bprev;
  else btail_[r.bucket] = r.bprev;
  r.bucket = r.bprev = r.bnext = -1;
}

void DigramIndex::relink(std::int32_t id) {
  auto& r = recs_[id];
  std::int32_t want = -1;
  if (!r.active && r.par <= max_rank_ && r.freq > 0) want = r.freq >= s_ ? 0 : static_cast<std::int32_t>(r.freq);
  if (want == r.bucket) return;
  unlink_bucket(id);
  if (want < 0) return;
  r.bucket = want;
  r.bprev = btail_[want];
  if (r.bprev >= 0) recs_[r.bprev].bnext = id;
  else bhead_[want] = id;
  btail_[want] = id;
  if (want > cursor_) cursor_ = want;
}

void DigramIndex::add(std::int32_t w, int i) {
  auto& f = f_;
  auto c = f.nodes[w].kids[i];
  auto t = f.target(w, i);
  Digram d{f.nodes[w].sym, i + 1, f.nodes[t].sym};
  if (c != t && d.a == d.b) return;
  if (f.nodes[c].occ.listed) return;
  std::int32_t found = find(d);
  if (d.a == d.b && found >= 0) {
    const auto& tn = f.nodes[t];
    if (i < static_cast<int>(tn.kids.size())) {
      const auto& below = f.nodes[tn.kids[i]].occ;
      if (below.listed && below.digram == found) return;
    }
    const auto& above = f.nodes[w].occ;
    if (f.nodes[w].parent >= 0 && f.nodes[w].index == i && above.listed && above.digram == found) return;
  }
  auto id = found >= 0 ? found : intern(d);
  auto& r = recs_[id];
  auto& s = f.nodes[c].occ;
  s.listed = true;
  s.digram = id;
  s.weight = f.nts[f.prod_of(w)].mult;
  s.next = -1;
  s.prev = r.tail;
  if (r.tail >= 0) f.nodes[r.tail].occ.next = c;
  else r.head = c;
  r.tail = c;
  r.freq += s.weight;
  ++r.count;
  relink(id);
}

void DigramIndex::remove(std::int32_t w, int i) {
  auto& s = f_.nodes[f_.nodes[w].kids[i]].occ;
  if (!s.listed) return;
  auto id = s.digram;
  auto& r = recs_[id];
  if (s.prev >= 0) f_.nodes[s.prev].occ.next = s.next;
  else r.head = s.next;
  if (s.next >= 0) f_.nodes[s.next].occ.prev = s.prev;
  else r.tail = s.prev;
  r.freq -= s.weight;
  --r.count;
  s = {};
  relink(id);
}

void DigramIndex::remap(const std::vector<std::int32_t>& map) {
  for (auto& r : recs_) {
    if (r.head >= 0) r.head = map[r.head];
    if (r.tail >= 0) r.tail = map[r.tail];
  }
}

void DigramIndex::set_active(std::int32_t id, bool on) {
  recs_[id].active = on;
  relink(id);
}

void DigramIndex::build(const std::vector<std::uint32_t>& order) {
  for (auto a : order) {
    const auto& x = f_.nts[a];
    if (!x.alive || x.kind == WorkForest::Kind::Repair) continue;
    std::int32_t root = x.root;
    // Postorder via the successor walk: down by slot 0, then the next sibling slot, else up.
    auto down = [&](std::int32_t u) {
      while (!f_.nodes[u].kids.empty()) u = f_.nodes[u].kids[0];
      return u;
    };
    std::int32_t v = down(root);
    while (v != root) {
      auto p = f_.nodes[v].parent;
      int i = f_.nodes[v].index;
      add(p, i);
      v = (i + 1 < static_cast<int>(f_.nodes[p].kids.size())) ? down(f_.nodes[p].kids[i + 1]) : p;
    }
  }
}

std::int32_t DigramIndex::pop() {
  if (bhead_[0] >= 0) {
    std::int32_t best = -1;
    for (auto id = bhead_[0]; id >= 0; id = recs_[id].bnext)
      if (best < 0 || recs_[id].freq > recs_[best].freq || (recs_[id].freq == recs_[best].freq && id < best))
        best = id;
    if (recs_[best].freq >= 2) return best;
    return -1;
  }
  if (cursor_ >= s_) cursor_ = s_ - 1;
  while (cursor_ >= 2 && bhead_[cursor_] < 0) --cursor_;
  if (cursor_ < 2) return -1;
  return bhead_[cursor_];
}

void DigramIndex::check() const {
  for (std::int32_t id = 0; id < static_cast<std::int32_t>(recs_.size()); ++id) {
    const auto& r = recs_[id];
    std::int64_t freq = 0, count = 0;
    std::int32_t prev = -1;
    for (auto c = r.head; c >= 0; c = f_.nodes[c].occ.next) {
      const auto& s = f_.nodes[c].occ;
      auto o = edge(c);
      if (o.node < 0 || f_.nodes[o.node].kids[o.slot] != c) throw std::logic_error("occurrence slot detached");
      const auto& n = f_.nodes[o.node];
      if (!n.alive || !f_.nodes[c].alive || !s.listed || s.digram != id || s.prev != prev)
        throw std::logic_error("broken occurrence list");
      auto t = f_.target(o.node, o.slot);
      if (!(n.sym == r.d.a) || o.slot + 1 != r.d.i || !(f_.nodes[t].sym == r.d.b))
        throw std::logic_error("stale occurrence of " + digram_text(f_.alphabet, r.d));
      freq += s.weight;
      ++count;
      prev = c;
    }
    if (prev != r.tail || freq != r.freq || count != r.count) throw std::logic_error("digram totals out of sync");
    std::int32_t want = -1;
    if (!r.active && r.par <= max_rank_ && r.freq > 0) want = r.freq >= s_ ? 0 : static_cast<std::int32_t>(r.freq);
    if (want != r.bucket) throw std::logic_error("digram in wrong bucket");
  }
}

std::string digram_text(const Alphabet& alphabet, const Digram& d) {
  auto name = [&](Symbol s) {
    if (s.is_terminal()) return alphabet.at(s.id).name + "^" + characteristic_bits(alphabet.at(s.id).ch);
    if (s.is_nonterminal()) return "A" + std::to_string(s.id);
    return std::string("y");
  };
  return "(" + name(d.a) + "," + std::to_string(d.i) + "," + name(d.b) + ")";
}

}  // namespace trp
