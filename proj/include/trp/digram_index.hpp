// Digrams, occurrence lists threaded through tree nodes, and the frequency priority queue.
#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "trp/slcf_grammar.hpp"
#include "trp/xml_tree.hpp"

namespace trp {

// (a, i, b): b is the i-th child of a, i is 1-based.
struct Digram {
  Symbol a;
  int i = 1;
  Symbol b;
  bool operator==(const Digram&) const = default;
};

struct TerminalDigram {
  std::uint32_t a = 0;
  int i = 1;
  std::uint32_t b = 0;
};

// Greedy postorder selection of non-overlapping occurrences; returns the parent nodes.
std::vector<std::int32_t> compute_occurrences(const BinaryTree& t, const TerminalDigram& d);

struct OccRef {
  std::int32_t node = -1;
  std::int32_t slot = -1;
  bool valid() const { return node >= 0; }
  bool operator==(const OccRef&) const = default;
};

// Mutable right-hand sides of the start production and the rank-0 (DAG) productions.
// Productions created by replacement only keep their digram pattern.
struct WorkForest {
  using Kids = boost::container::small_vector<std::int32_t, 4>;
  // Occurrence list entry for the edge entering a node; links are child node ids.
  struct OccSlot {
    std::int64_t weight = 0;
    std::int32_t next = -1, prev = -1;
    std::int32_t digram = -1;
    bool listed = false;
  };
  struct Node {
    Symbol sym;
    std::int32_t parent = -1;
    std::int32_t index = 0;
    std::uint32_t prod = 0;
    std::int32_t ref_pos = -1;  // position in refs of a DAG nonterminal
    bool alive = true;
    Kids kids;
    OccSlot occ;
  };
  enum class Kind : std::uint8_t { Start, Dag, Repair };
  struct Nonterminal {
    Kind kind = Kind::Start;
    int rank = 0;
    std::int32_t root = -1;
    std::int64_t mult = 1;
    std::vector<std::int32_t> refs;
    std::uint32_t uf = 0;
    Digram pattern;
    bool alive = true;
  };

  Alphabet alphabet;
  HugeVector<Node> nodes;
  std::vector<Nonterminal> nts;
  std::uint32_t start = 0;
  std::size_t dead = 0;

  static WorkForest from_grammar(const SlcfGrammar& g);
  static WorkForest from_grammar(const SlcfGrammar& g, const std::vector<std::uint32_t>& order);
  SlcfGrammar to_grammar() const;

  int rank(Symbol s) const;
  bool is_ref(std::int32_t v) const;
  std::uint32_t find(std::uint32_t x);
  std::uint32_t prod_of(std::int32_t v) { return find(nodes[v].prod); }
  // Node at child slot i, looking through DAG references.
  std::int32_t target(std::int32_t v, int i) const;
  // Calls fn(parent, slot) for every edge whose target is v.
  template <class F>
  void for_parent_edges(std::int32_t v, F&& fn) const {
    const auto& n = nodes[v];
    if (n.parent >= 0) {
      fn(n.parent, n.index);
      return;
    }
    const auto& x = nts[n.prod];
    if (x.kind != Kind::Dag || x.root != v) return;
    for (auto c : x.refs)
      if (nodes[c].parent >= 0) fn(nodes[c].parent, nodes[c].index);
  }

  std::uint32_t add_nonterminal(Kind kind, int rank);
  std::int32_t add_node(Symbol s, std::int32_t parent, int index, std::uint32_t prod);
  void add_ref(std::int32_t v);
  void drop_ref(std::int32_t v);
  void kill(std::int32_t v) {
    nodes[v].alive = false;
    ++dead;
  }
  // Renumbers live nodes densely in their current order; returns the old-to-new id map.
  std::vector<std::int32_t> compact();
};

class DigramIndex {
 public:
  static constexpr int kUnbounded = std::numeric_limits<int>::max();

  struct Record {
    Digram d;
    int par = 0;
    std::int32_t head = -1, tail = -1;  // child nodes of the first and last occurrence
    std::int64_t freq = 0;
    std::int64_t count = 0;
    std::int32_t bucket = -1;  // -1 none, 0 top list, m exact frequency
    std::int32_t bprev = -1, bnext = -1;
    bool active = false;
  };

  DigramIndex(WorkForest& f, std::size_t n, int max_rank);

  // Initial scan of every production, bottom-up in hierarchical order.
  void build(const std::vector<std::uint32_t>& order);
  // Most frequent digram with frequency >= 2 and par <= max rank, or -1.
  std::int32_t pop();
  void add(std::int32_t w, int i);
  void remove(std::int32_t w, int i);
  void set_active(std::int32_t id, bool on);
  // Applies a node renumbering produced by WorkForest::compact.
  void remap(const std::vector<std::int32_t>& map);

  const Record& record(std::int32_t id) const { return recs_[id]; }
  std::int32_t find(const Digram& d) const;
  std::int64_t frequency(const Digram& d) const;
  std::vector<OccRef> occurrences(std::int32_t id) const;
  // The edge entering child node c.
  OccRef edge(std::int32_t c) const { return {f_.nodes[c].parent, f_.nodes[c].index}; }
  std::size_t digram_count() const { return recs_.size(); }
  std::int32_t bucket_bound() const { return s_; }
  // Checks list links, bucket membership and label agreement; throws on violation.
  void check() const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::tuple<std::uint64_t, int, std::uint64_t>& k) const;
  };
  std::int32_t intern(const Digram& d);
  void relink(std::int32_t id);
  void unlink_bucket(std::int32_t id);
  int par_of(const Digram& d) const;

  WorkForest& f_;
  int max_rank_;
  std::int32_t s_;
  std::vector<Record> recs_;
  std::unordered_map<std::tuple<std::uint64_t, int, std::uint64_t>, std::int32_t, KeyHash> ids_;
  std::vector<std::int32_t> bhead_, btail_;
  std::int32_t cursor_ = 0;
};

std::string digram_text(const Alphabet& alphabet, const Digram& d);

}  // namespace trp
