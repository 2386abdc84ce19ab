// Straight-line context-free tree grammars over the binary-model alphabet.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "trp/huge_alloc.hpp"
#include "trp/xml_tree.hpp"

namespace trp {

struct Symbol {
  enum class Kind : std::uint8_t { Terminal, Nonterminal, Parameter };
  Kind kind = Kind::Terminal;
  std::uint32_t id = 0;

  static Symbol terminal(std::uint32_t i) { return {Kind::Terminal, i}; }
  static Symbol nonterminal(std::uint32_t i) { return {Kind::Nonterminal, i}; }
  static Symbol parameter() { return {Kind::Parameter, 0}; }
  bool is_terminal() const { return kind == Kind::Terminal; }
  bool is_nonterminal() const { return kind == Kind::Nonterminal; }
  bool is_parameter() const { return kind == Kind::Parameter; }
  std::uint64_t key() const { return (static_cast<std::uint64_t>(kind) << 32) | id; }
  bool operator==(const Symbol&) const = default;
};

class SlcfGrammar {
 public:
  struct Node {
    Symbol sym;
    std::int32_t parent = -1;
    std::int32_t owner = -1;  // production id, set on right-hand-side roots only
    bool alive = true;
    boost::container::small_vector<std::int32_t, 2> kids;
  };
  struct Production {
    std::int32_t root = -1;
    int rank = 0;
    bool alive = false;
  };

  Alphabet alphabet;
  std::vector<Production> prods;  // indexed by nonterminal id
  HugeVector<Node> nodes;
  std::uint32_t start = 0;

  std::uint32_t add_production(int rank);
  // Appends a node; parent < 0 creates a detached node.
  std::int32_t add_node(Symbol s, std::int32_t parent);
  void set_root(std::uint32_t a, std::int32_t node);

  int rank(Symbol s) const;
  std::string symbol_name(Symbol s) const;
  std::vector<std::uint32_t> nonterminals() const;
  std::vector<std::int32_t> preorder(std::int32_t root) const;
  template <class F>
  void for_each_preorder(std::int32_t root, F&& fn) const {
    std::vector<std::int32_t> stack{root};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      fn(v);
      const auto& k = nodes[v].kids;
      for (auto it = k.rbegin(); it != k.rend(); ++it) stack.push_back(*it);
    }
  }
  std::size_t rhs_edges(std::uint32_t a) const;
  std::size_t size() const;

  std::size_t ref_count(std::uint32_t a) const { return a < ref_count_.size() ? ref_count_[a] : 0; }
  // Every right-hand-side node labeled a, as (production, node).
  std::vector<std::pair<std::uint32_t, std::int32_t>> ref(std::uint32_t a) const;
  std::vector<std::int32_t> ref_nodes(std::uint32_t a);
  long long sav(std::uint32_t a) const;
  std::vector<std::uint32_t> hierarchical_order() const;
  void eliminate(std::uint32_t a);

  BinaryTree unfold(std::size_t cap = std::size_t{1} << 31) const;
  // Unfolded edge count computed bottom-up without materializing the tree.
  std::size_t unfolded_edges() const;
  std::size_t unfolded_edges(const std::vector<std::uint32_t>& order) const;
  std::string to_text() const;
  void validate() const;

  // Rebuilds a compact copy holding only live productions and nodes.
  SlcfGrammar compacted() const;

 private:
  void kill_subtree(std::int32_t v);
  void replace_node(std::int32_t old_node, std::int32_t new_node);
  std::vector<std::vector<std::int32_t>> refs_;
  std::vector<std::size_t> ref_count_;
};

// Grammar with a single start production whose right-hand side is t.
SlcfGrammar grammar_from_tree(const BinaryTree& t);

}  // namespace trp
