// Binary (first-child/next-sibling) ranked tree model of XML element structure.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "trp/huge_alloc.hpp"

namespace trp {

// Two-bit children characteristic: high bit = has first child, low bit = has next sibling.
enum class Characteristic : std::uint8_t {
  NoChildren = 0b00,
  NoLeftChild = 0b01,
  NoRightChild = 0b10,
  TwoChildren = 0b11,
};

int rank_of(Characteristic c);
std::string characteristic_bits(Characteristic c);

struct TerminalSymbol {
  std::string name;
  Characteristic ch = Characteristic::NoChildren;
  int rank() const { return rank_of(ch); }
  bool operator==(const TerminalSymbol&) const = default;
};

// Ranked alphabet; ids are dense and assigned in first-use order.
class Alphabet {
 public:
  std::uint32_t intern(const std::string& name, Characteristic ch);
  const TerminalSymbol& at(std::uint32_t id) const { return symbols_.at(id); }
  std::uint32_t size() const { return static_cast<std::uint32_t>(symbols_.size()); }
  const std::vector<TerminalSymbol>& symbols() const { return symbols_; }
  bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }

 private:
  std::vector<TerminalSymbol> symbols_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Preorder-indexed arena. Node 0 is the root.
struct BinaryTree {
  struct Node {
    std::uint32_t label = 0;
    std::int32_t parent = -1;
    std::int32_t index = 0;  // 0-based child position in parent
    std::int32_t kid[2] = {-1, -1};
  };
  Alphabet alphabet;
  HugeVector<Node> nodes;

  std::size_t size() const { return nodes.size(); }
  std::size_t edges() const { return nodes.empty() ? 0 : nodes.size() - 1; }
  int rank(std::int32_t v) const { return alphabet.at(nodes[v].label).rank(); }
  const TerminalSymbol& symbol(std::int32_t v) const { return alphabet.at(nodes[v].label); }
  std::int32_t child(std::int32_t v, int i) const { return nodes[v].kid[i]; }
  // Node with characteristic NoLeftChild stores its only child in slot 0.
  std::int32_t first_child(std::int32_t v) const;
  std::int32_t next_sibling(std::int32_t v) const;
};

// Structural equality: same shape and same (name, characteristic) labels.
bool same_structure(const BinaryTree& a, const BinaryTree& b);

// Incremental construction driven by start/end element events.
class TreeBuilder {
 public:
  void start_element(std::string_view name);
  void end_element();
  BinaryTree finish();

 private:
  void label_chain(int count);
  BinaryTree tree_;
  std::vector<std::string> names_;        // element name per node
  std::vector<std::int32_t> hierarchy_;   // open chain of nodes
  std::vector<int> index_stack_;          // children seen per open element
  std::vector<std::uint8_t> has_kid_;     // bit0 first child, bit1 next sibling
  int top_ = 0;                           // top-level elements seen
};

BinaryTree parse_xml(std::string_view text);
std::string serialize_xml(const BinaryTree& t);

// Postorder successor; from the last node (root) the walk returns the root again.
std::int32_t next_in_postorder(const BinaryTree& t, std::int32_t v);
std::vector<std::int32_t> postorder(const BinaryTree& t);

}  // namespace trp
