// Bit-exact succinct serialization of a pruned grammar.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trp/huffman.hpp"
#include "trp/slcf_grammar.hpp"

namespace trp {

constexpr int kFieldBits = 32;
constexpr std::uint32_t kEtx = 3;

// Terminals 1..|F| in alphabet order, y = |F|+1, then non-start nonterminals
// in hierarchical order.
struct SymbolIdTable {
  std::uint32_t terminals = 0;
  std::vector<std::uint32_t> nonterminal_id;  // by grammar nonterminal, 0 for start/dead
  std::vector<std::uint32_t> by_id;           // coded nonterminal order (ids |F|+2, ...)

  std::uint32_t parameter_id() const { return terminals + 1; }
  std::uint32_t id(const Symbol& s) const;
};

SymbolIdTable assign_ids(const SlcfGrammar& g);

// One value of the serialized grammar, tagged with the coding that carries it.
struct CodedValue {
  enum class Coding : std::uint8_t { C1, C2, C3, Tag };
  Coding coding;
  std::uint32_t value;
  bool operator==(const CodedValue&) const = default;
};

std::vector<CodedValue> serialize_values(const SlcfGrammar& g, const SymbolIdTable& ids);

// Everything needed to inspect the first part of the file.
struct EncodingLayout {
  std::vector<int> super_lengths;
  int super_field_bits = 0;
  int max_base_length = 0;
  std::vector<int> base_lengths[3];
  std::vector<RleToken> base_tokens[3];
  std::vector<CodedValue> values;
};

struct EncodeResult {
  std::vector<std::uint8_t> bytes;
  std::size_t bits = 0;
  EncodingLayout layout;
};

// Super code lengths (n+4 entries) over the run-length tokens of three base length tables.
// Every table entry counts once, including entries covered by a run, and every run
// indicator counts once.
std::vector<int> super_code_lengths(const std::vector<int> (&base)[3], int n);

EncodeResult encode(const SlcfGrammar& g);

}  // namespace trp
