// Huffman code lengths, canonical codes and run-length coding of length tables.
#pragma once

#include <cstdint>
#include <vector>

#include "trp/bit_stream.hpp"

namespace trp {

// Code length per symbol 0..max(stream); 0 for absent symbols. A lone symbol gets length 1.
// Ties: leaves by (frequency, first occurrence), merged nodes first-in first-out and
// ahead of leaves of equal weight.
std::vector<int> huffman_lengths(const std::vector<std::uint32_t>& stream);

struct CanonicalCode {
  std::vector<int> lengths;
  std::vector<std::uint64_t> codes;
  void write(BitWriter& w, std::uint32_t symbol) const;
};

// Consecutive codes within a length in symbol order, shorter codes first.
CanonicalCode canonicalize(const std::vector<int>& lengths);

class CanonicalDecoder {
 public:
  explicit CanonicalDecoder(const std::vector<int>& lengths);
  std::uint32_t read(BitReader& r) const;

 private:
  std::vector<std::uint32_t> count_;
  std::vector<std::uint32_t> symbols_;
};

struct RleToken {
  std::uint32_t symbol = 0;
  int payload_bits = 0;
  std::uint32_t payload = 0;
  bool operator==(const RleToken&) const = default;
};

// Run indicators are n+1 (repeat previous length), n+2 and n+3 (runs of zeros).
std::vector<RleToken> run_length_encode(const std::vector<int>& lengths, int n);
int rle_payload_bits(std::uint32_t symbol, int n);
// Appends the lengths denoted by one token.
void rle_expand(const RleToken& t, int n, std::vector<int>& out);
std::vector<int> run_length_decode(const std::vector<RleToken>& tokens, int n);

}  // namespace trp
