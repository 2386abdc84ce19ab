// MSB-first bit writer and reader.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trp {

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BitWriter {
 public:
  void put(std::uint64_t value, int bits);
  std::size_t bit_count() const { return bits_; }
  // Final byte is zero-padded.
  const std::vector<std::uint8_t>& bytes() const { return out_; }

 private:
  std::vector<std::uint8_t> out_;
  std::size_t bits_ = 0;
};

class BitReader {
 public:
  explicit BitReader(const std::vector<std::uint8_t>& in) : in_(in) {}
  std::uint64_t get(int bits);
  int bit();
  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return in_.size() * 8 - pos_; }

 private:
  const std::vector<std::uint8_t>& in_;
  std::size_t pos_ = 0;
};

// Smallest number of bits holding v (at least 1).
int bit_width_of(std::uint64_t v);

}  // namespace trp
