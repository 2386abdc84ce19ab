#include "trp/bit_stream.hpp"

namespace trp {

void BitWriter::put(std::uint64_t value, int bits) {
  for (int i = bits - 1; i >= 0; --i) {
    if (bits_ % 8 == 0) out_.push_back(0);
    if ((value >> i) & 1) out_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
    ++bits_;
  }
}

int BitReader::bit() {
  if (pos_ >= in_.size() * 8) throw DecodeError("truncated stream");
  int b = (in_[pos_ / 8] >> (7 - pos_ % 8)) & 1;
  ++pos_;
  return b;
}

std::uint64_t BitReader::get(int bits) {
  std::uint64_t v = 0;
  for (int i = 0; i < bits; ++i) v = (v << 1) | static_cast<std::uint64_t>(bit());
  return v;
}

int bit_width_of(std::uint64_t v) {
  int n = 1;
  while (n < 64 && (v >> n) != 0) ++n;
  return n;
}

}  // namespace trp
