#include "trp/huffman.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace trp {

std::vector<int> huffman_lengths(const std::vector<std::uint32_t>& stream) {
  if (stream.empty()) return {};
  struct Leaf {
    std::uint32_t symbol;
    std::uint64_t freq;
    std::size_t first;
  };
  std::vector<Leaf> leaves;
  std::unordered_map<std::uint32_t, std::size_t> at;
  std::uint32_t max_symbol = 0;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    auto [it, fresh] = at.try_emplace(stream[i], leaves.size());
    if (fresh) leaves.push_back({stream[i], 0, i});
    ++leaves[it->second].freq;
    max_symbol = std::max(max_symbol, stream[i]);
  }
  std::vector<int> lengths(max_symbol + 1, 0);
  if (leaves.size() == 1) {
    lengths[leaves[0].symbol] = 1;
    return lengths;
  }
  std::stable_sort(leaves.begin(), leaves.end(), [](const Leaf& a, const Leaf& b) {
    return a.freq != b.freq ? a.freq < b.freq : a.first < b.first;
  });
  // Tree nodes: leaves first (0..L-1), merged nodes after.
  std::vector<std::int64_t> parent(2 * leaves.size() - 1, -1);
  std::vector<std::uint64_t> weight(2 * leaves.size() - 1, 0);
  for (std::size_t i = 0; i < leaves.size(); ++i) weight[i] = leaves[i].freq;
  std::size_t next_leaf = 0, next_merged = leaves.size(), created = leaves.size();
  auto take = [&]() {
    bool use_merged = next_merged < created && (next_leaf >= leaves.size() || weight[next_merged] <= weight[next_leaf]);
    return use_merged ? next_merged++ : next_leaf++;
  };
  while (created < parent.size()) {
    auto a = take();
    auto b = take();
    weight[created] = weight[a] + weight[b];
    parent[a] = parent[b] = static_cast<std::int64_t>(created);
    ++created;
  }
  std::vector<int> depth(parent.size(), 0);
  for (std::size_t v = parent.size() - 1; v-- > 0;) depth[v] = depth[parent[v]] + 1;
  for (std::size_t i = 0; i < leaves.size(); ++i) lengths[leaves[i].symbol] = depth[i];
  return lengths;
}

void CanonicalCode::write(BitWriter& w, std::uint32_t symbol) const {
  if (symbol >= lengths.size() || lengths[symbol] == 0) throw std::invalid_argument("symbol without code");
  w.put(codes[symbol], lengths[symbol]);
}

CanonicalCode canonicalize(const std::vector<int>& lengths) {
  int max_len = 0;
  for (auto l : lengths) {
    if (l < 0 || l > 63) throw std::invalid_argument("invalid code lengths");
    max_len = std::max(max_len, l);
  }
  std::vector<std::uint64_t> count(max_len + 1, 0), next(max_len + 2, 0);
  for (auto l : lengths)
    if (l) ++count[l];
  // Kraft check on the scaled sum.
  unsigned __int128 used = 0;
  for (int l = 1; l <= max_len; ++l) used += static_cast<unsigned __int128>(count[l]) << (max_len - l);
  if (max_len > 0 && used > (static_cast<unsigned __int128>(1) << max_len)) throw std::invalid_argument("invalid code lengths");
  std::uint64_t code = 0;
  for (int l = 1; l <= max_len; ++l) {
    code = (code + count[l - 1]) << 1;
    next[l] = code;
  }
  CanonicalCode c;
  c.lengths = lengths;
  c.codes.assign(lengths.size(), 0);
  for (std::size_t s = 0; s < lengths.size(); ++s)
    if (lengths[s]) c.codes[s] = next[lengths[s]]++;
  return c;
}

CanonicalDecoder::CanonicalDecoder(const std::vector<int>& lengths) {
  canonicalize(lengths);
  int max_len = 0;
  for (auto l : lengths) max_len = std::max(max_len, l);
  count_.assign(max_len + 1, 0);
  for (auto l : lengths)
    if (l) ++count_[l];
  for (int l = 1; l <= max_len; ++l)
    for (std::uint32_t s = 0; s < lengths.size(); ++s)
      if (lengths[s] == l) symbols_.push_back(s);
}

std::uint32_t CanonicalDecoder::read(BitReader& r) const {
  std::uint64_t code = 0, first = 0;
  std::size_t index = 0;
  for (std::size_t l = 1; l < count_.size(); ++l) {
    code |= static_cast<std::uint64_t>(r.bit());
    if (code - first < count_[l]) return symbols_[index + (code - first)];
    index += count_[l];
    first = (first + count_[l]) << 1;
    code <<= 1;
  }
  throw DecodeError("invalid Huffman code");
}

std::vector<RleToken> run_length_encode(const std::vector<int>& lengths, int n) {
  std::vector<RleToken> out;
  auto lit = [&](int m) { out.push_back({static_cast<std::uint32_t>(m), 0, 0}); };
  std::size_t i = 0;
  while (i < lengths.size()) {
    int m = lengths[i];
    if (m < 0 || m > n) throw std::invalid_argument("code length exceeds maximum");
    std::size_t k = 1;
    while (i + k < lengths.size() && lengths[i + k] == m) ++k;
    i += k;
    if (k <= 3) {
      for (std::size_t c = 0; c < k; ++c) lit(m);
    } else if (m > 0) {
      lit(m);
      std::size_t r = k - 1;
      for (; r >= 6; r -= 6) out.push_back({static_cast<std::uint32_t>(n + 1), 2, 3});
      if (r >= 3) out.push_back({static_cast<std::uint32_t>(n + 1), 2, static_cast<std::uint32_t>(r - 3)});
      else
        for (std::size_t c = 0; c < r; ++c) lit(m);
    } else {
      for (std::size_t g = 0; g < k / 139; ++g) out.push_back({static_cast<std::uint32_t>(n + 3), 7, 127});
      std::size_t l = k % 139;
      if (l > 11) out.push_back({static_cast<std::uint32_t>(n + 3), 7, static_cast<std::uint32_t>(l - 12)});
      else if (l > 3) out.push_back({static_cast<std::uint32_t>(n + 2), 3, static_cast<std::uint32_t>(l - 4)});
      else
        for (std::size_t c = 0; c < l; ++c) lit(0);
    }
  }
  return out;
}

int rle_payload_bits(std::uint32_t symbol, int n) {
  auto s = static_cast<int>(symbol);
  if (s == n + 1) return 2;
  if (s == n + 2) return 3;
  if (s == n + 3) return 7;
  return 0;
}

void rle_expand(const RleToken& t, int n, std::vector<int>& out) {
  auto s = static_cast<int>(t.symbol);
  if (s <= n) {
    out.push_back(s);
  } else if (s == n + 1) {
    if (out.empty() || out.back() == 0) throw DecodeError("repeat indicator without preceding length");
    out.insert(out.end(), t.payload + 3, out.back());
  } else if (s == n + 2) {
    out.insert(out.end(), t.payload + 4, 0);
  } else if (s == n + 3) {
    out.insert(out.end(), t.payload + 12, 0);
  } else {
    throw DecodeError("invalid run-length symbol");
  }
}

std::vector<int> run_length_decode(const std::vector<RleToken>& tokens, int n) {
  std::vector<int> out;
  for (const auto& t : tokens) rle_expand(t, n, out);
  return out;
}

}  // namespace trp
