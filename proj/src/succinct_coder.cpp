#include "trp/succinct_coder.hpp"

#include <algorithm>
#include <stdexcept>

namespace trp {

std::uint32_t SymbolIdTable::id(const Symbol& s) const {
  if (s.is_terminal()) return s.id + 1;
  if (s.is_parameter()) return parameter_id();
  auto v = s.id < nonterminal_id.size() ? nonterminal_id[s.id] : 0;
  if (v == 0) throw std::invalid_argument("nonterminal without id");
  return v;
}

SymbolIdTable assign_ids(const SlcfGrammar& g) {
  SymbolIdTable t;
  t.terminals = g.alphabet.size();
  t.nonterminal_id.assign(g.prods.size(), 0);
  for (auto a : g.hierarchical_order()) {
    if (a == g.start) continue;
    t.nonterminal_id[a] = t.terminals + 2 + static_cast<std::uint32_t>(t.by_id.size());
    t.by_id.push_back(a);
  }
  return t;
}

std::vector<CodedValue> serialize_values(const SlcfGrammar& g, const SymbolIdTable& ids) {
  using C = CodedValue::Coding;
  std::vector<CodedValue> out;
  out.push_back({C::C2, ids.terminals});
  out.push_back({C::C2, static_cast<std::uint32_t>(ids.by_id.size())});
  for (auto ch : {Characteristic::NoChildren, Characteristic::NoLeftChild, Characteristic::NoRightChild}) {
    std::vector<std::uint32_t> members;
    for (std::uint32_t s = 0; s < g.alphabet.size(); ++s)
      if (g.alphabet.at(s).ch == ch) members.push_back(s + 1);
    out.push_back({C::Tag, static_cast<std::uint32_t>(ch)});
    out.push_back({C::C2, static_cast<std::uint32_t>(members.size())});
    for (auto m : members) out.push_back({C::C2, m});
  }
  for (const auto& sym : g.alphabet.symbols()) {
    for (unsigned char c : sym.name) {
      if (c == kEtx) throw std::invalid_argument("element name contains ETX: " + sym.name);
      out.push_back({C::C3, c});
    }
    out.push_back({C::C3, kEtx});
  }
  auto emit = [&](std::uint32_t a, C coding) {
    for (auto v : g.preorder(g.prods[a].root)) out.push_back({coding, ids.id(g.nodes[v].sym)});
  };
  for (auto a : ids.by_id) emit(a, C::C2);
  emit(g.start, C::C1);
  return out;
}

std::vector<int> super_code_lengths(const std::vector<int> (&base)[3], int n) {
  std::vector<std::uint32_t> stream;
  for (const auto& lengths : base) {
    std::vector<int> expanded;
    for (const auto& t : run_length_encode(lengths, n)) {
      auto before = expanded.size();
      rle_expand(t, n, expanded);
      stream.push_back(t.symbol);
      if (t.payload_bits > 0)
        for (auto i = before; i < expanded.size(); ++i) stream.push_back(static_cast<std::uint32_t>(expanded[i]));
    }
  }
  auto lengths = huffman_lengths(stream);
  lengths.resize(n + 4, 0);
  return lengths;
}

EncodeResult encode(const SlcfGrammar& g) {
  using C = CodedValue::Coding;
  EncodeResult res;
  auto& lay = res.layout;
  auto ids = assign_ids(g);
  lay.values = serialize_values(g, ids);
  std::vector<std::uint32_t> streams[3];
  for (const auto& v : lay.values)
    if (v.coding != C::Tag) streams[static_cast<int>(v.coding)].push_back(v.value);
  int n = 0;
  for (int k = 0; k < 3; ++k) {
    lay.base_lengths[k] = huffman_lengths(streams[k]);
    for (auto l : lay.base_lengths[k]) n = std::max(n, l);
  }
  lay.max_base_length = n;
  for (int k = 0; k < 3; ++k) lay.base_tokens[k] = run_length_encode(lay.base_lengths[k], n);
  lay.super_lengths = super_code_lengths(lay.base_lengths, n);
  lay.super_field_bits = bit_width_of(*std::max_element(lay.super_lengths.begin(), lay.super_lengths.end()));

  BitWriter w;
  w.put(lay.super_field_bits, kFieldBits);
  w.put(lay.super_lengths.size(), kFieldBits);
  for (auto l : lay.super_lengths) w.put(l, lay.super_field_bits);
  auto super = canonicalize(lay.super_lengths);
  for (int k = 0; k < 3; ++k) {
    w.put(lay.base_lengths[k].size(), kFieldBits);
    for (const auto& t : lay.base_tokens[k]) {
      super.write(w, t.symbol);
      w.put(t.payload, t.payload_bits);
    }
  }
  CanonicalCode base[3] = {canonicalize(lay.base_lengths[0]), canonicalize(lay.base_lengths[1]),
                           canonicalize(lay.base_lengths[2])};
  for (const auto& v : lay.values) {
    if (v.coding == C::Tag) w.put(v.value, 2);
    else base[static_cast<int>(v.coding)].write(w, v.value);
  }
  res.bits = w.bit_count();
  res.bytes = w.bytes();
  return res;
}

}  // namespace trp
