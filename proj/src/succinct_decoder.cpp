#include "trp/succinct_decoder.hpp"

#include <algorithm>
#include <optional>

#include "trp/bit_stream.hpp"
#include "trp/huffman.hpp"
#include "trp/succinct_coder.hpp"

namespace trp {

namespace {

std::uint32_t read_field(BitReader& r) { return static_cast<std::uint32_t>(r.get(kFieldBits)); }

CanonicalDecoder make_decoder(const std::vector<int>& lengths) {
  try {
    return CanonicalDecoder(lengths);
  } catch (const std::invalid_argument& e) {
    throw DecodeError(e.what());
  }
}

}  // namespace

SlcfGrammar decode(const std::vector<std::uint8_t>& bytes) {
  BitReader r(bytes);
  int field_bits = static_cast<int>(read_field(r));
  auto super_count = read_field(r);
  if (field_bits < 1 || field_bits > 6 || super_count < 4 || super_count > 68) throw DecodeError("bad super coding header");
  std::vector<int> super_lengths(super_count);
  for (auto& l : super_lengths) l = static_cast<int>(r.get(field_bits));
  int n = static_cast<int>(super_count) - 4;
  auto super = make_decoder(super_lengths);

  std::vector<int> base[3];
  for (auto& lengths : base) {
    auto count = read_field(r);
    if (count > r.remaining() * 139) throw DecodeError("length table larger than stream");
    while (lengths.size() < count) {
      RleToken t;
      t.symbol = super.read(r);
      t.payload_bits = rle_payload_bits(t.symbol, n);
      t.payload = static_cast<std::uint32_t>(r.get(t.payload_bits));
      rle_expand(t, n, lengths);
    }
    if (lengths.size() != count) throw DecodeError("run exceeds length table");
  }
  CanonicalDecoder c1 = make_decoder(base[0]), c2 = make_decoder(base[1]), c3 = make_decoder(base[2]);

  SlcfGrammar g;
  auto terminals = c2.read(r);
  auto productions = c2.read(r);
  if (terminals > r.remaining() || productions > r.remaining()) throw DecodeError("counts larger than stream");
  std::vector<std::optional<Characteristic>> ch(terminals + 1);
  for (int group = 0; group < 3; ++group) {
    auto tag = static_cast<Characteristic>(r.get(2));
    if (tag == Characteristic::TwoChildren) throw DecodeError("unexpected characteristic tag");
    auto count = c2.read(r);
    for (std::uint32_t i = 0; i < count; ++i) {
      auto id = c2.read(r);
      if (id < 1 || id > terminals || ch[id]) throw DecodeError("bad terminal id in characteristics");
      ch[id] = tag;
    }
  }
  for (std::uint32_t id = 1; id <= terminals; ++id) {
    std::string name;
    for (std::uint32_t c; (c = c3.read(r)) != kEtx;) {
      if (c > 255) throw DecodeError("bad name byte");
      name.push_back(static_cast<char>(c));
    }
    auto got = g.alphabet.intern(name, ch[id].value_or(Characteristic::TwoChildren));
    if (got != id - 1) throw DecodeError("duplicate terminal");
  }
  std::uint32_t param = terminals + 1;
  // Production for coded id terminals+2+i is grammar nonterminal i+1; the start is 0.
  g.start = g.add_production(0);
  std::vector<std::uint32_t> nt_of_id;
  auto parse = [&](const CanonicalDecoder& code, std::uint32_t a) {
    int params = 0;
    std::vector<std::pair<std::int32_t, int>> open;  // node, children still missing
    std::int32_t root = -1;
    do {
      auto id = code.read(r);
      Symbol s;
      int rank = 0;
      if (id >= 1 && id <= terminals) {
        s = Symbol::terminal(id - 1);
        rank = g.alphabet.at(id - 1).rank();
      } else if (id == param) {
        s = Symbol::parameter();
        ++params;
      } else if (id > param && id - param - 1 < nt_of_id.size()) {
        s = Symbol::nonterminal(nt_of_id[id - param - 1]);
        rank = g.prods[s.id].rank;
      } else {
        throw DecodeError("bad symbol id " + std::to_string(id));
      }
      auto parent = open.empty() ? -1 : open.back().first;
      auto v = g.add_node(s, parent);
      if (parent < 0) root = v;
      if (!open.empty() && --open.back().second == 0) open.pop_back();
      if (rank > 0) open.emplace_back(v, rank);
    } while (!open.empty());
    g.prods[a].rank = params;
    g.set_root(a, root);
  };
  for (std::uint32_t i = 0; i < productions; ++i) {
    auto a = g.add_production(0);
    parse(c2, a);
    nt_of_id.push_back(a);
  }
  parse(c1, g.start);
  if (g.prods[g.start].rank != 0) throw DecodeError("start production has parameters");
  return g;
}

std::string decompress_to_xml(const std::vector<std::uint8_t>& bytes, std::size_t node_cap) {
  return serialize_xml(decode(bytes).unfold(node_cap));
}

}  // namespace trp
