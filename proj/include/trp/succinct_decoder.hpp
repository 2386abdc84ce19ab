// Decoder for the succinct grammar format.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trp/slcf_grammar.hpp"

namespace trp {

// Start production gets id 0; the other productions follow in coded order.
SlcfGrammar decode(const std::vector<std::uint8_t>& bytes);

std::string decompress_to_xml(const std::vector<std::uint8_t>& bytes, std::size_t node_cap = std::size_t{1} << 31);

}  // namespace trp
