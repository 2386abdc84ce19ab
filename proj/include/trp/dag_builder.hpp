// Minimal DAG (0-bounded grammar) construction by bottom-up subtree sharing.
#pragma once

#include "trp/slcf_grammar.hpp"
#include "trp/xml_tree.hpp"

namespace trp {

// Shares every repeated subtree of height >= 1, then removes productions referenced once.
SlcfGrammar build_dag(const BinaryTree& t);

// Eliminates non-start productions with a single reference until none remain.
bool collapse_single_refs(SlcfGrammar& g);

}  // namespace trp
