// Removal of unprofitable productions after the replacement step.
#pragma once

#include "trp/slcf_grammar.hpp"

namespace trp {

enum class Optimize { Edges, FileSize };

inline long long prune_threshold(Optimize o) { return o == Optimize::Edges ? 0 : 2; }

// Phase 1 eliminates productions referenced once; phase 2 makes one pass in reverse
// hierarchical order eliminating productions with sav <= threshold.
void prune(SlcfGrammar& g, long long threshold);

}  // namespace trp
