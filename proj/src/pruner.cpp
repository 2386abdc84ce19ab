#include "trp/pruner.hpp"

#include "trp/dag_builder.hpp"

namespace trp {

void prune(SlcfGrammar& g, long long threshold) {
  collapse_single_refs(g);
  auto order = g.hierarchical_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (*it != g.start && g.sav(*it) <= threshold) g.eliminate(*it);
  g = g.compacted();
}

}  // namespace trp
