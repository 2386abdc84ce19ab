// The replacement step: repeatedly replace a most frequent digram by a fresh nonterminal.
#pragma once

#include <cstdint>
#include <vector>

#include "trp/digram_index.hpp"
#include "trp/slcf_grammar.hpp"

namespace trp {

class Replacer {
 public:
  // n is the edge count of the unfolded input; max_rank bounds par of replaced digrams.
  Replacer(WorkForest& f, std::size_t n, int max_rank);

  // One iteration; returns the new nonterminal id or -1 when no digram occurs twice.
  std::int64_t step();
  void run();
  // Replaces every listed occurrence of the digram; returns the new nonterminal.
  std::uint32_t replace_digram(std::int32_t id);

  // Replaces the occurrence of pattern(a) rooted at v, child slot j.
  void replace_occurrence(std::int32_t v, int j, std::uint32_t a);

  DigramIndex& index() { return index_; }
  const std::vector<std::uint32_t>& created() const { return created_; }

 private:
  void remove_parent_edges(std::int32_t v);
  void remove_child_edges(std::int32_t v);
  void add_new(std::int32_t v);
  void inline_reference(std::int32_t v, int j);
  void split_reference(std::int32_t v, int j, std::uint32_t a);
  void set_kids(std::int32_t v, WorkForest::Kids kids);
  void relink_kids(std::int32_t v);

  WorkForest& f_;
  DigramIndex index_;
  std::vector<std::uint32_t> created_;
};

struct ReplacementResult {
  SlcfGrammar grammar;
  std::vector<std::uint32_t> created;
};

// Runs the replacement step on a start production plus optional rank-0 productions.
ReplacementResult run_replacement_step(const SlcfGrammar& g, int max_rank);
// Same, releasing g once the work forest is built.
ReplacementResult run_replacement_step(SlcfGrammar&& g, int max_rank);

}  // namespace trp
