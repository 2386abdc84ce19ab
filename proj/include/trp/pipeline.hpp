// End-to-end compression: tree -> optional DAG -> replacement -> pruning -> encoding.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trp/digram_index.hpp"
#include "trp/pruner.hpp"
#include "trp/slcf_grammar.hpp"
#include "trp/xml_tree.hpp"

namespace trp {

struct CompressOptions {
  int max_rank = 4;
  Optimize optimize = Optimize::FileSize;
  bool dag = true;
};

struct CompressStats {
  std::size_t tree_edges = 0;
  std::size_t dag_edges = 0;
  std::size_t grammar_edges = 0;
  std::size_t nonterminals = 0;
  std::size_t output_bytes = 0;
  double millis = 0;
};

struct CompressResult {
  SlcfGrammar grammar;
  std::vector<std::uint8_t> bytes;
  CompressStats stats;
};

// Grammar only, no encoding.
SlcfGrammar compress_grammar(const BinaryTree& t, const CompressOptions& opt);
CompressResult compress(const BinaryTree& t, const CompressOptions& opt);

}  // namespace trp
