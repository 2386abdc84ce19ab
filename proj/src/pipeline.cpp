#include "trp/pipeline.hpp"

#include <chrono>

#include "trp/dag_builder.hpp"
#include "trp/replacer.hpp"
#include "trp/succinct_coder.hpp"

namespace trp {

namespace {

SlcfGrammar initial_grammar(const BinaryTree& t, const CompressOptions& opt) {
  return opt.dag ? build_dag(t) : grammar_from_tree(t);
}

SlcfGrammar finish(SlcfGrammar&& initial, const CompressOptions& opt) {
  auto g = run_replacement_step(std::move(initial), opt.max_rank).grammar;
  prune(g, prune_threshold(opt.optimize));
  return g;
}

}  // namespace

SlcfGrammar compress_grammar(const BinaryTree& t, const CompressOptions& opt) {
  return finish(initial_grammar(t, opt), opt);
}

CompressResult compress(const BinaryTree& t, const CompressOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  CompressResult res;
  auto initial = initial_grammar(t, opt);
  res.stats.tree_edges = t.edges();
  res.stats.dag_edges = opt.dag ? initial.size() : build_dag(t).size();
  res.grammar = finish(std::move(initial), opt);
  res.bytes = encode(res.grammar).bytes;
  res.stats.grammar_edges = res.grammar.size();
  res.stats.nonterminals = res.grammar.nonterminals().size();
  res.stats.output_bytes = res.bytes.size();
  res.stats.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace trp
