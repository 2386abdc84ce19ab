#include <doctest.h>

#include "support.hpp"
#include "trp/digram_index.hpp"
#include "trp/fixtures.hpp"
#include "trp/pipeline.hpp"
#include "trp/succinct_decoder.hpp"

using namespace trp;

TEST_CASE("every flag combination round-trips") {
  std::mt19937_64 rng(8);
  std::vector<BinaryTree> trees{parse_xml(books_xml()), gen_perfect_binary(5), gen_M(2), gen_U(6)};
  for (int k = 0; k < 20; ++k) trees.push_back(random_tree(rng, 600, 4));
  for (const auto& t : trees)
    for (auto opt : {Optimize::Edges, Optimize::FileSize})
      for (bool dag : {true, false})
        for (int max_rank : {1, 2, 4, DigramIndex::kUnbounded}) {
          auto r = compress(t, {max_rank, opt, dag});
          CHECK(same_structure(decode(r.bytes).unfold(), t));
          CHECK(r.stats.tree_edges == t.edges());
          CHECK(r.stats.grammar_edges == r.grammar.size());
          CHECK(r.stats.output_bytes == r.bytes.size());
          for (auto a : r.grammar.nonterminals()) CHECK(r.grammar.prods[a].rank <= max_rank);
        }
}

TEST_CASE("compression is deterministic") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 10; ++k) {
    auto t = random_tree(rng, 1000, 3);
    CHECK(compress(t, {}).bytes == compress(t, {}).bytes);
  }
}

TEST_CASE("rank bound zero only shares whole subtrees") {
  auto t = gen_perfect_binary(6);
  auto g = compress_grammar(t, {0, Optimize::Edges, false});
  for (auto a : g.nonterminals()) CHECK(g.prods[a].rank == 0);
  CHECK(same_structure(g.unfold(), t));
}

TEST_CASE("DAG statistics match the sharing oracle") {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 30; ++k) {
    auto t = random_tree(rng, 800, 2);
    auto r = compress(t, {});
    CHECK(r.stats.dag_edges == test::dag_edges_oracle(t));
  }
}
