#include <doctest.h>

#include "support.hpp"
#include "trp/dag_builder.hpp"
#include "trp/digram_index.hpp"
#include "trp/fixtures.hpp"
#include "trp/pruner.hpp"
#include "trp/replacer.hpp"

using namespace trp;

namespace {

void check_no_single_refs(const SlcfGrammar& g) {
  for (auto a : g.nonterminals())
    if (a != g.start) CHECK(g.ref_count(a) >= 2);
}

}  // namespace

TEST_CASE("books grammar prunes to three productions") {
  auto t = parse_xml(books_xml());
  auto g = run_replacement_step(grammar_from_tree(t), DigramIndex::kUnbounded).grammar;
  prune(g, prune_threshold(Optimize::Edges));
  g.validate();
  CHECK(g.size() == 10);
  CHECK(g.to_text() ==
        "A2 -> author^01(title^01(isbn^00))\n"
        "A3(y) -> book^11(A2,y)\n"
        "S -> books^10(A3(A3(A3(A3(book^10(A2))))))\n");
}

TEST_CASE("perfect binary tree prunes to a doubling chain") {
  for (int d = 2; d <= 8; ++d) {
    auto t = gen_perfect_binary(d);
    auto g = run_replacement_step(grammar_from_tree(t), DigramIndex::kUnbounded).grammar;
    prune(g, prune_threshold(Optimize::Edges));
    g.validate();
    CHECK(g.nonterminals().size() == static_cast<std::size_t>(d));
    CHECK(g.size() == static_cast<std::size_t>(2 * d));
    for (auto a : g.nonterminals()) {
      auto r = g.prods[a].root;
      CHECK(g.nodes[r].kids.size() == 2);
      CHECK(g.nodes[g.nodes[r].kids[0]].sym == g.nodes[g.nodes[r].kids[1]].sym);
    }
    CHECK(same_structure(g.unfold(), t));
  }
}

TEST_CASE("grammar without profitable productions loses them") {
  auto g = test::make_grammar({{"S", "f(A(a),A(b))"}, {"A", "g^10(y)"}});
  CHECK(g.sav(1) == -1);
  auto before = test::unfold_term(g);
  prune(g, prune_threshold(Optimize::Edges));
  g.validate();
  CHECK(g.nonterminals().size() == 1);
  CHECK(test::unfold_term(g) == before);
}

TEST_CASE("profitable productions survive") {
  auto g = test::make_grammar({{"S", "f(A,f(A,A))"}, {"A", "g(a,b)"}});
  prune(g, prune_threshold(Optimize::Edges));
  CHECK(g.nonterminals().size() == 2);
  CHECK(g.size() == 6);
}

TEST_CASE("file size threshold removes productions saving two edges or fewer") {
  auto g = test::make_grammar({{"S", "f(A,f(A,A))"}, {"A", "g(a,b)"}});
  CHECK(g.sav(1) == 4);
  prune(g, prune_threshold(Optimize::FileSize));
  CHECK(g.nonterminals().size() == 2);
  auto h = test::make_grammar({{"S", "f(A,A)"}, {"A", "g(a,h^10(b))"}});
  CHECK(h.sav(1) == 3);
  auto k = test::make_grammar({{"S", "f(A,A)"}, {"A", "g(a,b)"}});
  CHECK(k.sav(1) == 2);
  prune(k, prune_threshold(Optimize::FileSize));
  CHECK(k.nonterminals().size() == 1);
}

TEST_CASE("random pruning keeps the value and the edge threshold never grows the grammar") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 120; ++round) {
    auto t = random_tree(rng, 300, 3);
    bool dag = round % 2;
    int max_rank = std::vector<int>{1, 2, 4, DigramIndex::kUnbounded}[round % 4];
    auto g0 = dag ? build_dag(t) : grammar_from_tree(t);
    auto g = run_replacement_step(g0, max_rank).grammar;
    auto replaced = g.size();
    auto copy = g;
    collapse_single_refs(copy);
    CHECK(copy.size() <= replaced);
    for (auto threshold : {0LL, 2LL}) {
      auto p = g;
      prune(p, threshold);
      p.validate();
      if (threshold == 0) CHECK(p.size() <= replaced);
      CHECK(same_structure(p.unfold(), t));
      check_no_single_refs(p);
      for (auto a : p.nonterminals())
        if (a != p.start) CHECK(p.sav(a) > threshold);
    }
  }
}
