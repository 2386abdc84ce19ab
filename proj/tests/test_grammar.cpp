#include <doctest.h>

#include "support.hpp"
#include "trp/fixtures.hpp"

using namespace trp;

namespace {

SlcfGrammar sample() {
  return test::make_grammar({{"S", "f(A(a,A(b,c)),A(c,c))"}, {"A", "f(y,g^10(h(y,B)))"}, {"B", "f(a,b)"}});
}

}  // namespace

TEST_CASE("grammar from tree unfolds to the tree") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 50; ++round) {
    auto t = random_tree(rng, 400, 4);
    auto g = grammar_from_tree(t);
    g.validate();
    CHECK(same_structure(g.unfold(), t));
    CHECK(g.size() == t.edges());
    CHECK(g.unfolded_edges() == t.edges());
  }
}

TEST_CASE("text format and ranks") {
  auto g = sample();
  g.validate();
  CHECK(g.prods[1].rank == 2);
  CHECK(g.to_text() ==
        "A2 -> f^11(a^00,b^00)\n"
        "A1(y,y) -> f^11(y,g^10(h^11(y,A2)))\n"
        "S -> f^11(A1(a^00,A1(b^00,c^00)),A1(c^00,c^00))\n");
}

TEST_CASE("ref and sav") {
  auto g = sample();
  CHECK(g.ref_count(1) == 3);
  CHECK(g.ref_count(2) == 1);
  CHECK(g.ref(2).size() == 1);
  CHECK(g.ref(2)[0].first == 1);
  // |t| = 5 edges, rank 2, three references.
  CHECK(g.sav(1) == 3 * (5 - 2) - 5);
  CHECK(g.sav(2) == 1 * (2 - 0) - 2);
}

TEST_CASE("eliminating a production preserves the value and grows the size by sav") {
  for (std::uint32_t a : {1u, 2u}) {
    auto g = sample();
    auto before = test::unfold_term(g);
    auto size = static_cast<long long>(g.size());
    auto sav = g.sav(a);
    g.eliminate(a);
    g.validate();
    CHECK(test::unfold_term(g) == before);
    CHECK(static_cast<long long>(g.size()) == size + sav);
    CHECK(!g.prods[a].alive);
  }
}

TEST_CASE("hierarchical order puts used productions first and the start last") {
  auto g = test::make_grammar({{"S", "f(C,B)"}, {"B", "f(a,a)"}, {"C", "f(B,D)"}, {"D", "f(b,b)"}});
  CHECK(g.hierarchical_order() == std::vector<std::uint32_t>{1, 3, 2, 0});
}

TEST_CASE("iterative unfold equals recursive substitution") {
  auto g = sample();
  CHECK(test::tree_term(g.unfold()) == test::unfold_term(g));
  CHECK(g.unfolded_edges() == g.unfold().edges());
  CHECK_THROWS_AS(g.unfold(5), std::length_error);
}

TEST_CASE("validation catches rank mismatches") {
  auto g = sample();
  g.nodes[g.prods[2].root].kids.pop_back();
  CHECK_THROWS(g.validate());
}

TEST_CASE("compacted copy keeps the value") {
  auto g = sample();
  g.eliminate(2);
  auto c = g.compacted();
  c.validate();
  CHECK(c.nodes.size() < g.nodes.size());
  CHECK(test::unfold_term(c) == test::unfold_term(g));
}
