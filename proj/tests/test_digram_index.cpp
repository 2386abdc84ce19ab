#include <doctest.h>

#include <memory>

#include "support.hpp"
#include "trp/dag_builder.hpp"
#include "trp/digram_index.hpp"
#include "trp/fixtures.hpp"

using namespace trp;

namespace {

TerminalDigram terminal_digram(const BinaryTree& t, const std::string& a, int i, const std::string& b) {
  TerminalDigram d;
  d.i = i;
  for (std::uint32_t s = 0; s < t.alphabet.size(); ++s) {
    auto name = t.alphabet.at(s).name + "^" + characteristic_bits(t.alphabet.at(s).ch);
    if (name == a) d.a = s;
    if (name == b) d.b = s;
  }
  return d;
}

struct Indexed {
  std::unique_ptr<WorkForest> f;
  std::unique_ptr<DigramIndex> index;
};

Indexed index_of(const SlcfGrammar& g, int max_rank = DigramIndex::kUnbounded) {
  Indexed x;
  x.f = std::make_unique<WorkForest>(WorkForest::from_grammar(g));
  x.index = std::make_unique<DigramIndex>(*x.f, g.unfolded_edges(), max_rank);
  x.index->build(g.hierarchical_order());
  return x;
}

Digram digram(const SlcfGrammar& g, const std::string& a, int i, const std::string& b) {
  auto sym = [&](const std::string& n) {
    for (std::uint32_t s = 0; s < g.alphabet.size(); ++s)
      if (g.alphabet.at(s).name + "^" + characteristic_bits(g.alphabet.at(s).ch) == n) return Symbol::terminal(s);
    throw std::runtime_error("no terminal " + n);
  };
  return {sym(a), i, sym(b)};
}

}  // namespace

TEST_CASE("overlapping chain keeps the deepest occurrences") {
  auto t = test::make_tree("f(a,f(a,f(a,f(a,a))))");
  auto occ = compute_occurrences(t, terminal_digram(t, "f^11", 2, "f^11"));
  // Nodes in preorder: 0 = eps, 2 = [2], 4 = [22], 6 = [222].
  CHECK(occ == std::vector<std::int32_t>{4, 0});
}

TEST_CASE("unary chain picks the deeper of two maximal sets") {
  auto t = test::make_tree("f^10(f^10(f^10(a)))");
  auto occ = compute_occurrences(t, terminal_digram(t, "f^10", 1, "f^10"));
  CHECK(occ == std::vector<std::int32_t>{1});
}

TEST_CASE("greedy postorder selection is maximum") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 1000; ++round) {
    auto t = random_tree(rng, 200, 1 + round % 3);
    std::uint32_t a = rng() % t.alphabet.size(), b = rng() % t.alphabet.size();
    if (t.alphabet.at(a).rank() == 0) continue;
    int i = 1 + static_cast<int>(rng() % t.alphabet.at(a).rank());
    auto occ = compute_occurrences(t, {a, i, b});
    CHECK(occ.size() == test::max_non_overlapping(t, a, i, b));
    if (occ.size() <= 14) CHECK(occ.size() == test::max_non_overlapping_exhaustive(t, a, i, b));
  }
}

TEST_CASE("initial index agrees with per-digram greedy selection") {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 100; ++round) {
    auto t = random_tree(rng, 300, 3);
    auto g = grammar_from_tree(t);
    auto x = index_of(g);
    x.index->check();
    for (std::size_t id = 0; id < x.index->digram_count(); ++id) {
      const auto& r = x.index->record(static_cast<std::int32_t>(id));
      auto occ = compute_occurrences(t, TerminalDigram{r.d.a.id, r.d.i, r.d.b.id});
      CHECK(static_cast<std::size_t>(r.count) == occ.size());
      CHECK(r.freq == r.count);
    }
  }
}

TEST_CASE("books digram frequencies") {
  auto g = grammar_from_tree(parse_xml(books_xml()));
  auto x = index_of(g);
  CHECK(x.index->frequency(digram(g, "title^01", 1, "isbn^00")) == 5);
  CHECK(x.index->frequency(digram(g, "author^01", 1, "title^01")) == 5);
  CHECK(x.index->frequency(digram(g, "book^11", 1, "author^01")) == 4);
  CHECK(x.index->frequency(digram(g, "book^11", 2, "book^11")) == 2);
  CHECK(x.index->frequency(digram(g, "book^11", 2, "book^10")) == 1);
  CHECK(x.index->frequency(digram(g, "book^10", 1, "author^01")) == 1);
  CHECK(x.index->frequency(digram(g, "books^10", 1, "book^11")) == 1);
  CHECK(x.index->digram_count() == 7);
  auto top = x.index->pop();
  REQUIRE(top >= 0);
  CHECK(x.index->record(top).freq == 5);
  CHECK(x.index->record(top).d == digram(g, "title^01", 1, "isbn^00"));
}

TEST_CASE("cross-production occurrences at a shared reference") {
  auto g = build_dag(test::make_tree("f(g(a,a),g(a,a))"));
  auto x = index_of(g);
  CHECK(x.index->frequency(digram(g, "f^11", 1, "g^11")) == 1);
  CHECK(x.index->frequency(digram(g, "f^11", 2, "g^11")) == 1);
  CHECK(x.index->frequency(digram(g, "g^11", 1, "a^00")) == 2);
}

TEST_CASE("DAG mode misses one occurrence behind equal-symbol references") {
  auto t = test::make_tree("f(f(b,f(a,f(a,f(a,a)))),f(c,f(a,f(a,f(a,a)))))");
  auto dag = build_dag(t);
  REQUIRE(dag.nonterminals().size() == 2);
  auto x = index_of(dag);
  CHECK(x.index->frequency(digram(dag, "f^11", 2, "f^11")) == 3);
  auto plain = grammar_from_tree(t);
  auto y = index_of(plain);
  CHECK(y.index->frequency(digram(plain, "f^11", 2, "f^11")) == 4);
}

TEST_CASE("digrams above the rank bound are never popped") {
  auto g = test::make_grammar({{"S", "f(g(a,a),f(g(a,a),g(a,a)))"}});
  auto x = index_of(g, 1);
  // (f,1,g) and (f,2,g) have par 3; (g,i,a) has par 1.
  auto top = x.index->pop();
  REQUIRE(top >= 0);
  CHECK(x.index->record(top).par <= 1);
  auto y = index_of(g, 0);
  CHECK(y.index->pop() == -1);
}

TEST_CASE("empty index pops nothing") {
  auto g = test::make_grammar({{"S", "f^10(a)"}});
  auto x = index_of(g);
  CHECK(x.index->pop() == -1);
}

TEST_CASE("bucket bound is the integer square root") {
  auto g = grammar_from_tree(gen_perfect_binary(5));  // 62 edges
  auto x = index_of(g);
  CHECK(x.index->bucket_bound() == 7);
}
