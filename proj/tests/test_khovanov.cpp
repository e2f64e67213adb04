#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cstdlib>
#include <functional>
#include <vector>

#include "linkhom/braid.hpp"
#include "linkhom/cable.hpp"
#include "linkhom/khovanov.hpp"
#include "linkhom/loops.hpp"
#include "support/diagram_oracle.hpp"
#include "support/diagrams.hpp"
#include "support/tables.hpp"

using namespace linkhom;
using support::table_map;

namespace {

std::vector<int> state_of(std::size_t mask, std::size_t n) {
  std::vector<int> st(n, 0);
  for (std::size_t c = 0; c < n; ++c)
    if (mask >> c & 1) st[c] = 1;
  return st;
}

// brute force reference: one polynomial term per state, loop counts from the
// traversal-checked resolver
Laurent bracket_reference(int n_plus, int n_minus, std::size_t crossings,
                          const std::function<int(const std::vector<int>&)>& loops) {
  Laurent circle = Laurent::q(1) + Laurent::q(-1);
  Laurent sum;
  for (std::size_t mask = 0; mask < (std::size_t(1) << crossings); ++mask) {
    int r = std::popcount(static_cast<std::uint64_t>(mask));
    Laurent term = circle.pow(loops(state_of(mask, crossings))).shifted(r);
    sum += term * Laurent(r % 2 ? -1 : 1);
  }
  return (sum * Laurent(n_minus % 2 ? -1 : 1)).shifted(n_plus - 2 * n_minus);
}

Laurent bracket_reference(const PDCode& d) {
  return bracket_reference(d.positive_count(), d.negative_count(), d.crossing_count(),
                           [&](const std::vector<int>& st) { return count_loops(d, st); });
}

std::vector<PDCode> small_corpus() {
  return {corpus::unknot(),        corpus::kink_positive(), corpus::kink_negative(),
          corpus::right_trefoil(), corpus::left_trefoil(),  corpus::hopf_positive(),
          corpus::figure_eight()};
}

}  // namespace

TEST_CASE("resolution cube of the unknot") {
  ResolutionCube cube = resolution_cube(corpus::unknot());
  CHECK(cube.crossings == 0);
  REQUIRE(cube.vertex.size() == 1);
  CHECK(cube.vertex[0].loops == 1);
  CHECK(cube.edges.empty());
}

TEST_CASE("resolution cube of one crossing kinks") {
  ResolutionCube pos = resolution_cube(corpus::kink_positive());
  REQUIRE(pos.vertex.size() == 2);
  REQUIRE(pos.edges.size() == 1);
  CHECK(pos.vertex[0].loops == 2);
  CHECK(pos.vertex[1].loops == 1);
  CHECK(pos.edges[0].is_merge);
  CHECK(pos.edges[0].sign == 1);

  ResolutionCube neg = resolution_cube(corpus::kink_negative());
  CHECK(neg.vertex[0].loops == 1);
  CHECK(neg.vertex[1].loops == 2);
  CHECK_FALSE(neg.edges[0].is_merge);
}

TEST_CASE("cube vertices and edges match the loop oracle") {
  for (const PDCode& d : {corpus::right_trefoil(), corpus::hopf_positive(),
                          corpus::figure_eight()}) {
    ResolutionCube cube = resolution_cube(d);
    std::size_t n = d.crossing_count();
    REQUIRE(cube.vertex.size() == (std::size_t(1) << n));
    for (std::size_t mask = 0; mask < cube.vertex.size(); ++mask)
      CHECK(cube.vertex[mask].loops == oracle::loops_pd(d, state_of(mask, n)));
    CHECK(cube.edges.size() == n * (std::size_t(1) << (n - 1)));
    for (const CubeEdge& e : cube.edges) {
      CHECK(e.to == (e.from | (std::size_t(1) << e.crossing)));
      int lu = cube.vertex[e.from].loops, lv = cube.vertex[e.to].loops;
      CHECK(lv == (e.is_merge ? lu - 1 : lu + 1));
      int expected = std::popcount(e.from & ((std::size_t(1) << e.crossing) - 1)) % 2 ? -1 : 1;
      CHECK(e.sign == expected);
      for (int l = 0; l < lu; ++l) {
        bool involved = e.is_merge ? (l == e.merge_a || l == e.merge_b) : l == e.split_src;
        if (involved)
          CHECK(e.image[l] == (e.is_merge ? e.merge_into : -1));
        else
          CHECK((e.image[l] >= 0 && e.image[l] < lv));
      }
    }
  }
}

TEST_CASE("khovanov complex of the unknot") {
  KhovanovComplex kc = khovanov_complex(corpus::unknot());
  CHECK(kc.dim() == 2);
  REQUIRE(kc.complex.dim(0) == 2);
  CHECK(kc.complex.grading(0, 0) == Grading{1});
  CHECK(kc.complex.grading(0, 1) == Grading{-1});
  CHECK(kc.complex.matrix(0).is_zero());
  kc.complex.validate();
}

TEST_CASE("khovanov complex gradings and d squared") {
  for (const PDCode& d : small_corpus()) {
    KhovanovComplex kc = khovanov_complex(d);
    kc.complex.validate();
    for (const CubeEdge& e : kc.cube.edges)
      CHECK(std::popcount(static_cast<std::uint64_t>(e.to)) ==
            std::popcount(static_cast<std::uint64_t>(e.from)) + 1);
  }
}

TEST_CASE("trefoil complex size") {
  KhovanovComplex kc = khovanov_complex(corpus::right_trefoil());
  std::size_t expected = 0;
  for (auto& v : kc.cube.vertex) expected += std::size_t(1) << v.loops;
  CHECK(kc.dim() == expected);
  CHECK(expected == 30);
}

TEST_CASE("unknot homology") {
  support::TableMap t = table_map(khovanov_homology(corpus::unknot()));
  support::TableMap expected{{{0, {1}}, {1, {}}}, {{0, {-1}}, {1, {}}}};
  CHECK(t == expected);
}

TEST_CASE("kink homology equals unknot homology") {
  support::TableMap unknot = table_map(khovanov_homology(corpus::unknot()));
  CHECK(table_map(khovanov_homology(corpus::kink_positive())) == unknot);
  CHECK(table_map(khovanov_homology(corpus::kink_negative())) == unknot);
  PDCode two = corpus::kink_positive().with_kink(1, -1);
  CHECK(table_map(khovanov_homology(two)) == unknot);
}

TEST_CASE("right trefoil homology table") {
  support::TableMap t = table_map(khovanov_homology(corpus::right_trefoil()));
  support::TableMap expected{{{0, {1}}, {1, {}}},
                             {{0, {3}}, {1, {}}},
                             {{2, {5}}, {1, {}}},
                             {{3, {7}}, {0, {2}}},
                             {{3, {9}}, {1, {}}}};
  CHECK(t == expected);
}

TEST_CASE("positive hopf homology table") {
  support::TableMap t = table_map(khovanov_homology(corpus::hopf_positive()));
  support::TableMap expected{{{0, {0}}, {1, {}}},
                             {{0, {2}}, {1, {}}},
                             {{2, {4}}, {1, {}}},
                             {{2, {6}}, {1, {}}}};
  CHECK(t == expected);
}

TEST_CASE("figure eight homology is mirror symmetric") {
  HomologyTable t = khovanov_homology(corpus::figure_eight());
  CHECK(support::rank_map(t) == support::negated_rank_map(t));
  CHECK(t.total_rank() >= 2);
}

TEST_CASE("mirror flips homology ranks") {
  for (const PDCode& d :
       {corpus::right_trefoil(), corpus::hopf_positive(), corpus::figure_eight()}) {
    HomologyTable t = khovanov_homology(d);
    HomologyTable m = khovanov_homology(d.mirror());
    CHECK(support::rank_map(m) == support::negated_rank_map(t));
  }
}

TEST_CASE("full orientation reversal preserves homology") {
  PDCode tre = corpus::right_trefoil();
  CHECK(table_map(khovanov_homology(tre.reversed({true}))) == table_map(khovanov_homology(tre)));
  PDCode hopf = corpus::hopf_positive();
  CHECK(table_map(khovanov_homology(hopf.reversed({true, true}))) ==
        table_map(khovanov_homology(hopf)));
}

TEST_CASE("jones from euler characteristic") {
  Laurent unknot = jones_from_euler(khovanov_homology(corpus::unknot()));
  CHECK(unknot == Laurent::q(1) + Laurent::q(-1));
  Laurent trefoil = jones_from_euler(khovanov_homology(corpus::right_trefoil()));
  CHECK(trefoil == Laurent::q(1) + Laurent::q(3) + Laurent::q(5) - Laurent::q(9));
  PDCode empty = PDCode::from_data({}, {});
  CHECK(jones_from_euler(khovanov_complex(empty)) == Laurent(1));
  CHECK(kauffman_bracket_jones(empty) == Laurent(1));
}

TEST_CASE("complex homology and bracket give one jones polynomial") {
  for (const PDCode& d : small_corpus()) {
    KhovanovComplex kc = khovanov_complex(d);
    Laurent from_complex = jones_from_euler(kc);
    Laurent from_homology = jones_from_euler(kc.complex.homology());
    Laurent from_bracket = kauffman_bracket_jones(d);
    CHECK(from_complex == from_homology);
    CHECK(from_complex == from_bracket);
    CHECK(from_bracket == bracket_reference(d));
  }
}

TEST_CASE("euler characteristic matches bracket on a twelve crossing cable") {
  PDCode cabled = cable(corpus::right_trefoil(), {2});
  REQUIRE(cabled.crossing_count() == 12);
  KhovanovComplex kc = khovanov_complex(cabled);
  CHECK(jones_from_euler(kc) == kauffman_bracket_jones(cabled));
}

TEST_CASE("bracket agrees between pd and gauss presentations") {
  for (const PDCode& d : small_corpus()) {
    GaussPhrase g = pd_to_gauss(d);
    CHECK(kauffman_bracket_jones(g) == kauffman_bracket_jones(d));
  }
}

TEST_CASE("virtual bracket golden value") {
  GaussPhrase g = GaussPhrase::parse("A:+O B:+U\nABAB\n");
  Laurent j = kauffman_bracket_jones(g);
  Laurent golden = Laurent::q(1) - Laurent::q(2) + Laurent::q(3) + Laurent::q(6);
  CHECK(j == golden);
  CHECK(j.str() == "1 q^1 - 1 q^2 + 1 q^3 + 1 q^6");
  Laurent reference = bracket_reference(
      2, 0, 2, [&](const std::vector<int>& st) { return count_loops(g, st); });
  CHECK(j == reference);
}

TEST_CASE("non planar pd codes are rejected by the cube") {
  // pd presentation of the two crossing virtual knot behind ABAB
  PDCode vt = PDCode::from_data({{2, 1, 3, 4}, {1, 4, 2, 3}}, {{1, 2, 3, 4}});
  CHECK(vt.positive_count() == 2);
  CHECK_FALSE(realizable(pd_to_gauss(vt)));
  CHECK_THROWS_AS(resolution_cube(vt), not_realizable);
  Laurent golden = Laurent::q(1) - Laurent::q(2) + Laurent::q(3) + Laurent::q(6);
  CHECK(kauffman_bracket_jones(vt) == golden);
  CHECK(kauffman_bracket_jones(pd_to_gauss(vt)) == golden);
}

TEST_CASE("reidemeister one pairs share homology") {
  for (const PDCode& d : {corpus::right_trefoil(), corpus::hopf_positive()}) {
    support::TableMap base = table_map(khovanov_homology(d));
    int arc = d.components().front().front();
    CHECK(table_map(khovanov_homology(d.with_kink(arc, 1))) == base);
    CHECK(table_map(khovanov_homology(d.with_kink(arc, -1))) == base);
  }
}

TEST_CASE("reidemeister two pairs share homology") {
  support::TableMap base = table_map(khovanov_homology(braid_closure(3, {1, -2, 1, -2})));
  CHECK(table_map(khovanov_homology(braid_closure(3, {1, -2, 2, -2, 1, -2}))) == base);
  CHECK(table_map(khovanov_homology(braid_closure(3, {1, -2, -2, 2, 1, -2}))) == base);
  support::TableMap tre = table_map(khovanov_homology(braid_closure(2, {1, 1, 1})));
  CHECK(table_map(khovanov_homology(braid_closure(2, {1, 1, -1, 1, 1}))) == tre);
}

TEST_CASE("reidemeister three pairs share homology") {
  CHECK(table_map(khovanov_homology(braid_closure(3, {1, 2, 1}))) ==
        table_map(khovanov_homology(braid_closure(3, {2, 1, 2}))));
  CHECK(table_map(khovanov_homology(braid_closure(3, {-1, -2, -1}))) ==
        table_map(khovanov_homology(braid_closure(3, {-2, -1, -2}))));
  CHECK(table_map(khovanov_homology(braid_closure(3, {1, 2, 1, -2, 1, -2}))) ==
        table_map(khovanov_homology(braid_closure(3, {2, 1, 2, -2, 1, -2}))));
}

TEST_CASE("homology budget") {
  CHECK_NOTHROW(check_homology_budget(14));
  CHECK_THROWS_AS(check_homology_budget(15), budget_exceeded);
  CHECK_NOTHROW(check_bracket_budget(22));
  CHECK_THROWS_AS(check_bracket_budget(23), budget_exceeded);

  PDCode wide = braid_closure(2, std::vector<int>(15, 1));
  CHECK_THROWS_AS(khovanov_homology(wide), budget_exceeded);
  Budgets tight{3, 22};
  CHECK_THROWS_AS(khovanov_homology(corpus::figure_eight(), tight), budget_exceeded);
  CHECK_NOTHROW(khovanov_homology(corpus::right_trefoil(), tight));

  std::vector<std::vector<std::size_t>> big_word(1);
  std::vector<GaussPhrase::Letter> letters;
  for (std::size_t l = 0; l < 23; ++l) {
    big_word[0].push_back(l);
    big_word[0].push_back(l);
    letters.push_back({1, true});
  }
  GaussPhrase wide_g = GaussPhrase::from_words(big_word, letters);
  CHECK_THROWS_AS(kauffman_bracket_jones(wide_g), budget_exceeded);
}

TEST_CASE("budget environment parsing") {
  CHECK(detail::env_int("LINKHOM_TEST_UNSET_VARIABLE", 14) == 14);
  setenv("LINKHOM_TEST_BUDGET_VARIABLE", "9", 1);
  CHECK(detail::env_int("LINKHOM_TEST_BUDGET_VARIABLE", 14) == 9);
  setenv("LINKHOM_TEST_BUDGET_VARIABLE", "junk", 1);
  CHECK(detail::env_int("LINKHOM_TEST_BUDGET_VARIABLE", 14) == 14);
  setenv("LINKHOM_TEST_BUDGET_VARIABLE", "-3", 1);
  CHECK(detail::env_int("LINKHOM_TEST_BUDGET_VARIABLE", 14) == 14);
  unsetenv("LINKHOM_TEST_BUDGET_VARIABLE");
}
