#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "linkhom/braid.hpp"
#include "linkhom/cable.hpp"
#include "linkhom/gauss.hpp"
#include "linkhom/pd.hpp"
#include "support/diagrams.hpp"

using namespace linkhom;

TEST_CASE("zero crossing unknot parses") {
  PDCode d = PDCode::parse(R"({"crossings": [], "orientations": [[]], "components": 1})");
  CHECK(d.crossing_count() == 0);
  CHECK(d.component_count() == 1);
  CHECK(d.writhe() == 0);
  CHECK(d.self_writhe(0) == 0);
}

TEST_CASE("right trefoil signs and writhe") {
  PDCode d = corpus::right_trefoil();
  CHECK(d.component_count() == 1);
  CHECK(d.positive_count() == 3);
  CHECK(d.writhe() == 3);
  CHECK(d.self_writhe(0) == 3);
}

TEST_CASE("left trefoil is the mirror") {
  PDCode d = corpus::left_trefoil();
  CHECK(d.writhe() == -3);
  CHECK(same_diagram(d, corpus::right_trefoil().mirror()));
  CHECK(same_diagram(d.mirror(), corpus::right_trefoil()));
}

TEST_CASE("hopf link sign data") {
  PDCode d = corpus::hopf_positive();
  CHECK(d.component_count() == 2);
  CHECK(d.writhe() == 2);
  CHECK(d.self_writhe(0) == 0);
  CHECK(d.self_writhe(1) == 0);
}

TEST_CASE("kink diagrams get forced signs") {
  CHECK(corpus::kink_positive().writhe() == 1);
  CHECK(corpus::kink_negative().writhe() == -1);
}

TEST_CASE("parse rejects bad input") {
  CHECK_THROWS_AS(PDCode::parse("not json"), validation_error);
  CHECK_THROWS_AS(PDCode::parse(R"({"crossings": []})"), validation_error);
  // arc 1 used three times
  CHECK_THROWS_AS(
      PDCode::parse(
          R"({"crossings": [[1,1,1,2]], "orientations": [[1,2]], "components": 1})"),
      validation_error);
  // component count mismatch
  CHECK_THROWS_AS(
      PDCode::parse(
          R"({"crossings": [], "orientations": [[]], "components": 2})"),
      validation_error);
  // orientations inconsistent with the under strand
  CHECK_THROWS_AS(
      PDCode::parse(
          R"({"crossings": [[3,1,4,6],[1,5,2,4],[5,3,6,2]],)"
          R"( "orientations": [[6,5,4,3,2,1]], "components": 1})"),
      validation_error);
}

TEST_CASE("json round trip") {
  PDCode d = corpus::right_trefoil();
  PDCode back = PDCode::from_json(d.to_json());
  CHECK(back.to_json() == d.to_json());
  CHECK(back.writhe() == 3);
}

TEST_CASE("mirror flips every sign and is an involution") {
  for (auto d : {corpus::right_trefoil(), corpus::hopf_positive(), corpus::figure_eight(),
                 corpus::kink_positive()}) {
    PDCode m = d.mirror();
    CHECK(m.writhe() == -d.writhe());
    CHECK(m.positive_count() == d.negative_count());
    CHECK(same_diagram(m.mirror(), d));
  }
}

TEST_CASE("reversing all components keeps signs") {
  for (auto d : {corpus::right_trefoil(), corpus::hopf_positive(), corpus::figure_eight()}) {
    std::vector<bool> all(d.component_count(), true);
    PDCode r = d.reversed(all);
    CHECK(r.writhe() == d.writhe());
    CHECK(same_diagram(r.reversed(all), d));
  }
}

TEST_CASE("reversing one hopf component flips both signs") {
  PDCode d = corpus::hopf_positive();
  PDCode r = d.reversed({true, false});
  CHECK(r.writhe() == -2);
  CHECK(r.self_writhe(0) == 0);
  CHECK(r.self_writhe(1) == 0);
}

TEST_CASE("with_kink adds one crossing of the asked sign") {
  PDCode d = corpus::right_trefoil();
  int arc = d.components()[0].front();
  PDCode plus = d.with_kink(arc, 1), minus = d.with_kink(arc, -1);
  CHECK(plus.crossing_count() == 4);
  CHECK(plus.writhe() == 4);
  CHECK(minus.writhe() == 2);
  CHECK(plus.component_count() == 1);
  CHECK(minus.self_writhe(0) == 2);
}

TEST_CASE("kink on the standalone kink diagram") {
  PDCode d = corpus::kink_positive().with_kink(1, -1);
  CHECK(d.crossing_count() == 2);
  CHECK(d.writhe() == 0);
}

TEST_CASE("normalize_framing zeroes every self writhe") {
  SECTION("right trefoil gains three negative kinks") {
    PDCode n = normalize_framing(corpus::right_trefoil());
    CHECK(n.crossing_count() == 6);
    CHECK(n.self_writhe(0) == 0);
    CHECK(n.positive_count() == 3);
    CHECK(n.negative_count() == 3);
  }
  SECTION("already framed diagrams are untouched") {
    PDCode d = corpus::hopf_positive();
    CHECK(normalize_framing(d).to_json() == d.to_json());
    PDCode u = corpus::unknot();
    CHECK(normalize_framing(u).to_json() == u.to_json());
  }
  SECTION("positive kink gets cancelled") {
    PDCode n = normalize_framing(corpus::kink_positive());
    CHECK(n.crossing_count() == 2);
    CHECK(n.self_writhe(0) == 0);
    CHECK(n.writhe() == 0);
  }
  SECTION("total writhe drops by the self writhe sum") {
    for (auto d : {corpus::figure_eight(), corpus::left_trefoil(),
                   corpus::right_trefoil().with_kink(1, 1)}) {
      int self_sum = 0;
      for (std::size_t k = 0; k < d.component_count(); ++k) self_sum += d.self_writhe(k);
      PDCode n = normalize_framing(d);
      for (std::size_t k = 0; k < n.component_count(); ++k) CHECK(n.self_writhe(k) == 0);
      CHECK(n.writhe() == d.writhe() - self_sum);
    }
  }
}

TEST_CASE("braid closures") {
  CHECK(same_diagram(braid_closure(2, {1, 1, 1}), corpus::right_trefoil()));
  CHECK(same_diagram(braid_closure(2, {-1, -1, -1}), corpus::left_trefoil()));
  CHECK(same_diagram(braid_closure(2, {1, 1}), corpus::hopf_positive()));
  PDCode f8 = corpus::figure_eight();
  CHECK(f8.crossing_count() == 4);
  CHECK(f8.component_count() == 1);
  CHECK(f8.writhe() == 0);
  CHECK(f8.positive_count() == 2);
  // an untouched strand closes into a free circle
  PDCode with_free = braid_closure(3, {1, 1, 1});
  CHECK(with_free.component_count() == 2);
  CHECK(with_free.components()[1].empty());
}

TEST_CASE("identity cable") {
  for (auto d : {corpus::right_trefoil(), corpus::hopf_positive(), corpus::figure_eight()}) {
    std::vector<int> ones(d.component_count(), 1);
    CHECK(same_diagram(cable(d, ones), d));
  }
}

TEST_CASE("two cable of the trefoil") {
  PDCode c = cable(corpus::right_trefoil(), {2});
  CHECK(c.crossing_count() == 12);
  CHECK(c.component_count() == 2);
  CHECK(c.writhe() == 12);
}

TEST_CASE("cable crossing count formula") {
  auto count = [](const PDCode& d, const std::vector<int>& m) {
    std::size_t total = 0;
    for (std::size_t ci = 0; ci < d.crossing_count(); ++ci) {
      const auto& c = d.crossing(ci);
      total += m[d.component_of_arc(c.e[0])] * m[d.component_of_arc(PDCode::over_in(c))];
    }
    return total;
  };
  PDCode hopf = corpus::hopf_positive();
  for (std::vector<int> m : {std::vector<int>{2, 3}, {1, 3}, {2, 0}, {3, 3}}) {
    PDCode c = cable(hopf, m);
    CHECK(c.crossing_count() == count(hopf, m));
    int copies = 0;
    for (int v : m) copies += v;
    CHECK(c.component_count() == static_cast<std::size_t>(copies));
  }
  PDCode f8 = corpus::figure_eight();
  CHECK(cable(f8, {3}).crossing_count() == count(f8, {3}));
}

TEST_CASE("cable writhe scales by multiplicity products") {
  PDCode d = corpus::right_trefoil();
  CHECK(cable(d, {3}).writhe() == 9 * d.writhe());
  PDCode k = corpus::kink_positive();
  CHECK(cable(k, {2}).writhe() == 4);
  PDCode h = corpus::hopf_positive();
  CHECK(cable(h, {2, 3}).writhe() == 2 * 2 * 3);
}

TEST_CASE("zero multiplicity deletes a component") {
  CHECK(cable(corpus::unknot(), {0}).component_count() == 0);
  PDCode c = cable(corpus::hopf_positive(), {2, 0});
  CHECK(c.crossing_count() == 0);
  CHECK(c.component_count() == 2);
  CHECK(c.components()[0].empty());
  CHECK(c.components()[1].empty());
}

TEST_CASE("cable composition") {
  for (auto d : {corpus::right_trefoil(), corpus::hopf_positive()}) {
    for (std::vector<int> m : {std::vector<int>(d.component_count(), 2),
                               std::vector<int>(d.component_count(), 3)}) {
      PDCode once = cable(d, m);
      std::vector<int> ones(once.component_count(), 1);
      CHECK(same_diagram(cable(once, ones), once));
    }
  }
}

TEST_CASE("orient_cable alternates directions") {
  PDCode d = corpus::right_trefoil();
  PDCode c2 = cable(d, {2});
  PDCode o2 = orient_cable(c2, {2});
  // first copy keeps its cycle, second is reversed
  CHECK(o2.components()[0] == c2.components()[0]);
  {
    auto rev = c2.components()[1];
    std::reverse(rev.begin(), rev.end());
    CHECK(o2.components()[1] == rev);
  }
  PDCode c3 = cable(d, {3});
  PDCode o3 = orient_cable(c3, {3});
  CHECK(o3.components()[0] == c3.components()[0]);
  CHECK(o3.components()[2] == c3.components()[2]);
  {
    auto rev = c3.components()[1];
    std::reverse(rev.begin(), rev.end());
    CHECK(o3.components()[1] == rev);
  }
  // 1-cable keeps the base orientation
  PDCode c1 = cable(d, {1});
  CHECK(orient_cable(c1, {1}).to_json() == c1.to_json());
}

TEST_CASE("oriented even cable of a kink has writhe zero") {
  PDCode k = corpus::kink_positive();
  CHECK(orient_cable(cable(k, {2}), {2}).writhe() == 0);
  CHECK(orient_cable(cable(k, {4}), {4}).writhe() == 0);
}

TEST_CASE("cables of cables with mixed multiplicities") {
  PDCode h = corpus::hopf_positive();
  PDCode a = cable(h, {2, 1});
  CHECK(a.crossing_count() == 4);
  CHECK(a.component_count() == 3);
  PDCode b = cable(a, {1, 1, 1});
  CHECK(same_diagram(a, b));
}
