#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "linkhom/gauss.hpp"
#include "linkhom/loops.hpp"
#include "support/diagram_oracle.hpp"
#include "support/diagrams.hpp"

using namespace linkhom;

TEST_CASE("gauss parse and serialize round trip") {
  std::string text = "A:+U B:+O\nAB|AB\n";
  GaussPhrase g = GaussPhrase::parse(text);
  CHECK(g.letter_count() == 2);
  CHECK(g.word_count() == 2);
  CHECK(g.letter(0).sign == 1);
  CHECK_FALSE(g.letter(0).over_first);
  CHECK(g.serialize() == text);
  CHECK(g.writhe() == 2);
}

TEST_CASE("gauss parse rejections") {
  CHECK_THROWS_AS(GaussPhrase::parse("A:+O\nA\n"), validation_error);        // once
  CHECK_THROWS_AS(GaussPhrase::parse("A:+O\nAAA\n"), validation_error);      // thrice
  CHECK_THROWS_AS(GaussPhrase::parse("A:+O\nAB\n"), validation_error);       // unknown
  CHECK_THROWS_AS(GaussPhrase::parse("A:5O\nAA\n"), validation_error);       // bad sign
  CHECK_THROWS_AS(GaussPhrase::parse("A:+O A:+O\nAA\n"), validation_error);  // duplicate
  CHECK_THROWS_AS(GaussPhrase::parse("A:+O\n[27\n"), validation_error);      // bracket
}

TEST_CASE("letters beyond Z use bracket tokens") {
  std::vector<std::vector<std::size_t>> word(1);
  std::vector<GaussPhrase::Letter> letters;
  for (std::size_t l = 0; l < 27; ++l) {
    word[0].push_back(l);
    word[0].push_back(l);
    letters.push_back({1, true});
  }
  GaussPhrase g = GaussPhrase::from_words(word, letters);
  std::string text = g.serialize();
  CHECK(text.find("[27]:+O") != std::string::npos);
  CHECK(GaussPhrase::parse(text).serialize() == text);
}

TEST_CASE("trefoil gauss phrase") {
  GaussPhrase g = pd_to_gauss(corpus::right_trefoil());
  CHECK(g.serialize() == "A:+U B:+O C:+U\nABCABC\n");
  CHECK(same_diagram(gauss_to_pd(g), corpus::right_trefoil()));
}

TEST_CASE("hopf gauss phrase") {
  GaussPhrase g = pd_to_gauss(corpus::hopf_positive());
  CHECK(g.serialize() == "A:+U B:+O\nAB|AB\n");
  CHECK(same_diagram(gauss_to_pd(g), corpus::hopf_positive()));
}

TEST_CASE("gauss round trips for the corpus") {
  for (auto d : {corpus::right_trefoil(), corpus::left_trefoil(), corpus::hopf_positive(),
                 corpus::figure_eight(), corpus::kink_positive(), corpus::kink_negative(),
                 corpus::unknot()}) {
    GaussPhrase g = pd_to_gauss(d);
    CHECK(realizable(g));
    CHECK(same_diagram(gauss_to_pd(g), d));
  }
}

TEST_CASE("realizability of the classic examples") {
  CHECK(realizable(GaussPhrase::parse("A:+O B:+O\nAABB\n")));
  CHECK_FALSE(realizable(GaussPhrase::parse("A:+O B:+O\nABAB\n")));
  CHECK(realizable(GaussPhrase::parse("\n\n")));
  PDCode empty = gauss_to_pd(GaussPhrase::parse("\n\n"));
  CHECK(empty.crossing_count() == 0);
  CHECK(empty.component_count() == 1);
  CHECK_THROWS_AS(gauss_to_pd(GaussPhrase::parse("A:+O B:+O\nABAB\n")), not_realizable);
}

TEST_CASE("realizability matches exhaustive search on two letter words") {
  for (std::string pat : {"AABB", "ABAB", "ABBA"}) {
    for (int sa : {1, -1})
      for (int sb : {1, -1})
        for (bool oa : {true, false})
          for (bool ob : {true, false}) {
            std::vector<std::vector<std::size_t>> words(1);
            for (char ch : pat) words[0].push_back(ch - 'A');
            GaussPhrase g =
                GaussPhrase::from_words(words, {{sa, oa}, {sb, ob}});
            INFO(pat << " " << sa << sb << oa << ob);
            CHECK(realizable(g) == oracle::realizable_search(g));
          }
  }
}

TEST_CASE("realizability matches exhaustive search on random codes") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t letters = 1 + rng() % 4;
    std::size_t nwords = 1 + rng() % 2;
    std::vector<std::vector<std::size_t>> words(nwords);
    for (std::size_t l = 0; l < letters; ++l)
      for (int rep = 0; rep < 2; ++rep) {
        std::size_t w = rng() % nwords;
        std::size_t at = words[w].empty() ? 0 : rng() % (words[w].size() + 1);
        words[w].insert(words[w].begin() + at, l);
      }
    std::vector<GaussPhrase::Letter> ls;
    for (std::size_t l = 0; l < letters; ++l)
      ls.push_back({rng() % 2 ? 1 : -1, rng() % 2 == 0});
    GaussPhrase g = GaussPhrase::from_words(words, ls);
    INFO(g.serialize());
    CHECK(realizable(g) == oracle::realizable_search(g));
  }
}

TEST_CASE("loop counts across all trefoil states") {
  PDCode d = corpus::right_trefoil();
  for (int bits = 0; bits < 8; ++bits) {
    std::vector<int> state = {bits & 1, (bits >> 1) & 1, (bits >> 2) & 1};
    INFO("state bits " << bits);
    CHECK(count_loops(d, state) == oracle::loops_pd(d, state));
  }
  CHECK(count_loops(d, {0, 0, 0}) == 2);
  CHECK(count_loops(d, {1, 1, 1}) == 3);
}

TEST_CASE("loop counts for corpus diagrams agree with the walker") {
  for (auto d : {corpus::hopf_positive(), corpus::figure_eight(), corpus::kink_positive(),
                 corpus::kink_negative()}) {
    for (int bits = 0; bits < (1 << d.crossing_count()); ++bits) {
      std::vector<int> state;
      for (std::size_t c = 0; c < d.crossing_count(); ++c) state.push_back((bits >> c) & 1);
      CHECK(count_loops(d, state) == oracle::loops_pd(d, state));
    }
  }
  CHECK(count_loops(corpus::unknot(), {}) == 1);
}

TEST_CASE("loop counts on the virtual square word") {
  GaussPhrase g = GaussPhrase::parse("A:+O B:+O\nABAB\n");
  for (int bits = 0; bits < 4; ++bits) {
    std::vector<int> state = {bits & 1, (bits >> 1) & 1};
    CHECK(count_loops(g, state) == oracle::loops_gauss(g, state));
  }
}

TEST_CASE("pd and gauss loop counts agree on realizable diagrams") {
  for (auto d : {corpus::right_trefoil(), corpus::hopf_positive(), corpus::figure_eight()}) {
    GaussPhrase g = pd_to_gauss(d);
    for (int bits = 0; bits < (1 << d.crossing_count()); ++bits) {
      std::vector<int> state;
      for (std::size_t c = 0; c < d.crossing_count(); ++c) state.push_back((bits >> c) & 1);
      // letters are numbered by first visit, crossings by input order; map
      // through the phrase walk
      std::vector<int> lstate(state.size());
      std::map<std::size_t, std::size_t> letter_of;
      {
        std::map<int, std::pair<std::size_t, bool>> head;
        for (std::size_t c = 0; c < d.crossing_count(); ++c) {
          head[d.crossing(c).e[0]] = {c, false};
          head[PDCode::over_in(d.crossing(c))] = {c, true};
        }
        std::size_t next_letter = 0;
        std::map<std::size_t, std::size_t> assigned;
        for (auto& cyc : d.components())
          for (int a : cyc) {
            std::size_t c = head.at(a).first;
            if (!assigned.count(c)) assigned[c] = next_letter++;
          }
        for (auto& [c, l] : assigned) lstate[l] = state[c];
      }
      CHECK(count_loops(d, state) == count_loops(g, lstate));
    }
  }
}

TEST_CASE("loop count invariance under rotation and word order") {
  std::mt19937 rng(99);
  GaussPhrase g = pd_to_gauss(corpus::figure_eight());
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::size_t> offs;
    for (std::size_t w = 0; w < g.word_count(); ++w) offs.push_back(rng() % 8);
    GaussPhrase r = g.rotated(offs);
    for (int bits = 0; bits < 16; ++bits) {
      std::vector<int> state = {bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1};
      // rotation never renames letters
      CHECK(count_loops(g, state) == count_loops(r, state));
    }
  }
  GaussPhrase h = pd_to_gauss(corpus::hopf_positive());
  GaussPhrase swapped = GaussPhrase::from_words({h.words()[1], h.words()[0]},
                                                {h.letter(0), h.letter(1)});
  for (int bits = 0; bits < 4; ++bits) {
    std::vector<int> state = {bits & 1, (bits >> 1) & 1};
    CHECK(count_loops(h, state) == count_loops(swapped, state));
  }
  // word order with asymmetric words; the flag of B tracks its occurrence
  GaussPhrase p = GaussPhrase::from_words({{0, 0, 1}, {1}}, {{1, true}, {1, true}});
  GaussPhrase q = GaussPhrase::from_words({{1}, {0, 0, 1}}, {{1, true}, {1, false}});
  for (int bits = 0; bits < 4; ++bits) {
    std::vector<int> state = {bits & 1, (bits >> 1) & 1};
    CHECK(count_loops(p, state) == count_loops(q, state));
    CHECK(count_loops(p, state) == oracle::loops_gauss(p, state));
  }
}

TEST_CASE("canonical form is rotation invariant") {
  GaussPhrase g = pd_to_gauss(corpus::figure_eight());
  CHECK(g.canonical_form() == g.rotated({3}).canonical_form());
  GaussPhrase h = pd_to_gauss(corpus::hopf_positive());
  CHECK(h.canonical_form() == h.rotated({1, 0}).canonical_form());
  CHECK(h.canonical_form() == h.rotated({1, 1}).canonical_form());
}
