#pragma once

// Independent reference implementations for diagram-level tests: loop counts
// by explicit walking, and realizability by exhaustive search over local
// embeddings. Kept deliberately separate from the library code paths.

#include <array>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "linkhom/gauss.hpp"
#include "linkhom/pd.hpp"

namespace oracle {

// Count smoothing circles of a PD code by walking slot to slot: inside a
// crossing move to the smoothing partner, then follow the shared arc to its
// other occurrence. Smoothing 0 pairs slots (0,1)(2,3), smoothing 1 pairs
// (0,3)(1,2).
inline int loops_pd(const linkhom::PDCode& d, const std::vector<int>& state) {
  using Pos = std::pair<std::size_t, int>;  // (crossing, slot)
  std::map<int, std::vector<Pos>> occ;
  for (std::size_t c = 0; c < d.crossing_count(); ++c)
    for (int s = 0; s < 4; ++s) occ[d.crossing(c).e[s]].push_back({c, s});
  auto partner = [&](Pos p) -> Pos {
    static const int a_mate[4] = {1, 0, 3, 2};
    static const int b_mate[4] = {3, 2, 1, 0};
    int s = state[p.first] == 0 ? a_mate[p.second] : b_mate[p.second];
    return {p.first, s};
  };
  auto across = [&](Pos p) -> Pos {
    const auto& both = occ.at(d.crossing(p.first).e[p.second]);
    if (both.size() != 2) throw std::runtime_error("arc occurrence count");
    return both[0] == p ? both[1] : both[0];
  };
  std::set<Pos> seen;
  int circles = 0;
  for (std::size_t c = 0; c < d.crossing_count(); ++c)
    for (int s = 0; s < 4; ++s) {
      Pos start{c, s};
      if (seen.count(start)) continue;
      ++circles;
      Pos p = start;
      do {
        seen.insert(p);
        Pos q = partner(p);
        seen.insert(q);
        p = across(q);
      } while (p != start);
    }
  for (auto& cyc : d.components())
    if (cyc.empty()) ++circles;
  return circles;
}

// Same walk on the abstract 4-valent structure of a Gauss phrase. Each
// occurrence has an entry and an exit dart; the strand order inside each
// word supplies the arcs.
inline int loops_gauss(const linkhom::GaussPhrase& g, const std::vector<int>& state) {
  auto occs = g.occurrences();
  // darts: 4 per letter in tuple-slot convention
  auto enter = [&](const linkhom::GaussPhrase::Occ& o) {
    int sgn = g.letter(o.letter).sign;
    int slot = o.over ? (sgn > 0 ? 3 : 1) : 0;
    return static_cast<int>(4 * o.letter) + slot;
  };
  auto exit = [&](const linkhom::GaussPhrase::Occ& o) {
    int sgn = g.letter(o.letter).sign;
    int slot = o.over ? (sgn > 0 ? 1 : 3) : 2;
    return static_cast<int>(4 * o.letter) + slot;
  };
  std::map<int, int> arc;  // dart -> dart joined by a strand segment
  std::map<std::size_t, std::vector<linkhom::GaussPhrase::Occ>> by_word;
  for (auto& o : occs) by_word[o.word].push_back(o);
  int free_circles = 0;
  for (std::size_t w = 0; w < g.word_count(); ++w) {
    auto& os = by_word[w];
    if (os.empty()) {
      ++free_circles;
      continue;
    }
    for (std::size_t t = 0; t < os.size(); ++t) {
      int a = exit(os[t]), b = enter(os[(t + 1) % os.size()]);
      arc[a] = b;
      arc[b] = a;
    }
  }
  auto partner = [&](int dart) {
    static const int a_mate[4] = {1, 0, 3, 2};
    static const int b_mate[4] = {3, 2, 1, 0};
    int letter = dart / 4, slot = dart % 4;
    return 4 * letter + (state[letter] == 0 ? a_mate[slot] : b_mate[slot]);
  };
  std::set<int> seen;
  int circles = 0;
  for (std::size_t l = 0; l < g.letter_count(); ++l)
    for (int s = 0; s < 4; ++s) {
      int start = static_cast<int>(4 * l) + s;
      if (seen.count(start)) continue;
      ++circles;
      int p = start;
      do {
        seen.insert(p);
        int q = partner(p);
        seen.insert(q);
        p = arc.at(q);
      } while (p != start);
    }
  return circles + free_circles;
}

// Exhaustive embedding search. Each crossing admits two transversal local
// pictures; a choice induces a sign and a rotation. The phrase is planar
// exactly when some choice both reproduces the declared signs and closes up
// with Euler characteristic 2 on every connected piece. Since matching the
// signs pins each local picture, the search doubles as an independent check
// of the face-tracing bookkeeping.
inline bool realizable_search(const linkhom::GaussPhrase& g) {
  std::size_t n = g.letter_count();
  if (n == 0) return true;
  auto occs = g.occurrences();
  std::map<std::size_t, std::vector<linkhom::GaussPhrase::Occ>> by_word;
  for (auto& o : occs) by_word[o.word].push_back(o);
  for (unsigned long long pick = 0; pick < (1ull << n); ++pick) {
    // local picture per letter: bit 0 puts the over-out at rotation slot 1
    // (the positive picture), bit 1 at slot 3
    bool ok = true;
    for (std::size_t l = 0; l < n && ok; ++l) {
      int induced = (pick >> l) & 1 ? -1 : 1;
      if (induced != g.letter(l).sign) ok = false;
    }
    if (!ok) continue;
    // build darts under this choice
    auto enter = [&](const linkhom::GaussPhrase::Occ& o) {
      bool pos_pic = !((pick >> o.letter) & 1);
      int slot = o.over ? (pos_pic ? 3 : 1) : 0;
      return static_cast<int>(4 * o.letter) + slot;
    };
    auto exit = [&](const linkhom::GaussPhrase::Occ& o) {
      bool pos_pic = !((pick >> o.letter) & 1);
      int slot = o.over ? (pos_pic ? 1 : 3) : 2;
      return static_cast<int>(4 * o.letter) + slot;
    };
    std::map<int, int> other;
    for (std::size_t w = 0; w < g.word_count(); ++w) {
      auto& os = by_word[w];
      for (std::size_t t = 0; t < os.size(); ++t) {
        int a = exit(os[t]), b = enter(os[(t + 1) % os.size()]);
        other[a] = b;
        other[b] = a;
      }
    }
    // faces of the rotation system
    std::set<int> seen;
    long long faces = 0;
    for (std::size_t l = 0; l < n; ++l)
      for (int s = 0; s < 4; ++s) {
        int start = static_cast<int>(4 * l) + s;
        if (seen.count(start)) continue;
        ++faces;
        int dart = start;
        do {
          seen.insert(dart);
          int crossed = other.at(dart);
          dart = (crossed / 4) * 4 + (crossed + 1) % 4;
        } while (dart != start);
      }
    // connected pieces of the crossing graph
    std::map<std::size_t, std::size_t> up;
    for (std::size_t l = 0; l < n; ++l) up[l] = l;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return up[x] == x ? x : up[x] = find(up[x]);
    };
    for (auto& [a, b] : other) up[find(a / 4)] = find(b / 4);
    std::set<std::size_t> pieces;
    for (std::size_t l = 0; l < n; ++l) pieces.insert(find(l));
    if (faces - static_cast<long long>(n) == 2 * static_cast<long long>(pieces.size())) return true;
  }
  return false;
}

}  // namespace oracle
