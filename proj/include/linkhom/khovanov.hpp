#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "linkhom/budget.hpp"
#include "linkhom/chain.hpp"
#include "linkhom/gauss.hpp"
#include "linkhom/laurent.hpp"
#include "linkhom/loops.hpp"
#include "linkhom/numeric.hpp"
#include "linkhom/pd.hpp"

namespace linkhom {

// One hypercube edge: flipping `crossing` from 0 to 1 in state `from`. The
// flip either merges two circles of `from` into one circle of `to` or splits
// one circle of `from` into two. Circles untouched by the flip map across via
// `image`; the circles taking part are recorded separately and their `image`
// slots hold the merge target resp. -1.
struct CubeEdge {
  std::size_t from = 0, to = 0;  // state bit masks
  std::size_t crossing = 0;
  int sign = 1;  // (-1)^{number of 1-bits of `from` below `crossing`}
  bool is_merge = true;
  int merge_a = -1, merge_b = -1, merge_into = -1;
  int split_src = -1, split_a = -1, split_b = -1;
  std::vector<int> image;
};

struct ResolutionCube {
  std::size_t crossings = 0;
  std::vector<Smoothing> vertex;  // indexed by state mask
  std::vector<CubeEdge> edges;    // ordered by (from, crossing)
};

namespace detail {

inline std::vector<int> mask_state(std::size_t mask, std::size_t crossings) {
  std::vector<int> st(crossings, 0);
  for (std::size_t c = 0; c < crossings; ++c)
    if (mask >> c & 1) st[c] = 1;
  return st;
}

}  // namespace detail

inline ResolutionCube resolution_cube(const PDCode& d, const Budgets& budgets = default_budgets()) {
  ResolutionCube cube;
  cube.crossings = d.crossing_count();
  std::size_t n = cube.crossings;
  std::size_t free_loops = 0;
  for (auto& cyc : d.components())
    if (cyc.empty()) ++free_loops;
  check_homology_budget(n, budgets, free_loops);
  cube.vertex.reserve(std::size_t(1) << n);
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask)
    cube.vertex.push_back(resolve(d, detail::mask_state(mask, n)));
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    const Smoothing& su = cube.vertex[mask];
    std::size_t nonfree_u = su.loops - free_loops;
    for (std::size_t cx = 0; cx < n; ++cx) {
      if (mask >> cx & 1) continue;
      CubeEdge e;
      e.from = mask;
      e.to = mask | (std::size_t(1) << cx);
      e.crossing = cx;
      e.sign = std::popcount(mask & ((std::size_t(1) << cx) - 1)) % 2 == 0 ? 1 : -1;
      const Smoothing& sv = cube.vertex[e.to];
      std::size_t nonfree_v = sv.loops - free_loops;

      bool in_u[2] = {false, false}, in_v[2] = {false, false};
      int lu[2] = {-1, -1}, lv[2] = {-1, -1};
      int cu = 0, cv = 0;
      for (std::size_t s = 0; s < 4; ++s) {
        int a = su.loop_at[cx][s];
        if (!(in_u[0] && lu[0] == a) && !(in_u[1] && lu[1] == a)) {
          lu[cu] = a;
          in_u[cu++] = true;
        }
        int b = sv.loop_at[cx][s];
        if (!(in_v[0] && lv[0] == b) && !(in_v[1] && lv[1] == b)) {
          lv[cv] = b;
          in_v[cv++] = true;
        }
      }
      if (cu == 2 && cv == 1) {
        e.is_merge = true;
        e.merge_a = std::min(lu[0], lu[1]);
        e.merge_b = std::max(lu[0], lu[1]);
        e.merge_into = lv[0];
      } else if (cu == 1 && cv == 2) {
        e.is_merge = false;
        e.split_src = lu[0];
        e.split_a = std::min(lv[0], lv[1]);
        e.split_b = std::max(lv[0], lv[1]);
      } else {
        throw not_realizable("a smoothing change neither merges nor splits circles");
      }

      e.image.assign(su.loops, -1);
      if (e.is_merge) e.image[e.merge_a] = e.image[e.merge_b] = e.merge_into;
      // untouched circles through crossings: match via any dart away from cx
      for (std::size_t c = 0; c < n; ++c) {
        if (c == cx) continue;
        for (std::size_t s = 0; s < 4; ++s) {
          int a = su.loop_at[c][s];
          if (a != lu[0] && a != lu[1] && e.image[a] < 0) e.image[a] = sv.loop_at[c][s];
        }
      }
      // crossing-free circles sit at the tail in both states, in one order
      for (std::size_t k = 0; k < free_loops; ++k)
        e.image[nonfree_u + k] = static_cast<int>(nonfree_v + k);
      cube.edges.push_back(std::move(e));
    }
  }
  return cube;
}

namespace detail {

// Enumerate the matrix entries the cube induces on enhanced states. Label
// masks have bit k set when circle k carries x. `emit` receives
// (edge, labels_from, labels_to, coefficient, deformation) where deformation
// marks the two extra Lee rules m(x,x) = 1 and "split adds 1,1 from x"; plain
// Khovanov entries pass deformation = false. Entries are emitted in
// (edge order, source label order).
template <class F>
inline void cube_entries(const ResolutionCube& cube, bool with_deformation, F&& emit) {
  for (const CubeEdge& e : cube.edges) {
    const Smoothing& su = cube.vertex[e.from];
    std::uint64_t lim = std::uint64_t(1) << su.loops;
    for (std::uint64_t lam = 0; lam < lim; ++lam) {
      std::uint64_t carried = 0;
      for (int l = 0; l < su.loops; ++l)
        if ((lam >> l & 1) && e.image[l] >= 0 && !(e.is_merge && (l == e.merge_a || l == e.merge_b)))
          carried |= std::uint64_t(1) << e.image[l];
      if (e.is_merge) {
        bool xa = lam >> e.merge_a & 1, xb = lam >> e.merge_b & 1;
        if (xa && xb) {
          if (with_deformation) emit(e, lam, carried, e.sign, true);
        } else {
          std::uint64_t out = carried;
          if (xa || xb) out |= std::uint64_t(1) << e.merge_into;
          emit(e, lam, out, e.sign, false);
        }
      } else {
        bool xs = lam >> e.split_src & 1;
        std::uint64_t ba = std::uint64_t(1) << e.split_a, bb = std::uint64_t(1) << e.split_b;
        if (xs) {
          emit(e, lam, carried | ba | bb, e.sign, false);
          if (with_deformation) emit(e, lam, carried, e.sign, true);
        } else {
          emit(e, lam, carried | ba, e.sign, false);
          emit(e, lam, carried | bb, e.sign, false);
        }
      }
    }
  }
}

}  // namespace detail

// Integral Khovanov complex. Enhanced states are ordered by (state mask,
// label mask), both ascending; within each homological degree this is also
// the generator order of `complex`.
struct KhovanovComplex {
  ResolutionCube cube;
  int n_plus = 0, n_minus = 0;
  std::vector<std::size_t> block_start;  // per mask: first in-degree index of its label block
  CochainComplex complex;

  int i_of(std::size_t mask) const {
    return std::popcount(static_cast<std::uint64_t>(mask)) - n_minus;
  }
  int j_of(std::size_t mask, std::uint64_t labels) const {
    int r = std::popcount(static_cast<std::uint64_t>(mask));
    int minus = std::popcount(labels);
    return cube.vertex[mask].loops - 2 * minus + r + n_plus - 2 * n_minus;
  }
  std::size_t index_of(std::size_t mask, std::uint64_t labels) const {
    return block_start[mask] + labels;
  }
  std::size_t dim() const {
    std::size_t t = 0;
    for (auto& v : cube.vertex) t += std::size_t(1) << v.loops;
    return t;
  }
};

inline KhovanovComplex khovanov_complex(const PDCode& d,
                                        const Budgets& budgets = default_budgets()) {
  KhovanovComplex kc;
  kc.cube = resolution_cube(d, budgets);
  kc.n_plus = d.positive_count();
  kc.n_minus = d.negative_count();
  std::size_t states = std::size_t(1) << kc.cube.crossings;
  kc.block_start.assign(states, 0);
  std::vector<std::size_t> per_degree_count;  // indexed by popcount
  per_degree_count.assign(kc.cube.crossings + 1, 0);
  for (std::size_t mask = 0; mask < states; ++mask) {
    int r = std::popcount(static_cast<std::uint64_t>(mask));
    kc.block_start[mask] = per_degree_count[r];
    std::uint64_t lim = std::uint64_t(1) << kc.cube.vertex[mask].loops;
    per_degree_count[r] += lim;
    for (std::uint64_t lam = 0; lam < lim; ++lam)
      kc.complex.add_generator(kc.i_of(mask), {kc.j_of(mask, lam)});
  }
  detail::cube_entries(kc.cube, false,
                       [&](const CubeEdge& e, std::uint64_t lam, std::uint64_t out, int sign, bool) {
                         kc.complex.add_diff(kc.i_of(e.from), kc.index_of(e.from, lam),
                                             kc.index_of(e.to, out), sign);
                       });
  return kc;
}

inline HomologyTable khovanov_homology(const PDCode& d, const Budgets& budgets = default_budgets()) {
  return khovanov_complex(d, budgets).complex.homology();
}

inline Laurent jones_from_euler(const HomologyTable& t) { return t.graded_euler(); }

inline Laurent jones_from_euler(const KhovanovComplex& kc) {
  return kc.complex.graded_euler_from_dims();
}

namespace detail {

// State sum with a flat union-find per state; loop counts land in a small
// (r, loops) table so polynomial work is independent of the state count.
inline Laurent bracket_sum(std::size_t crossings,
                           const std::vector<std::pair<std::size_t, std::size_t>>& arc_ends,
                           std::size_t free_loops, int n_plus, int n_minus) {
  std::size_t nd = 4 * crossings;
  std::vector<std::size_t> parent(nd);
  std::vector<std::vector<std::int64_t>> table;  // table[r][loops] = state count
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t mask = 0; mask < (std::size_t(1) << crossings); ++mask) {
    for (std::size_t i = 0; i < nd; ++i) parent[i] = i;
    auto join = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
    for (auto& [a, b] : arc_ends) join(a, b);
    for (std::size_t c = 0; c < crossings; ++c) {
      if (mask >> c & 1) {
        join(4 * c + 0, 4 * c + 3);
        join(4 * c + 1, 4 * c + 2);
      } else {
        join(4 * c + 0, 4 * c + 1);
        join(4 * c + 2, 4 * c + 3);
      }
    }
    std::size_t loops = free_loops;
    for (std::size_t i = 0; i < nd; ++i)
      if (find(i) == i) ++loops;
    std::size_t r = static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(mask)));
    if (table.size() <= r) table.resize(r + 1);
    if (table[r].size() <= loops) table[r].resize(loops + 1, 0);
    table[r][loops]++;
  }
  Laurent circle = Laurent::q(1) + Laurent::q(-1);
  Laurent sum;
  for (std::size_t r = 0; r < table.size(); ++r)
    for (std::size_t loops = 0; loops < table[r].size(); ++loops)
      if (std::int64_t cnt = table[r][loops]) {
        Laurent term = circle.pow(static_cast<int>(loops)).shifted(static_cast<int>(r));
        if (r % 2) cnt = -cnt;
        sum += term * Laurent(cnt);
      }
  int sgn = n_minus % 2 ? -1 : 1;
  return (sum * Laurent(sgn)).shifted(n_plus - 2 * n_minus);
}

}  // namespace detail

// Unreduced Jones polynomial straight from the Kauffman state sum,
// J(unknot) = q + 1/q. Works for any signed code, planar or not.
inline Laurent kauffman_bracket_jones(const PDCode& d, const Budgets& budgets = default_budgets()) {
  std::vector<std::pair<std::size_t, std::size_t>> arc_ends;
  std::map<int, std::size_t> first_dart;
  std::size_t free_loops = 0;
  for (auto& cyc : d.components())
    if (cyc.empty()) ++free_loops;
  check_bracket_budget(d.crossing_count(), budgets, free_loops);
  for (std::size_t c = 0; c < d.crossing_count(); ++c)
    for (std::size_t s = 0; s < 4; ++s) {
      int a = d.crossing(c).e[s];
      auto it = first_dart.find(a);
      if (it == first_dart.end())
        first_dart[a] = 4 * c + s;
      else
        arc_ends.push_back({it->second, 4 * c + s});
    }
  return detail::bracket_sum(d.crossing_count(), arc_ends, free_loops, d.positive_count(),
                             d.negative_count());
}

inline Laurent kauffman_bracket_jones(const GaussPhrase& g,
                                      const Budgets& budgets = default_budgets()) {
  auto s = detail::structure_of(g);
  check_bracket_budget(g.letter_count(), budgets, s.free_loops.size());
  int n_plus = 0, n_minus = 0;
  for (std::size_t i = 0; i < g.letter_count(); ++i)
    (g.letter(i).sign > 0 ? n_plus : n_minus)++;
  return detail::bracket_sum(s.letters, s.arc_ends, s.free_loops.size(), n_plus, n_minus);
}

}  // namespace linkhom
