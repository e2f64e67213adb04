#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linkhom/budget.hpp"
#include "linkhom/cable.hpp"
#include "linkhom/khovanov.hpp"
#include "linkhom/numeric.hpp"
#include "linkhom/pd.hpp"
#include "linkhom/reduction.hpp"

namespace linkhom {

// Khovanov basis with the deformed differential d + Phi over Q, filtered by
// the quantum grading j. d keeps j, Phi raises it by 4; the reducer's page
// data is the induced spectral sequence.
struct LeeComplex {
  ResolutionCube cube;
  int n_plus = 0, n_minus = 0;
  std::vector<std::size_t> start;  // global index of (mask, labels = 0)
  std::size_t total = 0;
  FilteredReducer reducer;  // deg = i, filtration level = j

  int i_of(std::size_t mask) const {
    return std::popcount(static_cast<std::uint64_t>(mask)) - n_minus;
  }
  int j_of(std::size_t mask, std::uint64_t labels) const {
    int r = std::popcount(static_cast<std::uint64_t>(mask));
    return cube.vertex[mask].loops - 2 * std::popcount(labels) + r + n_plus - 2 * n_minus;
  }
  std::size_t index_of(std::size_t mask, std::uint64_t labels) const {
    return start[mask] + labels;
  }
  std::size_t dim() const { return total; }
};

inline LeeComplex lee_complex(const PDCode& d, const Budgets& budgets = default_budgets()) {
  LeeComplex lc;
  lc.cube = resolution_cube(d, budgets);
  lc.n_plus = d.positive_count();
  lc.n_minus = d.negative_count();
  std::size_t states = std::size_t(1) << lc.cube.crossings;
  lc.start.assign(states, 0);
  for (std::size_t mask = 0; mask < states; ++mask) {
    lc.start[mask] = lc.total;
    std::uint64_t lim = std::uint64_t(1) << lc.cube.vertex[mask].loops;
    for (std::uint64_t lam = 0; lam < lim; ++lam)
      lc.reducer.add_gen(lc.i_of(mask), lc.j_of(mask, lam));
    lc.total += lim;
  }
  detail::cube_entries(lc.cube, true,
                       [&](const CubeEdge& e, std::uint64_t lam, std::uint64_t out, int sign, bool) {
                         lc.reducer.add_entry(lc.index_of(e.from, lam), lc.index_of(e.to, out),
                                              sign);
                       });
  lc.reducer.validate();
  return lc;
}

struct LeeHomology {
  long long dimension = 0;
  std::vector<std::pair<int, int>> classes;  // (homological degree i, q-grading), sorted
};

inline LeeHomology lee_homology(const PDCode& d, const Budgets& budgets = default_budgets()) {
  LeeComplex lc = lee_complex(d, budgets);
  lc.reducer.reduce();
  LeeHomology out;
  for (auto& [key, count] : lc.reducer.limit_ranks()) {
    out.dimension += count;
    for (long long t = 0; t < count; ++t) out.classes.push_back({key.second, key.first});
  }
  std::sort(out.classes.begin(), out.classes.end());
  return out;
}

// Canonical Lee cycle for one orientation, written in the complex's own
// generator coordinates. `state` is the oriented resolution.
struct CanonicalChain {
  std::size_t state = 0;
  std::map<std::size_t, Rat> chain;
};

namespace detail {

inline std::vector<bool> resolve_flip(const PDCode& d, const std::vector<bool>& flip) {
  if (flip.empty()) return std::vector<bool>(d.component_count(), false);
  if (flip.size() != d.component_count())
    throw validation_error("orientation mask length must match the component count");
  return flip;
}

}  // namespace detail

// Build the canonical cycle of the orientation given by `flip` (component k
// reversed when flip[k]). The state is the oriented resolution; its circles
// get x + 1 or x - 1 by a proper two coloring of the circle adjacency graph,
// anchored per connected piece on the circle through the first arc of the
// lowest link component present. Expanding the product over circles gives the
// chain; the caller's reducer coordinates are used directly.
inline CanonicalChain canonical_chain(const LeeComplex& lc, const PDCode& d,
                                      const std::vector<bool>& flip_in = {}) {
  std::vector<bool> flip = detail::resolve_flip(d, flip_in);
  std::size_t n = d.crossing_count();
  if (lc.cube.crossings != n) throw internal_error("complex was built from a different diagram");

  CanonicalChain out;
  for (std::size_t c = 0; c < n; ++c) {
    const auto& cr = d.crossing(c);
    bool fu = flip[d.component_of_arc(cr.e[0])];
    bool fo = flip[d.component_of_arc(PDCode::over_in(cr))];
    int oriented_sign = (fu != fo) ? -cr.sign : cr.sign;
    if (oriented_sign < 0) out.state |= std::size_t(1) << c;
  }

  const Smoothing& sm = lc.cube.vertex[out.state];
  int loops = sm.loops;
  std::vector<std::size_t> free_comps;
  for (std::size_t k = 0; k < d.component_count(); ++k)
    if (d.components()[k].empty()) free_comps.push_back(k);
  int nonfree = loops - static_cast<int>(free_comps.size());

  // adjacency edges plus, per circle, the lowest link component through it
  std::vector<std::vector<int>> adj(loops);
  std::vector<std::size_t> low_comp(loops, d.component_count());
  std::vector<int> circle_of_first_arc(d.component_count(), -1);
  for (std::size_t c = 0; c < n; ++c) {
    int a = sm.loop_at[c][0], b = -1;
    for (std::size_t s = 1; s < 4; ++s)
      if (sm.loop_at[c][s] != a) b = sm.loop_at[c][s];
    if (b < 0) throw internal_error("oriented resolution circle meets itself at a crossing");
    adj[a].push_back(b);
    adj[b].push_back(a);
    for (std::size_t s = 0; s < 4; ++s) {
      std::size_t comp = d.component_of_arc(d.crossing(c).e[s]);
      int ci = sm.loop_at[c][s];
      low_comp[ci] = std::min(low_comp[ci], comp);
      if (d.components()[comp].front() == d.crossing(c).e[s] && circle_of_first_arc[comp] < 0)
        circle_of_first_arc[comp] = ci;
    }
  }
  for (std::size_t k = 0; k < free_comps.size(); ++k) {
    low_comp[nonfree + static_cast<int>(k)] = free_comps[k];
    circle_of_first_arc[free_comps[k]] = nonfree + static_cast<int>(k);
  }

  // a circle is type a (= x + 1) when colored like its piece's anchor and the
  // anchoring component keeps its direction; reversing the component swaps
  // the whole piece, which is the o <-> obar symmetry
  std::vector<int> type(loops, -1);  // 0 = a, 1 = b
  std::vector<char> seen(loops, 0);
  for (int c0 = 0; c0 < loops; ++c0) {
    if (seen[c0]) continue;
    std::vector<int> piece;
    std::deque<int> bfs{c0};
    seen[c0] = 1;
    while (!bfs.empty()) {
      int c = bfs.front();
      bfs.pop_front();
      piece.push_back(c);
      for (int nb : adj[c])
        if (!seen[nb]) {
          seen[nb] = 1;
          bfs.push_back(nb);
        }
    }
    std::size_t anchor_comp = d.component_count();
    for (int c : piece) anchor_comp = std::min(anchor_comp, low_comp[c]);
    int anchor = circle_of_first_arc[anchor_comp];
    type[anchor] = flip[anchor_comp] ? 1 : 0;
    std::deque<int> walk{anchor};
    while (!walk.empty()) {
      int c = walk.front();
      walk.pop_front();
      for (int nb : adj[c]) {
        if (type[nb] < 0) {
          type[nb] = 1 - type[c];
          walk.push_back(nb);
        } else if (type[nb] == type[c]) {
          throw internal_error("oriented resolution circles are not two colorable");
        }
      }
    }
  }

  // expand prod of (x + 1) and (x - 1): bit set = label x, sign counts the
  // type b circles labeled 1
  for (std::uint64_t lam = 0; lam < (std::uint64_t(1) << loops); ++lam) {
    int negs = 0;
    for (int c = 0; c < loops; ++c)
      if (type[c] == 1 && !(lam >> c & 1)) ++negs;
    out.chain[lc.index_of(out.state, lam)] = (negs % 2) ? Rat(-1) : Rat(1);
  }
  if (!lc.reducer.apply_original(out.chain).empty())
    throw internal_error("canonical chain is not a cycle");
  return out;
}

struct LeeClass {
  std::map<std::size_t, Rat> chain;  // in the generating complex's coordinates
  int q = 0;                         // filtration degree of the class
};

struct CanonicalGenerators {
  LeeClass s_o, s_obar;
  std::size_t state_o = 0, state_obar = 0;
};

inline CanonicalGenerators canonical_generators(const PDCode& d, const std::vector<bool>& o = {},
                                                const Budgets& budgets = default_budgets()) {
  std::vector<bool> flip = detail::resolve_flip(d, o);
  std::vector<bool> obar = flip;
  obar.flip();
  LeeComplex lc = lee_complex(d, budgets);
  CanonicalChain co = canonical_chain(lc, d, flip);
  CanonicalChain cb = canonical_chain(lc, d, obar);
  lc.reducer.reduce();
  CanonicalGenerators out;
  out.state_o = co.state;
  out.state_obar = cb.state;
  out.s_o.chain = std::move(co.chain);
  out.s_obar.chain = std::move(cb.chain);
  for (LeeClass* cl : {&out.s_o, &out.s_obar}) {
    auto lvl = lc.reducer.class_filtration(cl->chain);
    if (!lvl) throw internal_error("canonical class vanishes in Lee homology");
    cl->q = *lvl;
  }
  return out;
}

inline int s_knot(const PDCode& d, const Budgets& budgets = default_budgets()) {
  if (d.component_count() != 1)
    throw multi_component("s_knot needs a one component diagram; use s_link");
  LeeComplex lc = lee_complex(d, budgets);
  lc.reducer.reduce();
  std::optional<int> s_min;
  for (auto& [key, count] : lc.reducer.limit_ranks())
    if (count > 0 && (!s_min || key.first < *s_min)) s_min = key.first;
  if (!s_min) throw internal_error("Lee homology of a knot cannot vanish");
  return *s_min + 1;
}

// Which of the two averaging conventions to evaluate: `mean` is
// (deg(s_o + s_obar) + deg(s_o - s_obar)) / 2 and is the default; `printed`
// is the difference form, kept for comparison.
enum class SFormula { mean, printed };

inline int s_link(const PDCode& d, const std::vector<bool>& o = {},
                  SFormula formula = SFormula::mean, const Budgets& budgets = default_budgets()) {
  std::vector<bool> flip = detail::resolve_flip(d, o);
  PDCode oriented = d;
  bool any = false;
  for (bool f : flip) any = any || f;
  if (any) oriented = d.reversed(flip);

  LeeComplex lc = lee_complex(oriented, budgets);
  CanonicalChain co = canonical_chain(lc, oriented, {});
  CanonicalChain cb = canonical_chain(lc, oriented, std::vector<bool>(d.component_count(), true));
  lc.reducer.reduce();
  std::map<std::size_t, Rat> sum = co.chain, diff = co.chain;
  for (auto& [g, c] : cb.chain) {
    sum[g] += c;
    if (sum[g] == 0) sum.erase(g);
    diff[g] -= c;
    if (diff[g] == 0) diff.erase(g);
  }
  auto q_sum = lc.reducer.class_filtration(sum);
  auto q_diff = lc.reducer.class_filtration(diff);
  if (!q_sum || !q_diff)
    throw internal_error("s_o + s_obar and s_o - s_obar must be nonzero in Lee homology");
  long long v = formula == SFormula::mean ? (*q_sum + *q_diff) : (*q_sum - *q_diff);
  if (v % 2 != 0) throw internal_error("s formula did not produce an even sum");
  return static_cast<int>(v / 2);
}

struct ColoredRasmussenEntry {
  std::vector<int> k;
  std::vector<bool> flips;  // orientation o of the underlying link
  std::string orientation;  // same mask as +/- text, component order
  int s = 0;
  Int weighted;  // binom_product(n, k) * s
  bool empty_cable = false;
};

struct ColoredRasmussen {
  std::vector<int> n;
  FramingPolicy policy = FramingPolicy::blackboard;
  std::vector<ColoredRasmussenEntry> entries;
};

// The set {s(D^{n-2k}, o)} over 0 <= k <= n/2 and the 2^l orientations of
// the underlying link, cables carrying the alternating strand orientation.
inline ColoredRasmussen colored_rasmussen(const PDCode& d, const std::vector<int>& n,
                                          FramingPolicy policy = FramingPolicy::blackboard,
                                          SFormula formula = SFormula::mean,
                                          const Budgets& budgets = default_budgets()) {
  if (n.size() != d.component_count())
    throw validation_error("color vector length must match the component count");
  for (int v : n)
    if (v < 0) throw validation_error("colors must be nonnegative");
  PDCode base = policy == FramingPolicy::normalize ? normalize_framing(d) : d;
  std::size_t l = d.component_count();

  ColoredRasmussen out;
  out.n = n;
  out.policy = policy;
  std::vector<int> k(l, 0);
  while (true) {
    std::vector<int> m(l);
    bool empty_cable = true;
    for (std::size_t i = 0; i < l; ++i) {
      m[i] = n[i] - 2 * k[i];
      if (m[i] > 0) empty_cable = false;
    }
    Int weight = binom_product(n, k);
    PDCode cabled;
    if (!empty_cable) cabled = cable(base, m);
    for (std::size_t o = 0; o < (std::size_t(1) << l); ++o) {
      ColoredRasmussenEntry e;
      e.k = k;
      for (std::size_t i = 0; i < l; ++i) {
        e.flips.push_back(o >> i & 1);
        e.orientation += (o >> i & 1) ? '-' : '+';
      }
      e.empty_cable = empty_cable;
      if (empty_cable)
        e.s = 0;
      else
        e.s = s_link(cabled, cable_orientation(m, e.flips), formula, budgets);
      e.weighted = weight * e.s;
      out.entries.push_back(std::move(e));
    }
    std::size_t pos = 0;
    while (pos < l && 2 * (k[pos] + 1) > n[pos]) k[pos++] = 0;
    if (pos == l) break;
    k[pos]++;
  }
  return out;
}

}  // namespace linkhom
