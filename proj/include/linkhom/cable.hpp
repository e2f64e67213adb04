#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <set>
#include <vector>

#include "linkhom/numeric.hpp"
#include "linkhom/pd.hpp"

namespace linkhom {

// How colored operations treat the input diagram's framing: blackboard takes
// the diagram as the 0-framed representative as drawn; normalize inserts
// compensating kinks first so every self-writhe vanishes.
enum class FramingPolicy { blackboard, normalize };

namespace detail {

// Remove the marked components. A crossing loses its partner strand when the
// partner is removed, so its in and out arcs merge; crossings fully inside a
// removed component vanish.
inline PDCode delete_components(const PDCode& d, const std::vector<bool>& kill) {
  if (kill.size() != d.component_count()) throw validation_error("kill mask length");
  std::map<int, int> up;
  auto find = [&](int a) {
    if (!up.count(a)) return a;
    while (up[a] != a) a = up[a] = up[up[a]];
    return a;
  };
  auto join = [&](int a, int b) {
    if (!up.count(a)) up[a] = a;
    if (!up.count(b)) up[b] = b;
    a = find(a);
    b = find(b);
    if (a != b) up[std::max(a, b)] = std::min(a, b);
  };
  std::vector<std::array<int, 4>> tuples;
  std::vector<int> signs;
  for (std::size_t ci = 0; ci < d.crossing_count(); ++ci) {
    const auto& c = d.crossing(ci);
    bool under_k = kill[d.component_of_arc(c.e[0])];
    bool over_k = kill[d.component_of_arc(PDCode::over_in(c))];
    if (under_k && over_k) continue;
    if (under_k) {
      join(PDCode::over_in(c), PDCode::over_out(c));
      continue;
    }
    if (over_k) {
      join(c.e[0], c.e[2]);
      continue;
    }
    tuples.push_back(c.e);
    signs.push_back(c.sign);
  }
  for (auto& t : tuples)
    for (auto& a : t) a = find(a);
  std::set<int> used;
  for (auto& t : tuples)
    for (int a : t) used.insert(a);
  std::vector<std::vector<int>> comps;
  for (std::size_t k = 0; k < d.component_count(); ++k) {
    if (kill[k]) continue;
    std::vector<int> cyc;
    for (int a : d.components()[k]) {
      int r = find(a);
      if (cyc.empty() || cyc.back() != r) cyc.push_back(r);
    }
    while (cyc.size() > 1 && cyc.front() == cyc.back()) cyc.pop_back();
    bool any_used = false;
    for (int a : cyc) any_used |= used.count(a) > 0;
    if (!any_used) cyc.clear();
    comps.push_back(std::move(cyc));
  }
  return PDCode::from_data(std::move(tuples), std::move(comps), signs);
}

}  // namespace detail

// Blackboard-framed cable: component k is replaced by m[k] parallel copies,
// indexed left to right when facing along the strand. Every crossing between
// components of multiplicity M (under) and N (over) becomes an M*N grid.
// Copies of component k appear as consecutive output components, groups in
// the original order; m[k] = 0 removes the component.
inline PDCode cable(const PDCode& d0, const std::vector<int>& m0) {
  if (m0.size() != d0.component_count()) throw validation_error("multiplicity length");
  for (int v : m0)
    if (v < 0) throw validation_error("multiplicity must be nonnegative");
  std::vector<bool> kill;
  std::vector<int> m;
  for (int v : m0) kill.push_back(v == 0);
  for (int v : m0)
    if (v > 0) m.push_back(v);
  PDCode d = detail::delete_components(d0, kill);

  int next = 0;
  std::map<int, std::vector<int>> copies;
  for (std::size_t k = 0; k < d.component_count(); ++k)
    for (int a : d.components()[k]) {
      auto& v = copies[a];
      for (int t = 0; t < m[k]; ++t) v.push_back(++next);
    }

  // head role of each arc: the crossing that consumes it, and the pass
  std::map<int, std::pair<std::size_t, bool>> head;  // arc -> (crossing, over?)
  for (std::size_t ci = 0; ci < d.crossing_count(); ++ci) {
    const auto& c = d.crossing(ci);
    head[c.e[0]] = {ci, false};
    head[PDCode::over_in(c)] = {ci, true};
  }

  // Per crossing: arcs along each under line (south to north) and each over
  // line (travel order). Boundary entries are arc copies, interior fresh.
  // Under copy u sits at horizontal position u west to east; for a positive
  // crossing the over strand runs west to east with copy 0 northmost, for a
  // negative one east to west with copy 0 southmost.
  std::vector<std::vector<std::vector<int>>> under_arcs(d.crossing_count());
  std::vector<std::vector<std::vector<int>>> over_arcs(d.crossing_count());
  std::vector<std::array<int, 4>> tuples;
  std::vector<int> signs;
  for (std::size_t ci = 0; ci < d.crossing_count(); ++ci) {
    const auto& c = d.crossing(ci);
    int M = m[d.component_of_arc(c.e[0])];
    int N = m[d.component_of_arc(PDCode::over_in(c))];
    under_arcs[ci].assign(M, {});
    over_arcs[ci].assign(N, {});
    for (int u = 0; u < M; ++u) {
      auto& line = under_arcs[ci][u];
      line.push_back(copies[c.e[0]][u]);
      for (int t = 1; t < N; ++t) line.push_back(++next);
      line.push_back(copies[c.e[2]][u]);
    }
    for (int v = 0; v < N; ++v) {
      auto& line = over_arcs[ci][v];
      line.push_back(copies[PDCode::over_in(c)][v]);
      for (int t = 1; t < M; ++t) line.push_back(++next);
      line.push_back(copies[PDCode::over_out(c)][v]);
    }
    for (int u = 0; u < M; ++u)
      for (int v = 0; v < N; ++v) {
        if (c.sign > 0)
          tuples.push_back({under_arcs[ci][u][N - 1 - v], over_arcs[ci][v][u + 1],
                            under_arcs[ci][u][N - v], over_arcs[ci][v][u]});
        else
          tuples.push_back({under_arcs[ci][u][v], over_arcs[ci][v][M - 1 - u],
                            under_arcs[ci][u][v + 1], over_arcs[ci][v][M - u]});
        signs.push_back(c.sign);
      }
  }

  std::vector<std::vector<int>> comps;
  for (std::size_t k = 0; k < d.component_count(); ++k)
    for (int t = 0; t < m[k]; ++t) {
      std::vector<int> cyc;
      for (int a : d.components()[k]) {
        cyc.push_back(copies[a][t]);
        auto [ci, over] = head.at(a);
        const auto& line = over ? over_arcs[ci][t] : under_arcs[ci][t];
        for (std::size_t p = 1; p + 1 < line.size(); ++p) cyc.push_back(line[p]);
      }
      comps.push_back(std::move(cyc));
    }
  return PDCode::from_data(std::move(tuples), std::move(comps), signs);
}

// Strand flip mask for a cabled diagram: copy t of a component reverses when
// t is odd, the whole group additionally reversing when the underlying
// component does. comp_flip empty means the orientation as drawn.
inline std::vector<bool> cable_orientation(const std::vector<int>& m,
                                           const std::vector<bool>& comp_flip = {}) {
  if (!comp_flip.empty() && comp_flip.size() != m.size())
    throw validation_error("orientation mask length must match the multiplicities");
  std::vector<bool> flip;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (int t = 0; t < m[i]; ++t)
      flip.push_back((t % 2 == 1) != (!comp_flip.empty() && comp_flip[i]));
  return flip;
}

// Alternate strand directions within each parallel group, first copy keeping
// the original direction. m is the multiplicity vector handed to cable().
inline PDCode orient_cable(const PDCode& cabled, const std::vector<int>& m) {
  std::vector<bool> flip = cable_orientation(m);
  if (flip.size() != cabled.component_count())
    throw validation_error("multiplicities do not match the cabled diagram");
  return cabled.reversed(flip);
}

// Kinks of the compensating sign right after each component's first arc
// until every self-writhe vanishes.
inline PDCode normalize_framing(const PDCode& d) {
  PDCode out = d;
  for (std::size_t k = 0; k < out.component_count(); ++k) {
    int w = out.self_writhe(k);
    if (w == 0) continue;
    int sgn = w > 0 ? -1 : 1;
    int arc = out.components()[k].front();
    for (int t = 0; t < std::abs(w); ++t) {
      out = out.with_kink(arc, sgn);
      arc = out.max_arc_label();
    }
  }
  return out;
}

}  // namespace linkhom
