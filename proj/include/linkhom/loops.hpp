#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <vector>

#include "linkhom/gauss.hpp"
#include "linkhom/numeric.hpp"
#include "linkhom/pd.hpp"

namespace linkhom {

// State circles of one complete smoothing. Slot indices follow the PD tuple
// convention; smoothing 0 joins slots (0,1) and (2,3) of a crossing,
// smoothing 1 joins (0,3) and (1,2). Crossing-free components keep one circle
// each, listed after the circles that touch crossings.
struct Smoothing {
  int loops = 0;
  std::vector<std::array<int, 4>> loop_at;  // circle id per (crossing, slot)

  int circle(std::size_t crossing, std::size_t slot) const { return loop_at.at(crossing)[slot]; }
};

namespace detail {

inline Smoothing resolve_darts(std::size_t crossings,
                               const std::vector<std::pair<std::size_t, std::size_t>>& arc_ends,
                               std::size_t free_loops, const std::vector<int>& state) {
  if (state.size() != crossings) throw validation_error("state length must match crossing count");
  for (int s : state)
    if (s != 0 && s != 1) throw validation_error("state entries must be 0 or 1");
  DSU dsu(4 * crossings);
  for (auto& [a, b] : arc_ends) dsu.join(a, b);
  for (std::size_t c = 0; c < crossings; ++c) {
    if (state[c] == 0) {
      dsu.join(4 * c + 0, 4 * c + 1);
      dsu.join(4 * c + 2, 4 * c + 3);
    } else {
      dsu.join(4 * c + 0, 4 * c + 3);
      dsu.join(4 * c + 1, 4 * c + 2);
    }
  }
  Smoothing out;
  std::map<std::size_t, int> id;
  out.loop_at.assign(crossings, {0, 0, 0, 0});
  for (std::size_t c = 0; c < crossings; ++c)
    for (std::size_t s = 0; s < 4; ++s) {
      std::size_t root = dsu.find(4 * c + s);
      auto it = id.find(root);
      if (it == id.end()) it = id.emplace(root, static_cast<int>(id.size())).first;
      out.loop_at[c][s] = it->second;
    }
  out.loops = static_cast<int>(id.size() + free_loops);
  return out;
}

}  // namespace detail

inline Smoothing resolve(const PDCode& d, const std::vector<int>& state) {
  std::vector<std::pair<std::size_t, std::size_t>> arc_ends;
  std::map<int, std::size_t> first_dart;
  std::size_t free_loops = 0;
  for (auto& cyc : d.components())
    if (cyc.empty()) ++free_loops;
  for (std::size_t c = 0; c < d.crossing_count(); ++c)
    for (std::size_t s = 0; s < 4; ++s) {
      int a = d.crossing(c).e[s];
      auto it = first_dart.find(a);
      if (it == first_dart.end())
        first_dart[a] = 4 * c + s;
      else
        arc_ends.push_back({it->second, 4 * c + s});
    }
  return detail::resolve_darts(d.crossing_count(), arc_ends, free_loops, state);
}

inline Smoothing resolve(const GaussPhrase& g, const std::vector<int>& state) {
  auto s = detail::structure_of(g);
  return detail::resolve_darts(s.letters, s.arc_ends, s.free_loops.size(), state);
}

inline int count_loops(const PDCode& d, const std::vector<int>& state) {
  return resolve(d, state).loops;
}

inline int count_loops(const GaussPhrase& g, const std::vector<int>& state) {
  return resolve(g, state).loops;
}

}  // namespace linkhom
