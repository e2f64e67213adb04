#pragma once

#include <cstdlib>
#include <map>
#include <vector>

#include "linkhom/numeric.hpp"
#include "linkhom/pd.hpp"

namespace linkhom {

// Closure of a braid word on the given number of strands. Word entries are
// +-g for generator sigma_g (1-based); positive means the right strand
// passes over. Strands travel downward; closure joins bottom position k back
// to top position k. Free strands close into crossing-free circles.
inline PDCode braid_closure(int strands, const std::vector<int>& word) {
  if (strands <= 0) throw validation_error("braid needs at least one strand");
  int next = 0;
  std::vector<int> start(strands), cur(strands);
  std::vector<std::size_t> strand_at(strands);      // which strand sits at each position
  std::vector<std::vector<int>> arcs(strands);      // arc journey per strand
  for (int p = 0; p < strands; ++p) {
    start[p] = cur[p] = ++next;
    strand_at[p] = p;
    arcs[p].push_back(start[p]);
  }
  std::vector<std::array<int, 4>> tuples;
  std::vector<int> signs;
  for (int g : word) {
    int i = std::abs(g) - 1;
    if (g == 0 || i + 1 >= strands) throw validation_error("braid generator out of range");
    int a = cur[i], b = cur[i + 1];
    int left_out = ++next, right_out = ++next;
    if (g > 0)
      tuples.push_back({a, left_out, right_out, b});
    else
      tuples.push_back({b, a, left_out, right_out});
    signs.push_back(g > 0 ? 1 : -1);
    // the strand entering on the left leaves on the right
    arcs[strand_at[i]].push_back(right_out);
    arcs[strand_at[i + 1]].push_back(left_out);
    std::swap(strand_at[i], strand_at[i + 1]);
    cur[i] = left_out;
    cur[i + 1] = right_out;
  }
  // closure: the last arc of the strand ending at position p is the arc that
  // started at position p
  std::map<int, int> rename;
  for (int p = 0; p < strands; ++p) {
    std::size_t s = strand_at[p];
    if (arcs[s].size() > 1) rename[start[p]] = arcs[s].back();
  }
  for (auto& t : tuples)
    for (auto& x : t) {
      auto it = rename.find(x);
      if (it != rename.end()) x = it->second;
    }
  // components follow the strand permutation
  std::vector<int> ends_at(strands);  // strand s stops at position ends_at[s]
  for (int p = 0; p < strands; ++p) ends_at[strand_at[p]] = p;
  std::vector<bool> seen(strands, false);
  std::vector<std::vector<int>> comps;
  for (int p0 = 0; p0 < strands; ++p0) {
    if (seen[p0]) continue;
    std::vector<int> cyc;
    int p = p0;
    do {
      seen[p] = true;
      for (std::size_t t = 1; t < arcs[p].size(); ++t) cyc.push_back(arcs[p][t]);
      p = ends_at[p];
    } while (p != p0);
    comps.push_back(std::move(cyc));
  }
  return PDCode::from_data(std::move(tuples), std::move(comps), signs);
}

}  // namespace linkhom
