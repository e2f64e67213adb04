#pragma once

// Textbook page ranks and class degrees for a filtered cochain complex,
// computed by dense rational linear algebra. Used to cross-check the sparse
// cancellation engine.
//
// Conventions: decreasing filtration F_p = span of generators with level
// >= p; the differential raises degree by 1 and never lowers the level.
//   Z_r(p, n) = {z in F_p C^n : d z in F_{p+r}}
//   E_r(p, n) = Z_r(p, n) / (Z_{r-1}(p+1, n) + d Z_{r-1}(p-r+1, n-1))
// with Z_{-1}(q, n) read as F_q C^n.

#include <cstddef>
#include <map>
#include <tuple>
#include <vector>

#include "support/rational_oracle.hpp"

namespace testsupport {

struct FilteredModel {
  std::vector<std::pair<int, int>> gens;  // (deg, filt)
  std::vector<std::tuple<std::size_t, std::size_t, Rat>> entries;  // from, to, coeff

  std::vector<std::size_t> degree_gens(int n) const {
    std::vector<std::size_t> v;
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (gens[g].first == n) v.push_back(g);
    return v;
  }

  // d of a vector given in coordinates on degree_gens(n); result in
  // coordinates on degree_gens(n + 1)
  RVec apply_d(const RVec& x, int n) const {
    auto src = degree_gens(n), dst = degree_gens(n + 1);
    std::map<std::size_t, std::size_t> spos, dpos;
    for (std::size_t i = 0; i < src.size(); ++i) spos[src[i]] = i;
    for (std::size_t i = 0; i < dst.size(); ++i) dpos[dst[i]] = i;
    RVec y(dst.size(), Rat(0));
    for (auto& [f, t, c] : entries) {
      auto itf = spos.find(f);
      if (itf == spos.end()) continue;
      y[dpos.at(t)] += c * x[itf->second];
    }
    return y;
  }
};

// basis of Z_r(p, n) in coordinates on degree_gens(n); r = -1 means F_p C^n
inline RMat cycle_space(const FilteredModel& m, int r, int p, int n) {
  auto src = m.degree_gens(n);
  RMat basis;
  if (r < 0) {
    for (std::size_t i = 0; i < src.size(); ++i)
      if (m.gens[src[i]].second >= p) {
        RVec v(src.size(), Rat(0));
        v[i] = 1;
        basis.push_back(std::move(v));
      }
    return basis;
  }
  // unknowns: coefficients on F_p gens; equations: coordinates of d below
  // level p + r
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < src.size(); ++i)
    if (m.gens[src[i]].second >= p) cols.push_back(i);
  auto dst = m.degree_gens(n + 1);
  RMat dimg;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    RVec unit(src.size(), Rat(0));
    unit[cols[k]] = 1;
    dimg.push_back(m.apply_d(unit, n));
  }
  RMat eq;
  for (std::size_t j = 0; j < dst.size(); ++j) {
    if (m.gens[dst[j]].second >= p + r) continue;
    RVec row(cols.size(), Rat(0));
    for (std::size_t k = 0; k < cols.size(); ++k) row[k] = dimg[k][j];
    eq.push_back(std::move(row));
  }
  for (auto& sol : nullspace(eq, cols.size())) {
    RVec v(src.size(), Rat(0));
    for (std::size_t k = 0; k < cols.size(); ++k) v[cols[k]] = sol[k];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline long long page_rank_oracle(const FilteredModel& m, int r, int p, int n) {
  RMat num = cycle_space(m, r, p, n);
  RMat den = cycle_space(m, r - 1, p + 1, n);
  for (auto& z : cycle_space(m, r - 1, p - r + 1, n - 1)) den.push_back(m.apply_d(z, n - 1));
  RMat stacked = den;
  std::size_t dden = rank_of(stacked);
  for (auto& z : num) stacked.push_back(z);
  // num contains den, so dim(num) = rank of the union
  return static_cast<long long>(rank_of(stacked)) - static_cast<long long>(dden);
}

// max p such that the class of z is hit from H(F_p); nullopt when z bounds
inline std::optional<int> class_degree_oracle(const FilteredModel& m, const RVec& z, int n) {
  auto prev = m.degree_gens(n - 1);
  RMat bdries;
  for (std::size_t i = 0; i < prev.size(); ++i) {
    RVec unit(prev.size(), Rat(0));
    unit[i] = 1;
    bdries.push_back(m.apply_d(unit, n - 1));
  }
  if (in_span(bdries, z)) return std::nullopt;
  std::optional<int> best;
  for (int p = -40; p <= 40; ++p) {
    RMat span = bdries;
    auto zp = cycle_space(m, 40, p, n);  // huge r: genuine cycles inside F_p
    for (auto& v : zp) span.push_back(v);
    if (in_span(span, z)) best = p;
  }
  return best;
}

}  // namespace testsupport
