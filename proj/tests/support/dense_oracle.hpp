#pragma once

// Small dense integer-matrix helpers used only by tests. These deliberately
// avoid the library's sparse elimination code so they can act as independent
// cross-checks on it.

#include <cstddef>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "linkhom/intmatrix.hpp"
#include "linkhom/numeric.hpp"

namespace testsupport {

using linkhom::Int;
using linkhom::IntMat;

using Dense = std::vector<std::vector<Int>>;

inline Dense to_dense(const IntMat& m) {
  Dense d(m.rows(), std::vector<Int>(m.cols(), 0));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (auto& [c, v] : m.row(r)) d[r][c] = v;
  return d;
}

// Fraction-free Bareiss determinant.
inline Int det_dense(Dense a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline bool is_unimodular(const IntMat& m) {
  if (m.rows() != m.cols()) return false;
  Int d = det_dense(to_dense(m));
  return d == 1 || d == -1;
}

inline Int gcd_int(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// Invariant factors via gcds of k-minors. Exponential in size, so keep the
// inputs at 5x5 or below.
inline std::vector<Int> invariant_factors_oracle(const IntMat& m) {
  Dense d = to_dense(m);
  std::size_t r = m.rows(), c = m.cols();
  std::vector<Int> gcds;  // gcds[k-1] = gcd of all k-minors
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(r, k, rs);
    subsets(c, k, cs);
    Int g = 0;
    for (auto& ri : rs)
      for (auto& ci : cs) {
        Dense sub(k, std::vector<Int>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = d[ri[i]][ci[j]];
        g = gcd_int(g, det_dense(sub));
      }
    if (g == 0) break;
    gcds.push_back(g);
  }
  std::vector<Int> factors;
  Int prev = 1;
  for (auto& g : gcds) {
    factors.push_back(g / prev);
    prev = g;
  }
  return factors;
}

inline IntMat random_intmat(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo = -6,
                            int hi = 6, double density = 0.7) {
  IntMat m(rows, cols);
  std::uniform_int_distribution<int> val(lo, hi);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (coin(rng) < density) m.set(r, c, val(rng));
  return m;
}

}  // namespace testsupport
