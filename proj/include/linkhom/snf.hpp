#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "linkhom/intmatrix.hpp"
#include "linkhom/numeric.hpp"

namespace linkhom {

struct SmithResult {
  IntMat D;                  // diagonal, nonnegative, divisibility chain
  IntMat U, V;               // unimodular, U * M * V = D
  std::size_t rank = 0;      // number of nonzero diagonal entries
  std::vector<Int> factors;  // the nonzero diagonal entries in chain order
};

namespace detail {

// Elimination workspace. Row-major sparse storage with a per-column row
// index so column operations stay cheap.
class SnfWork {
 public:
  SnfWork(const IntMat& m, bool transforms)
      : nr_(m.rows()), nc_(m.cols()), with_t_(transforms) {
    R_.resize(nr_);
    Cidx_.resize(nc_);
    for (std::size_t r = 0; r < nr_; ++r) {
      for (auto& [c, v] : m.row(r)) {
        R_[r][c] = v;
        Cidx_[c].insert(r);
      }
    }
    row_active_.assign(nr_, true);
    col_active_.assign(nc_, true);
    if (with_t_) {
      UR_.resize(nr_);
      for (std::size_t r = 0; r < nr_; ++r) UR_[r][r] = 1;
      VC_.resize(nc_);
      for (std::size_t c = 0; c < nc_; ++c) VC_[c][c] = 1;
    }
  }

  // Consume every active entry, appending (row, col) pivot positions.
  void eliminate(std::vector<std::pair<std::size_t, std::size_t>>& pivots) {
    for (;;) {
      auto p = select_pivot();
      if (!p) break;
      auto [pr, pc] = *p;
      clean_pair(pr, pc);
      row_active_[pr] = false;
      col_active_[pc] = false;
      pivots.push_back({pr, pc});
    }
  }

  void reactivate(std::size_t r, std::size_t c) {
    row_active_[r] = true;
    col_active_[c] = true;
  }

  Int value(std::size_t r, std::size_t c) const {
    auto it = R_[r].find(c);
    return it == R_[r].end() ? Int(0) : it->second;
  }

  // col c += col p
  void col_accumulate(std::size_t c, std::size_t p) {
    for (std::size_t r : std::vector<std::size_t>(Cidx_[p].begin(), Cidx_[p].end()))
      put(r, c, value(r, c) + value(r, p));
    if (with_t_) {
      for (auto& [r, v] : std::map<std::size_t, Int>(VC_[p])) {
        VC_[c][r] += v;
        prune(VC_[c], r);
      }
    }
  }

  void negate_row(std::size_t r) {
    for (auto& [c, v] : R_[r]) v = -v;
    if (with_t_)
      for (auto& [c, v] : UR_[r]) v = -v;
  }

  const std::map<std::size_t, Int>& u_row(std::size_t r) const { return UR_[r]; }
  const std::map<std::size_t, Int>& v_col(std::size_t c) const { return VC_[c]; }

 private:
  static void prune(std::map<std::size_t, Int>& m, std::size_t k) {
    auto it = m.find(k);
    if (it != m.end() && it->second == 0) m.erase(it);
  }

  void put(std::size_t r, std::size_t c, Int v) {
    auto it = R_[r].find(c);
    if (v == 0) {
      if (it != R_[r].end()) {
        R_[r].erase(it);
        Cidx_[c].erase(r);
      }
    } else {
      if (it == R_[r].end()) Cidx_[c].insert(r);
      R_[r][c] = std::move(v);
    }
  }

  // row r -= q * row p
  void row_axpy(std::size_t r, std::size_t p, const Int& q) {
    if (q == 0) return;
    for (auto& [c, v] : std::map<std::size_t, Int>(R_[p])) put(r, c, value(r, c) - q * v);
    if (with_t_) {
      for (auto& [c, v] : std::map<std::size_t, Int>(UR_[p])) {
        UR_[r][c] -= q * v;
        prune(UR_[r], c);
      }
    }
  }

  // col c -= q * col p
  void col_axpy(std::size_t c, std::size_t p, const Int& q) {
    if (q == 0) return;
    for (std::size_t r : std::vector<std::size_t>(Cidx_[p].begin(), Cidx_[p].end()))
      put(r, c, value(r, c) - q * value(r, p));
    if (with_t_) {
      for (auto& [r, v] : std::map<std::size_t, Int>(VC_[p])) {
        VC_[c][r] -= q * v;
        prune(VC_[c], r);
      }
    }
  }

  void row_swap(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::set<std::size_t> cols;
    for (auto& [c, v] : R_[a]) cols.insert(c);
    for (auto& [c, v] : R_[b]) cols.insert(c);
    std::swap(R_[a], R_[b]);
    for (std::size_t c : cols) {
      Cidx_[c].erase(a);
      Cidx_[c].erase(b);
      if (R_[a].count(c)) Cidx_[c].insert(a);
      if (R_[b].count(c)) Cidx_[c].insert(b);
    }
    if (with_t_) std::swap(UR_[a], UR_[b]);
  }

  void col_swap(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::set<std::size_t> rows(Cidx_[a]);
    rows.insert(Cidx_[b].begin(), Cidx_[b].end());
    for (std::size_t r : rows) {
      Int va = value(r, a), vb = value(r, b);
      put(r, a, vb);
      put(r, b, va);
    }
    if (with_t_) std::swap(VC_[a], VC_[b]);
  }

  // Pick a pivot: restrict attention to a few sparsest active rows, take the
  // entry minimizing (|value|, fill estimate). Any nonzero choice is correct;
  // the divisibility pass at the end produces the canonical chain.
  std::optional<std::pair<std::size_t, std::size_t>> select_pivot() const {
    constexpr std::size_t kRows = 12;
    std::vector<std::size_t> cand;
    for (std::size_t r = 0; r < nr_; ++r) {
      if (!row_active_[r] || R_[r].empty()) continue;
      cand.push_back(r);
    }
    if (cand.empty()) return std::nullopt;
    if (cand.size() > kRows) {
      std::partial_sort(cand.begin(), cand.begin() + kRows, cand.end(),
                        [&](std::size_t a, std::size_t b) { return R_[a].size() < R_[b].size(); });
      cand.resize(kRows);
    }
    std::size_t br = 0, bc = 0;
    Int bval = 0;
    std::size_t bfill = 0;
    bool have = false;
    for (std::size_t r : cand) {
      for (auto& [c, v] : R_[r]) {
        Int a = abs_int(v);
        std::size_t fill = (R_[r].size() - 1) * (Cidx_[c].size() - 1);
        if (!have || a < bval || (a == bval && fill < bfill)) {
          have = true;
          br = r;
          bc = c;
          bval = a;
          bfill = fill;
          if (bval == 1 && bfill == 0) return std::make_pair(br, bc);
        }
      }
    }
    return std::make_pair(br, bc);
  }

  // Clear row pr and column pc down to the single pivot entry.
  void clean_pair(std::size_t& pr, std::size_t& pc) {
    for (;;) {
      bool dirty = false;
      while (Cidx_[pc].size() > 1) {
        std::size_t r = 0;
        bool found = false;
        for (std::size_t rr : Cidx_[pc])
          if (rr != pr) {
            r = rr;
            found = true;
            break;
          }
        if (!found) break;
        Int piv = value(pr, pc);
        Int q = value(r, pc) / piv;
        row_axpy(r, pr, q);
        if (value(r, pc) != 0) row_swap(r, pr);
        dirty = true;
      }
      while (R_[pr].size() > 1) {
        std::size_t c = 0;
        bool found = false;
        for (auto& [cc, v] : R_[pr])
          if (cc != pc) {
            c = cc;
            found = true;
            break;
          }
        if (!found) break;
        Int piv = value(pr, pc);
        Int q = value(pr, c) / piv;
        col_axpy(c, pc, q);
        if (value(pr, c) != 0) col_swap(c, pc);
        dirty = true;
      }
      if (Cidx_[pc].size() <= 1 && R_[pr].size() <= 1) break;
      if (!dirty) break;
    }
  }

  std::size_t nr_, nc_;
  bool with_t_;
  std::vector<std::map<std::size_t, Int>> R_;
  std::vector<std::set<std::size_t>> Cidx_;
  std::vector<bool> row_active_, col_active_;
  std::vector<std::map<std::size_t, Int>> UR_;  // rows of U
  std::vector<std::map<std::size_t, Int>> VC_;  // columns of V
};

}  // namespace detail

inline SmithResult smith_normal_form(const IntMat& m, bool with_transforms = true) {
  detail::SnfWork w(m, with_transforms);
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  w.eliminate(pivots);

  // Enforce the divisibility chain: any violating pair is merged back into a
  // 2x2 block and re-eliminated, which replaces (a, b) by (gcd, lcm).
  for (;;) {
    bool fixed = false;
    for (std::size_t i = 0; i < pivots.size() && !fixed; ++i) {
      for (std::size_t j = 0; j < pivots.size() && !fixed; ++j) {
        if (i == j) continue;
        Int a = abs_int(w.value(pivots[i].first, pivots[i].second));
        Int b = abs_int(w.value(pivots[j].first, pivots[j].second));
        if (a <= b && b % a == 0) continue;
        if (b <= a && a % b == 0) continue;
        auto pi = pivots[i], pj = pivots[j];
        pivots.erase(pivots.begin() + std::max(i, j));
        pivots.erase(pivots.begin() + std::min(i, j));
        w.reactivate(pi.first, pi.second);
        w.reactivate(pj.first, pj.second);
        w.col_accumulate(pi.second, pj.second);
        w.eliminate(pivots);
        fixed = true;
      }
    }
    if (!fixed) break;
  }

  for (auto& [r, c] : pivots)
    if (w.value(r, c) < 0) w.negate_row(r);

  std::sort(pivots.begin(), pivots.end(),
            [&](auto& a, auto& b) { return w.value(a.first, a.second) < w.value(b.first, b.second); });

  SmithResult out;
  out.rank = pivots.size();
  out.D = IntMat(m.rows(), m.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    Int d = w.value(pivots[k].first, pivots[k].second);
    out.D.set(k, k, d);
    out.factors.push_back(d);
  }

  if (with_transforms) {
    // Row permutation sending pivot rows to the top, in chain order.
    std::vector<std::size_t> rowpos(m.rows(), SIZE_MAX), colpos(m.cols(), SIZE_MAX);
    std::size_t next_r = pivots.size(), next_c = pivots.size();
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      rowpos[pivots[k].first] = k;
      colpos[pivots[k].second] = k;
    }
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (rowpos[r] == SIZE_MAX) rowpos[r] = next_r++;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (colpos[c] == SIZE_MAX) colpos[c] = next_c++;

    out.U = IntMat(m.rows(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (auto& [c, v] : w.u_row(r)) out.U.set(rowpos[r], c, v);
    out.V = IntMat(m.cols(), m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
      for (auto& [r, v] : w.v_col(c)) out.V.set(r, colpos[c], v);
  }
  return out;
}

inline std::size_t rank_z(const IntMat& m) { return smith_normal_form(m, false).rank; }

// Invariant factors greater than 1 (the torsion orders of coker restricted
// to a free cover).
inline std::vector<Int> torsion_factors(const IntMat& m) {
  auto s = smith_normal_form(m, false);
  std::vector<Int> t;
  for (auto& f : s.factors)
    if (f > 1) t.push_back(f);
  return t;
}

}  // namespace linkhom
