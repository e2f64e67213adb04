#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "linkhom/numeric.hpp"

namespace linkhom {

// Sparse matrix over Z. Rows are maps col -> value; zero entries are never
// stored. Row/column counts are explicit so empty matrices keep their shape.
class IntMat {
 public:
  IntMat() : rows_(0), cols_(0) {}
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_(rows) {}

  static IntMat identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.row_[i][i] = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Int& at(std::size_t r, std::size_t c) const {
    static const Int zero = 0;
    auto it = row_[r].find(c);
    return it == row_[r].end() ? zero : it->second;
  }

  void set(std::size_t r, std::size_t c, Int v) {
    if (v == 0)
      row_[r].erase(c);
    else
      row_[r][c] = std::move(v);
  }

  void add(std::size_t r, std::size_t c, const Int& v) {
    if (v == 0) return;
    Int& slot = row_[r][c];
    slot += v;
    if (slot == 0) row_[r].erase(c);
  }

  const std::map<std::size_t, Int>& row(std::size_t r) const { return row_[r]; }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (auto& r : row_) n += r.size();
    return n;
  }

  bool is_zero() const { return nnz() == 0; }

  IntMat transpose() const {
    IntMat t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (auto& [c, v] : row_[r]) t.row_[c][r] = v;
    return t;
  }

  friend IntMat operator*(const IntMat& a, const IntMat& b) {
    if (a.cols_ != b.rows_) throw internal_error("IntMat multiply shape mismatch");
    IntMat p(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      for (auto& [k, av] : a.row_[r]) {
        for (auto& [c, bv] : b.row_[k]) p.add(r, c, av * bv);
      }
    }
    return p;
  }

  bool operator==(const IntMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && row_ == o.row_;
  }

  // Apply to a dense column vector.
  std::vector<Int> apply(const std::vector<Int>& x) const {
    if (x.size() != cols_) throw internal_error("IntMat apply shape mismatch");
    std::vector<Int> y(rows_, Int(0));
    for (std::size_t r = 0; r < rows_; ++r)
      for (auto& [c, v] : row_[r]) y[r] += v * x[c];
    return y;
  }

  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Int>> triplets() const {
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, Int>> t;
    for (std::size_t r = 0; r < rows_; ++r)
      for (auto& [c, v] : row_[r]) t.push_back({{r, c}, v});
    return t;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<std::map<std::size_t, Int>> row_;
};

}  // namespace linkhom
