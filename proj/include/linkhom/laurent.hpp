#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace linkhom {

// Laurent polynomial in q with 64-bit integer coefficients. Coefficients at
// desk scale stay far below the int64 range (state sums contribute at most
// 2^c terms of unit magnitude).
class Laurent {
 public:
  Laurent() = default;
  explicit Laurent(std::int64_t c) {
    if (c != 0) c_[0] = c;
  }
  Laurent(std::int64_t c, int exp) {
    if (c != 0) c_[exp] = c;
  }

  static Laurent q(int exp = 1) { return Laurent(1, exp); }

  bool is_zero() const { return c_.empty(); }

  std::int64_t coeff(int exp) const {
    auto it = c_.find(exp);
    return it == c_.end() ? 0 : it->second;
  }

  void set(int exp, std::int64_t v) {
    if (v == 0)
      c_.erase(exp);
    else
      c_[exp] = v;
  }

  void add(int exp, std::int64_t v) { set(exp, coeff(exp) + v); }

  Laurent& operator+=(const Laurent& o) {
    for (auto& [e, v] : o.c_) add(e, v);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (auto& [e, v] : o.c_) add(e, -v);
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (auto& [ea, va] : a.c_)
      for (auto& [eb, vb] : b.c_) r.add(ea + eb, va * vb);
    return r;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  Laurent operator-() const {
    Laurent r;
    for (auto& [e, v] : c_) r.c_[e] = -v;
    return r;
  }

  // Multiply by q^k.
  Laurent shifted(int k) const {
    Laurent r;
    for (auto& [e, v] : c_) r.c_[e + k] = v;
    return r;
  }

  Laurent pow(unsigned n) const {
    Laurent r(1);
    for (unsigned i = 0; i < n; ++i) r *= *this;
    return r;
  }

  bool operator==(const Laurent& o) const { return c_ == o.c_; }
  bool operator!=(const Laurent& o) const { return !(*this == o); }

  const std::map<int, std::int64_t>& terms() const { return c_; }

  int min_exp() const { return c_.empty() ? 0 : c_.begin()->first; }
  int max_exp() const { return c_.empty() ? 0 : c_.rbegin()->first; }

  // Sorted "coeff q^exp" rendering, e.g. "1 q^-1 + 1 q^1 - 1 q^9".
  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, v] : c_) {
      if (first) {
        if (v < 0) os << "-";
        first = false;
      } else {
        os << (v < 0 ? " - " : " + ");
      }
      std::int64_t a = v < 0 ? -v : v;
      os << a << " q^" << e;
    }
    return os.str();
  }

  std::vector<std::pair<int, std::int64_t>> sorted_terms() const {
    return {c_.begin(), c_.end()};
  }

 private:
  std::map<int, std::int64_t> c_;  // exp -> coeff, zeros never stored
};

// Quantum integer [n]_q = q^{n-1} + q^{n-3} + ... + q^{1-n}.
inline Laurent quantum_integer(int n) {
  Laurent r;
  for (int e = n - 1; e >= 1 - n; e -= 2) r.add(e, 1);
  return r;
}

}  // namespace linkhom
