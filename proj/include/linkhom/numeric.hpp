#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace linkhom {

// Exact arithmetic carriers. Intermediate normal-form computations can grow
// well past 64 bits, so everything ring-level is arbitrary precision.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& m) : std::runtime_error(m) {}
};

struct budget_exceeded : std::runtime_error {
  explicit budget_exceeded(const std::string& m) : std::runtime_error(m) {}
};

struct not_realizable : std::runtime_error {
  explicit not_realizable(const std::string& m) : std::runtime_error(m) {}
};

// Raised when a knot-only quantity is requested for a multi-component link.
struct multi_component : std::runtime_error {
  explicit multi_component(const std::string& m) : std::runtime_error(m) {}
};

// Internal consistency failures (broken invariants, not bad user input).
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& m) : std::logic_error(m) {}
};

inline Int binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (long long i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

// componentwise product of (n_i - k_i choose k_i); requires 0 <= k <= n/2
inline Int binom_product(const std::vector<int>& n, const std::vector<int>& k) {
  if (n.size() != k.size()) throw validation_error("color vectors differ in length");
  Int r = 1;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (k[i] < 0 || 2 * k[i] > n[i])
      throw validation_error("color index out of range: need 0 <= k <= n/2");
    r *= binomial(n[i] - k[i], k[i]);
  }
  return r;
}

inline int sign_of(const Int& v) {
  if (v == 0) return 0;
  return v < 0 ? -1 : 1;
}

inline Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

}  // namespace linkhom
