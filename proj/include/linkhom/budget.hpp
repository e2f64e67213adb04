#pragma once

#include <cstdlib>
#include <string>

#include "linkhom/numeric.hpp"

namespace linkhom {

// Crossing-count guards. State spaces grow as 2^crossings, so every routine
// that walks the full cube checks one of these bounds before allocating.
struct Budgets {
  int homology = 14;
  int bracket = 22;
};

namespace detail {

inline int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  long parsed = std::strtol(v, &end, 10);
  if (!end || *end || parsed <= 0 || parsed > 64) return fallback;
  return static_cast<int>(parsed);
}

}  // namespace detail

// Defaults come from the environment once per process:
//   LINKHOM_HOMOLOGY_BUDGET, LINKHOM_BRACKET_BUDGET
inline const Budgets& default_budgets() {
  static const Budgets b{detail::env_int("LINKHOM_HOMOLOGY_BUDGET", Budgets{}.homology),
                         detail::env_int("LINKHOM_BRACKET_BUDGET", Budgets{}.bracket)};
  return b;
}

// Crossing-free components double the chain module just like crossings do,
// so they spend homology budget at the same rate.
inline void check_homology_budget(std::size_t crossings, const Budgets& b = default_budgets(),
                                  std::size_t free_loops = 0) {
  if (static_cast<long long>(crossings) > b.homology)
    throw budget_exceeded("diagram has " + std::to_string(crossings) +
                          " crossings, homology budget is " + std::to_string(b.homology));
  if (static_cast<long long>(crossings + free_loops) > b.homology)
    throw budget_exceeded("diagram has " + std::to_string(crossings) + " crossings and " +
                          std::to_string(free_loops) + " free loops, homology budget is " +
                          std::to_string(b.homology));
}

// Every state resolves into at most 2 * crossings + free_loops circles; the
// fixed cap keeps the bracket's 64 bit coefficients exact.
inline void check_bracket_budget(std::size_t crossings, const Budgets& b = default_budgets(),
                                 std::size_t free_loops = 0) {
  if (static_cast<long long>(crossings) > b.bracket)
    throw budget_exceeded("diagram has " + std::to_string(crossings) +
                          " crossings, bracket budget is " + std::to_string(b.bracket));
  if (2 * crossings + free_loops > 62)
    throw budget_exceeded("states may resolve into " +
                          std::to_string(2 * crossings + free_loops) +
                          " circles, the exact coefficient cap is 62");
}

}  // namespace linkhom
