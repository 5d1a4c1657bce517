#pragma once

#include <stdexcept>
#include <string>

namespace radpoly {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct dimension_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A moment functional was applied beyond the degree its moments cover.
struct cap_exceeded : std::domain_error {
  using std::domain_error::domain_error;
};

struct singular_matrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Elimination found fewer pivots than functionals.
struct rank_deficient : std::runtime_error {
  rank_deficient(int achieved, int wanted, int cap)
      : std::runtime_error("rank deficient: found " + std::to_string(achieved) + " of " + std::to_string(wanted) +
                           " pivots up to degree " + std::to_string(cap)),
        achieved_rank(achieved),
        requested_rank(wanted) {}

  int achieved_rank;
  int requested_rank;
};

}  // namespace radpoly
