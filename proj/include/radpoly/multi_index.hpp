#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "radpoly/rational.hpp"

namespace radpoly {

/// Exponent vector of a monomial x^alpha.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int dimension) : exps_(static_cast<std::size_t>(dimension), 0) {}
  MultiIndex(std::initializer_list<int> exps) : exps_(exps) { check(); }
  explicit MultiIndex(std::vector<int> exps) : exps_(std::move(exps)) { check(); }

  static MultiIndex unit(int dimension, int axis) {
    MultiIndex e(dimension);
    e.exps_.at(static_cast<std::size_t>(axis)) = 1;
    return e;
  }

  int dimension() const { return static_cast<int>(exps_.size()); }
  int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
  int& operator[](int i) { return exps_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& exponents() const { return exps_; }

  int total_degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

  /// alpha! = alpha(1)! ... alpha(d)!
  Rational factorial() const {
    Rational r = 1;
    for (int e : exps_) r *= radpoly::factorial(e);
    return r;
  }

  MultiIndex operator+(const MultiIndex& other) const {
    if (other.dimension() != dimension()) throw dimension_mismatch("multi-index dimensions differ");
    MultiIndex r = *this;
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
    return r;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < exps_.size(); ++i) s += (i ? "," : "") + std::to_string(exps_[i]);
    return s + ")";
  }

 private:
  void check() const {
    for (int e : exps_)
      if (e < 0) throw std::invalid_argument("negative exponent in multi-index");
  }

  std::vector<int> exps_;
};

/// Tie-break used among monomials of equal total degree.
enum class MonomialOrder {
  /// First coordinate most significant, larger exponent first: (2,0) < (1,1) < (0,2).
  graded_lex,
  /// Last coordinate most significant, larger exponent first: (0,2) < (1,1) < (2,0).
  graded_colex,
};

/// Strict weak order: total degree ascending, then the tie-break.
struct GradedLess {
  MonomialOrder order = MonomialOrder::graded_lex;

  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    const int d = a.dimension();
    if (order == MonomialOrder::graded_lex) {
      for (int i = 0; i < d; ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    } else {
      for (int i = d - 1; i >= 0; --i)
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
  }
};

namespace detail {
inline void compositions(int d, int remaining, int axis, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (axis == d - 1) {
    cur[axis] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[axis] = e;
    compositions(d, remaining - e, axis + 1, cur, out);
  }
  cur[axis] = 0;
}
}  // namespace detail

/// All alpha with |alpha| == degree, in the requested tie-break order.
inline std::vector<MultiIndex> homogeneous_indices(int d, int degree,
                                                   MonomialOrder order = MonomialOrder::graded_lex) {
  if (d < 1) throw std::invalid_argument("dimension must be at least 1");
  std::vector<MultiIndex> out;
  if (degree < 0) return out;
  MultiIndex cur(d);
  detail::compositions(d, degree, 0, cur, out);
  std::sort(out.begin(), out.end(), GradedLess{order});
  return out;
}

/// All alpha with |alpha| <= max_degree, total degree ascending.
inline std::vector<MultiIndex> monomial_sequence(int d, int max_degree,
                                                 MonomialOrder order = MonomialOrder::graded_lex) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= max_degree; ++k) {
    auto layer = homogeneous_indices(d, k, order);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

/// Number of monomials of degree <= k in d variables.
inline std::size_t monomial_count(int d, int k) {
  if (k < 0) return 0;
  // C(k + d, d)
  std::size_t r = 1;
  for (int i = 1; i <= d; ++i) r = r * static_cast<std::size_t>(k + i) / static_cast<std::size_t>(i);
  return r;
}

}  // namespace radpoly
