#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "radpoly/multi_index.hpp"
#include "radpoly/rational.hpp"

namespace radpoly {

/// Sparse polynomial in d variables. Terms are kept in graded order and no
/// stored coefficient is zero, so equality is structural.
template <exact_field S>
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, S, GradedLess>;

  Polynomial() = default;
  explicit Polynomial(int dimension) : dim_(dimension) {
    if (dimension < 1) throw std::invalid_argument("dimension must be at least 1");
  }

  static Polynomial constant(int dimension, const S& c) {
    Polynomial p(dimension);
    p.add_term(MultiIndex(dimension), c);
    return p;
  }
  static Polynomial monomial(const MultiIndex& alpha, const S& c = S(1)) {
    Polynomial p(alpha.dimension());
    p.add_term(alpha, c);
    return p;
  }
  /// The coordinate function x(axis), zero-based.
  static Polynomial variable(int dimension, int axis) { return monomial(MultiIndex::unit(dimension, axis)); }

  int dimension() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.total_degree(); }

  S coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? S(0) : it->second;
  }

  /// Adds c * x^alpha in place, dropping the term if it cancels.
  Polynomial& add_term(const MultiIndex& alpha, const S& c) {
    if (alpha.dimension() != dim_) throw dimension_mismatch("term dimension differs from polynomial dimension");
    if (c == S(0)) return *this;
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (!inserted) {
      it->second += c;
      if (it->second == S(0)) terms_.erase(it);
    }
    return *this;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    return terms_.begin()->first.total_degree() == terms_.rbegin()->first.total_degree();
  }

  /// Sum of the terms of total degree exactly k.
  Polynomial homogeneous_part(int k) const {
    Polynomial r(dim_);
    for (const auto& [alpha, c] : terms_)
      if (alpha.total_degree() == k) r.terms_.emplace_hint(r.terms_.end(), alpha, c);
    return r;
  }

  Polynomial& operator+=(const Polynomial& q) {
    require_same(q);
    for (const auto& [alpha, c] : q.terms_) add_term(alpha, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& q) {
    require_same(q);
    for (const auto& [alpha, c] : q.terms_) add_term(alpha, -c);
    return *this;
  }
  Polynomial& operator*=(const S& s) {
    if (s == S(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [alpha, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator-(Polynomial p) { return p *= S(-1); }
  friend Polynomial operator*(Polynomial p, const S& s) { return p *= s; }
  friend Polynomial operator*(const S& s, Polynomial p) { return p *= s; }

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    p.require_same(q);
    Polynomial r(p.dim_);
    for (const auto& [a, ca] : p.terms_)
      for (const auto& [b, cb] : q.terms_) r.add_term(a + b, ca * cb);
    return r;
  }
  Polynomial& operator*=(const Polynomial& q) { return *this = *this * q; }

  friend bool operator==(const Polynomial& p, const Polynomial& q) {
    return p.dim_ == q.dim_ && p.terms_ == q.terms_;
  }

 private:
  void require_same(const Polynomial& q) const {
    if (q.dim_ != dim_) throw dimension_mismatch("polynomial dimensions differ");
  }

  int dim_ = 1;
  Terms terms_;
};

using QPolynomial = Polynomial<Rational>;

template <exact_field S>
Polynomial<S> pow(const Polynomial<S>& p, int e) {
  if (e < 0) throw std::invalid_argument("negative polynomial power");
  Polynomial<S> r = Polynomial<S>::constant(p.dimension(), S(1));
  Polynomial<S> base = p;
  while (e > 0) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

/// ||x||^2 = x(1)^2 + ... + x(d)^2
template <exact_field S>
Polynomial<S> norm_squared(int dimension) {
  Polynomial<S> r(dimension);
  for (int i = 0; i < dimension; ++i) {
    MultiIndex a(dimension);
    a[i] = 2;
    r.add_term(a, S(1));
  }
  return r;
}

template <exact_field S>
S power(const S& base, int e) {
  S r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

/// x^alpha at a point.
template <exact_field S>
S monomial_value(const MultiIndex& alpha, const Point<S>& x) {
  S r(1);
  for (int i = 0; i < alpha.dimension(); ++i) r *= power(x(i), alpha[i]);
  return r;
}

template <exact_field S>
S evaluate(const Polynomial<S>& p, const Point<S>& x) {
  if (x.size() != p.dimension()) throw dimension_mismatch("evaluation point has wrong dimension");
  S r(0);
  for (const auto& [alpha, c] : p.terms()) r += c * monomial_value(alpha, x);
  return r;
}

/// sum_alpha alpha! f_alpha p_alpha, i.e. sum D^alpha f(0) D^alpha p(0) / alpha!.
template <exact_field S>
S apolar_pairing(const Polynomial<S>& f, const Polynomial<S>& p) {
  if (f.dimension() != p.dimension()) throw dimension_mismatch("polynomial dimensions differ");
  const auto& small = f.size() <= p.size() ? f : p;
  const auto& large = f.size() <= p.size() ? p : f;
  S r(0);
  for (const auto& [alpha, c] : small.terms()) {
    auto it = large.terms().find(alpha);
    if (it != large.terms().end()) r += S(alpha.factorial()) * c * it->second;
  }
  return r;
}

/// x -> p(A x + b).
template <exact_field S>
Polynomial<S> substitute_affine(const Polynomial<S>& p, const Matrix<S>& A, const Point<S>& b) {
  const int d = p.dimension();
  if (A.rows() != d || A.cols() != d || b.size() != d)
    throw dimension_mismatch("affine map does not match polynomial dimension");
  std::vector<Polynomial<S>> images;
  images.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    Polynomial<S> yi = Polynomial<S>::constant(d, b(i));
    for (int j = 0; j < d; ++j) yi.add_term(MultiIndex::unit(d, j), A(i, j));
    images.push_back(std::move(yi));
  }
  // powers of each image, built on demand
  std::vector<std::vector<Polynomial<S>>> powers(static_cast<std::size_t>(d));
  auto image_power = [&](int i, int e) -> const Polynomial<S>& {
    auto& cache = powers[static_cast<std::size_t>(i)];
    if (cache.empty()) cache.push_back(Polynomial<S>::constant(d, S(1)));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[static_cast<std::size_t>(i)]);
    return cache[static_cast<std::size_t>(e)];
  };
  Polynomial<S> r(d);
  for (const auto& [alpha, c] : p.terms()) {
    Polynomial<S> term = Polynomial<S>::constant(d, c);
    for (int i = 0; i < d; ++i)
      if (alpha[i] > 0) term *= image_power(i, alpha[i]);
    r += term;
  }
  return r;
}

/// x -> p(x + b)
template <exact_field S>
Polynomial<S> translate(const Polynomial<S>& p, const Point<S>& b) {
  return substitute_affine(p, Matrix<S>(Matrix<S>::Identity(p.dimension(), p.dimension())), b);
}

/// x -> p(A x)
template <exact_field S>
Polynomial<S> compose_linear(const Polynomial<S>& p, const Matrix<S>& A) {
  return substitute_affine(p, A, Point<S>(Point<S>::Zero(p.dimension())));
}

/// Human-readable rendering, terms in graded order, e.g. "x1^2 - 2*x1*x2 + 1".
template <exact_field S>
std::string to_string(const Polynomial<S>& p, const std::vector<std::string>& names = {}) {
  if (p.is_zero()) return "0";
  auto name = [&](int i) {
    return i < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(i)] : "x" + std::to_string(i + 1);
  };
  std::string out;
  bool first = true;
  for (const auto& [alpha, c] : p.terms()) {
    std::string mono;
    for (int i = 0; i < alpha.dimension(); ++i) {
      if (alpha[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += name(i);
      if (alpha[i] > 1) mono += "^" + std::to_string(alpha[i]);
    }
    bool negative = c < S(0);
    S mag = negative ? S(-c) : c;
    std::string coeff = format_rational(Rational(mag));
    if (coeff.find('/') != std::string::npos && !mono.empty()) coeff = "(" + coeff + ")";
    std::string body = mono.empty() ? coeff : (coeff == "1" ? mono : coeff + "*" + mono);
    if (first)
      out += (negative ? "-" : "") + body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

}  // namespace radpoly
