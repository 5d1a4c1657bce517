#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "radpoly/errors.hpp"
#include "radpoly/multi_index.hpp"
#include "radpoly/polynomial.hpp"

namespace radpoly {

/// Finitely many moments lambda()^alpha, |alpha| <= cap. Missing keys are zero.
template <exact_field S>
struct MomentTable {
  int cap = 0;
  std::map<MultiIndex, S, GradedLess> values;
};

/// A linear functional on polynomials in d variables.
///
/// Holds a point part sum_i c_i delta_{x_i} (distinct x_i) and an optional
/// moment part known up to a degree cap. Pure point functionals apply to
/// every polynomial; anything with a moment part refuses polynomials above
/// its cap rather than truncating.
template <exact_field S>
class Functional {
 public:
  Functional() = default;
  explicit Functional(int dimension) : dim_(dimension) {
    if (dimension < 1) throw std::invalid_argument("dimension must be at least 1");
  }

  static Functional zero(int dimension) { return Functional(dimension); }

  static Functional point_evaluation(const Point<S>& x) {
    Functional f(static_cast<int>(x.size()));
    f.points_.push_back(x);
    f.weights_.push_back(S(1));
    return f;
  }

  /// sum_i weights[i] * delta_{points[i]}; points must be pairwise distinct.
  static Functional point_combination(std::vector<Point<S>> points, std::vector<S> weights) {
    if (points.size() != weights.size()) throw std::invalid_argument("points and weights differ in length");
    if (points.empty()) throw std::invalid_argument("point functional needs at least one point");
    Functional f(static_cast<int>(points.front().size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].size() != f.dim_) throw dimension_mismatch("points have differing dimensions");
      for (std::size_t j = 0; j < i; ++j)
        if (points[j] == points[i]) throw std::invalid_argument("duplicate point in point functional");
    }
    f.points_ = std::move(points);
    f.weights_ = std::move(weights);
    return f;
  }

  static Functional moments(int dimension, int cap, std::map<MultiIndex, S, GradedLess> values) {
    if (cap < 0) throw std::invalid_argument("moment cap must be nonnegative");
    Functional f(dimension);
    MomentTable<S> table{cap, {}};
    for (auto& [alpha, v] : values) {
      if (alpha.dimension() != dimension) throw dimension_mismatch("moment index has wrong dimension");
      if (alpha.total_degree() > cap) throw cap_exceeded("moment key " + alpha.str() + " above cap");
      if (!(v == S(0))) table.values.emplace(alpha, v);
    }
    f.moments_ = std::move(table);
    return f;
  }

  /// p -> (D^alpha p)(x0), recorded as moments up to degree_cap.
  static Functional derivative(const MultiIndex& alpha, const Point<S>& x0, int degree_cap) {
    const int d = alpha.dimension();
    if (x0.size() != d) throw dimension_mismatch("derivative base point has wrong dimension");
    if (degree_cap < alpha.total_degree()) throw std::invalid_argument("derivative cap below derivative order");
    std::map<MultiIndex, S, GradedLess> values;
    for (const auto& gamma : monomial_sequence(d, degree_cap)) {
      // D^alpha x^gamma = prod_i gamma_i!/(gamma_i - alpha_i)! x_i^(gamma_i - alpha_i)
      S v(1);
      for (int i = 0; i < d && !(v == S(0)); ++i) {
        if (gamma[i] < alpha[i]) {
          v = S(0);
          break;
        }
        for (int t = 0; t < alpha[i]; ++t) v *= S(gamma[i] - t);
        v *= power(x0(i), gamma[i] - alpha[i]);
      }
      if (!(v == S(0))) values.emplace(gamma, v);
    }
    return moments(d, degree_cap, std::move(values));
  }

  int dimension() const { return dim_; }
  bool is_point_functional() const { return !moments_.has_value(); }
  const std::vector<Point<S>>& points() const { return points_; }
  const std::vector<S>& weights() const { return weights_; }
  const std::optional<MomentTable<S>>& moment_part() const { return moments_; }

  /// Largest degree this functional can be applied to; nullopt when unbounded.
  std::optional<int> cap() const {
    if (moments_) return moments_->cap;
    return std::nullopt;
  }

  bool admits_degree(int degree) const { return !moments_ || degree <= moments_->cap; }

  /// No nonzero weight and no nonzero stored moment.
  bool is_structurally_zero() const {
    for (const auto& w : weights_)
      if (!(w == S(0))) return false;
    return !moments_ || moments_->values.empty();
  }

  S apply(const Polynomial<S>& p) const {
    if (p.dimension() != dim_) throw dimension_mismatch("functional and polynomial dimensions differ");
    if (!admits_degree(p.degree()))
      throw cap_exceeded("degree " + std::to_string(p.degree()) + " exceeds moment cap " +
                         std::to_string(moments_->cap));
    S r(0);
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (!(weights_[i] == S(0))) r += weights_[i] * evaluate(p, points_[i]);
    if (moments_) {
      for (const auto& [alpha, c] : p.terms()) {
        auto it = moments_->values.find(alpha);
        if (it != moments_->values.end()) r += c * it->second;
      }
    }
    return r;
  }

  S operator()(const Polynomial<S>& p) const { return apply(p); }

  /// lambda()^alpha
  S moment(const MultiIndex& alpha) const {
    if (alpha.dimension() != dim_) throw dimension_mismatch("moment index has wrong dimension");
    if (!admits_degree(alpha.total_degree()))
      throw cap_exceeded("moment " + alpha.str() + " exceeds cap " + std::to_string(moments_->cap));
    S r(0);
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (!(weights_[i] == S(0))) r += weights_[i] * monomial_value(alpha, points_[i]);
    if (moments_) {
      auto it = moments_->values.find(alpha);
      if (it != moments_->values.end()) r += it->second;
    }
    return r;
  }

  /// Same functional restricted to polynomials of degree <= cap, as pure moments.
  Functional to_moments(int cap) const {
    if (!admits_degree(cap)) throw cap_exceeded("requested moment cap exceeds functional cap");
    std::map<MultiIndex, S, GradedLess> values;
    for (const auto& alpha : monomial_sequence(dim_, cap)) values.emplace(alpha, moment(alpha));
    return moments(dim_, cap, std::move(values));
  }

  Functional& operator*=(const S& s) {
    for (auto& w : weights_) w *= s;
    if (moments_) {
      if (s == S(0))
        moments_->values.clear();
      else
        for (auto& [alpha, v] : moments_->values) v *= s;
    }
    return *this;
  }

  /// Sum; coinciding points are merged and the moment cap is the smaller one.
  Functional& operator+=(const Functional& g) {
    if (g.dim_ != dim_) throw dimension_mismatch("functional dimensions differ");
    for (std::size_t j = 0; j < g.points_.size(); ++j) {
      auto it = std::find(points_.begin(), points_.end(), g.points_[j]);
      if (it == points_.end()) {
        points_.push_back(g.points_[j]);
        weights_.push_back(g.weights_[j]);
      } else {
        weights_[static_cast<std::size_t>(it - points_.begin())] += g.weights_[j];
      }
    }
    for (std::size_t i = weights_.size(); i-- > 0;) {
      if (weights_[i] == S(0)) {
        weights_.erase(weights_.begin() + static_cast<std::ptrdiff_t>(i));
        points_.erase(points_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    if (g.moments_) {
      if (!moments_) {
        moments_ = g.moments_;
      } else {
        moments_->cap = std::min(moments_->cap, g.moments_->cap);
        for (const auto& [alpha, v] : g.moments_->values) {
          auto [it, inserted] = moments_->values.try_emplace(alpha, v);
          if (!inserted) it->second += v;
        }
        std::erase_if(moments_->values, [&](const auto& kv) {
          return kv.first.total_degree() > moments_->cap || kv.second == S(0);
        });
      }
    }
    return *this;
  }

  friend Functional operator+(Functional f, const Functional& g) { return f += g; }
  friend Functional operator*(const S& s, Functional f) { return f *= s; }
  friend Functional operator-(Functional f, const Functional& g) { return f += S(-1) * g; }

 private:
  int dim_ = 1;
  std::vector<Point<S>> points_;
  std::vector<S> weights_;
  std::optional<MomentTable<S>> moments_;
};

using QFunctional = Functional<Rational>;

/// sum_j coeffs[j] * fs[j]
template <exact_field S>
Functional<S> linear_combination(std::span<const Functional<S>> fs, std::span<const S> coeffs) {
  if (fs.empty() || fs.size() != coeffs.size()) throw std::invalid_argument("linear_combination: size mismatch");
  Functional<S> r = Functional<S>::zero(fs.front().dimension());
  for (std::size_t j = 0; j < fs.size(); ++j)
    if (!(coeffs[j] == S(0))) r += coeffs[j] * fs[j];
  return r;
}

/// Outcome of an order search: kappa = min{|alpha| : lambda()^alpha != 0}.
struct Order {
  enum class Kind { zero, finite, exceeds_cap };
  Kind kind = Kind::zero;
  int value = -1;  // -1 for zero; the search cap for exceeds_cap

  bool is_finite() const { return kind == Kind::finite; }
  friend bool operator==(const Order&, const Order&) = default;
};

/// Order of lambda, searching moments of degree <= search_cap.
template <exact_field S>
Order order(const Functional<S>& f, int search_cap) {
  if (!f.admits_degree(search_cap)) throw cap_exceeded("order search cap exceeds functional cap");
  if (f.is_structurally_zero()) return {Order::Kind::zero, -1};
  for (int k = 0; k <= search_cap; ++k)
    for (const auto& alpha : homogeneous_indices(f.dimension(), k))
      if (!(f.moment(alpha) == S(0))) return {Order::Kind::finite, k};
  return {Order::Kind::exceeds_cap, search_cap};
}

/// Order of a functional without moment part; m distinct points cannot all
/// be annihilated by Pi_{<= m-1}, so the search always terminates.
template <exact_field S>
Order order(const Functional<S>& f) {
  if (!f.is_point_functional()) throw std::invalid_argument("order of a moment functional needs a search cap");
  return order(f, std::max<int>(0, static_cast<int>(f.points().size()) - 1));
}

/// One summand of ||x - y||^{2k} = sum coeff * p_{a,beta}(x) * p_{c,beta}(y).
struct RadialExpansionTerm {
  int a = 0;
  MultiIndex beta;
  int c = 0;
  Rational coeff;
};

/// p_{a,beta}(x) = ||x||^{2a} x^beta
template <exact_field S>
Polynomial<S> radial_monomial(int a, const MultiIndex& beta) {
  return pow(norm_squared<S>(beta.dimension()), a) * Polynomial<S>::monomial(beta);
}

/// All (a, beta, c) with a + |beta| + c = k and weight (-2)^|beta| k!/(a! beta! c!).
/// Ordered by a descending, then c ascending, then beta in graded order.
inline std::vector<RadialExpansionTerm> radial_power_expansion(int k, int d) {
  if (k < 0 || d < 1) throw std::invalid_argument("radial_power_expansion needs k >= 0 and d >= 1");
  std::vector<RadialExpansionTerm> out;
  const Rational kfact = factorial(k);
  for (int a = k; a >= 0; --a) {
    for (int c = 0; a + c <= k; ++c) {
      const int b = k - a - c;
      const Rational sign_pow = power(Rational(-2), b);
      for (const auto& beta : homogeneous_indices(d, b))
        out.push_back({a, beta, c, sign_pow * kfact / (factorial(a) * beta.factorial() * factorial(c))});
    }
  }
  return out;
}

/// p(x) in d variables viewed as a polynomial in `total` variables, shifted by `offset`.
template <exact_field S>
Polynomial<S> embed(const Polynomial<S>& p, int total, int offset) {
  if (offset < 0 || offset + p.dimension() > total) throw dimension_mismatch("embedding does not fit");
  Polynomial<S> r(total);
  for (const auto& [alpha, c] : p.terms()) {
    MultiIndex e(total);
    for (int i = 0; i < alpha.dimension(); ++i) e[offset + i] = alpha[i];
    r.add_term(e, c);
  }
  return r;
}

/// sum over the expansion terms of coeff * p_{a,beta}(x) p_{c,beta}(y), as a
/// polynomial in (x(1..d), y(1..d)).
template <exact_field S>
Polynomial<S> radial_expansion_polynomial(int k, int d) {
  Polynomial<S> r(2 * d);
  for (const auto& t : radial_power_expansion(k, d))
    r += S(t.coeff) * (embed(radial_monomial<S>(t.a, t.beta), 2 * d, 0) * embed(radial_monomial<S>(t.c, t.beta), 2 * d, d));
  return r;
}

namespace detail {
// lambda p_{a,beta}, memoized per call site.
template <exact_field S>
class RadialMoments {
 public:
  explicit RadialMoments(const Functional<S>& f) : f_(f) {}

  const S& operator()(int a, const MultiIndex& beta) {
    auto key = std::make_pair(a, beta.exponents());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(std::move(key), f_.apply(radial_monomial<S>(a, beta))).first->second;
  }

 private:
  const Functional<S>& f_;
  std::map<std::pair<int, std::vector<int>>, S> cache_;
};

template <exact_field S>
void require_radial_cap(const Functional<S>& f, int degree) {
  if (!f.admits_degree(degree))
    throw cap_exceeded("radial power of degree " + std::to_string(degree) + " exceeds moment cap " +
                       std::to_string(*f.cap()));
}
}  // namespace detail

/// (lambda (x) mu) ||x - y||^{2k}
template <exact_field S>
S tensor_apply_radial(const Functional<S>& lambda, const Functional<S>& mu, int k) {
  if (lambda.dimension() != mu.dimension()) throw dimension_mismatch("functional dimensions differ");
  detail::require_radial_cap(lambda, 2 * k);
  detail::require_radial_cap(mu, 2 * k);
  detail::RadialMoments<S> lm(lambda), mm(mu);
  S r(0);
  for (const auto& t : radial_power_expansion(k, lambda.dimension())) {
    const S& x_part = lm(t.a, t.beta);
    if (x_part == S(0)) continue;
    r += S(t.coeff) * x_part * mm(t.c, t.beta);
  }
  return r;
}

/// <lambda, mu>_k = (-1)^k (lambda (x) mu) ||x - y||^{2k}
template <exact_field S>
S inner_product_k(const Functional<S>& lambda, const Functional<S>& mu, int k) {
  S v = tensor_apply_radial(lambda, mu, k);
  return k % 2 ? S(-v) : v;
}

/// x -> lambda ||x - .||^{2l}, lambda acting on the second slot.
template <exact_field S>
Polynomial<S> radial_image(const Functional<S>& lambda, int l) {
  const int d = lambda.dimension();
  detail::require_radial_cap(lambda, 2 * l);
  detail::RadialMoments<S> lm(lambda);
  Polynomial<S> r(d);
  for (const auto& t : radial_power_expansion(l, d)) {
    const S& y_part = lm(t.c, t.beta);
    if (y_part == S(0)) continue;
    r += (S(t.coeff) * y_part) * radial_monomial<S>(t.a, t.beta);
  }
  return r;
}

/// hat-lambda^[k] = sum_{|alpha| = k} lambda()^alpha x^alpha / alpha!
template <exact_field S>
Polynomial<S> homogeneous_moment_part(const Functional<S>& lambda, int k) {
  Polynomial<S> r(lambda.dimension());
  for (const auto& alpha : homogeneous_indices(lambda.dimension(), k))
    r.add_term(alpha, lambda.moment(alpha) / S(alpha.factorial()));
  return r;
}

/// The least of lambda: its lowest nonvanishing homogeneous moment part.
template <exact_field S>
Polynomial<S> least_part(const Functional<S>& lambda, int search_cap) {
  Order o = order(lambda, search_cap);
  if (o.kind == Order::Kind::zero) return Polynomial<S>(lambda.dimension());
  if (o.kind == Order::Kind::exceeds_cap)
    throw cap_exceeded("order exceeds search cap " + std::to_string(search_cap));
  return homogeneous_moment_part(lambda, o.value);
}

template <exact_field S>
Polynomial<S> least_part(const Functional<S>& lambda) {
  if (!lambda.is_point_functional()) throw std::invalid_argument("least of a moment functional needs a search cap");
  return least_part(lambda, std::max<int>(0, static_cast<int>(lambda.points().size()) - 1));
}

}  // namespace radpoly
