#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "radpoly/errors.hpp"
#include "radpoly/functional.hpp"
#include "radpoly/linalg.hpp"

namespace radpoly {

/// Degree-graded basis lambda_1..lambda_n of the span M of mu_1..mu_n.
///
/// lambda_i = sum_j transform(i, j) mu_j. The first nonvanishing moment of
/// lambda_i, walking monomials in graded order, sits at pivots[i] and equals
/// one; kappas[i] = |pivots[i]| is nondecreasing.
template <exact_field S>
struct GradedBasis {
  std::vector<Functional<S>> span;
  std::vector<Functional<S>> lambdas;
  std::vector<int> kappas;
  std::vector<MultiIndex> pivots;
  Matrix<S> transform;
  MonomialOrder order = MonomialOrder::graded_lex;
  int degree_cap = 0;

  int size() const { return static_cast<int>(lambdas.size()); }
  int dimension() const { return lambdas.empty() ? 0 : lambdas.front().dimension(); }
  int max_kappa() const { return kappas.empty() ? -1 : kappas.back(); }

  /// #{i : kappa_i >= k}, the dimension of M intersected with the annihilator of Pi_{<k}.
  int count_at_least(int k) const {
    return static_cast<int>(std::count_if(kappas.begin(), kappas.end(), [k](int q) { return q >= k; }));
  }
};

using QGradedBasis = GradedBasis<Rational>;

/// Gauss elimination with row interchanges on the Gramian (mu_i ()^alpha),
/// columns generated lazily in graded order up to degree_cap. Pivot row is
/// the lowest-index remaining row with a nonzero entry.
///
/// Without an explicit cap, point-functional spans use n - 1.
template <exact_field S>
GradedBasis<S> build_graded_basis(std::span<const Functional<S>> mus, std::optional<int> degree_cap = std::nullopt,
                                  MonomialOrder tie_break = MonomialOrder::graded_lex) {
  const int n = static_cast<int>(mus.size());
  if (n < 1) throw std::invalid_argument("graded basis needs at least one functional");
  const int d = mus.front().dimension();
  bool all_points = true;
  for (const auto& mu : mus) {
    if (mu.dimension() != d) throw dimension_mismatch("functionals have differing dimensions");
    all_points = all_points && mu.is_point_functional();
  }
  if (!degree_cap) {
    if (!all_points) throw std::invalid_argument("spans with moment functionals need an explicit degree cap");
    degree_cap = n - 1;
  }
  const int cap = *degree_cap;
  for (const auto& mu : mus)
    if (!mu.admits_degree(cap)) throw cap_exceeded("degree cap exceeds a functional's moment cap");

  Matrix<S> T = Matrix<S>::Identity(n, n);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<int> pivot_rows;
  std::vector<MultiIndex> pivot_indices;
  std::vector<S> raw(static_cast<std::size_t>(n)), entry(static_cast<std::size_t>(n));

  for (const auto& alpha : monomial_sequence(d, cap, tie_break)) {
    if (static_cast<int>(pivot_rows.size()) == n) break;
    for (int j = 0; j < n; ++j) raw[static_cast<std::size_t>(j)] = mus[static_cast<std::size_t>(j)].moment(alpha);
    int pivot = -1;
    for (int r = 0; r < n; ++r) {
      if (used[static_cast<std::size_t>(r)]) continue;
      S e(0);
      for (int j = 0; j < n; ++j)
        if (!(T(r, j) == S(0))) e += T(r, j) * raw[static_cast<std::size_t>(j)];
      entry[static_cast<std::size_t>(r)] = e;
      if (pivot < 0 && !(e == S(0))) pivot = r;
    }
    if (pivot < 0) continue;
    const S inv = S(1) / entry[static_cast<std::size_t>(pivot)];
    T.row(pivot) *= inv;
    for (int r = 0; r < n; ++r) {
      if (used[static_cast<std::size_t>(r)] || r == pivot) continue;
      const S e = entry[static_cast<std::size_t>(r)];
      if (!(e == S(0))) T.row(r) -= e * T.row(pivot);
    }
    used[static_cast<std::size_t>(pivot)] = true;
    pivot_rows.push_back(pivot);
    pivot_indices.push_back(alpha);
  }
  if (static_cast<int>(pivot_rows.size()) < n) throw rank_deficient(static_cast<int>(pivot_rows.size()), n, cap);

  GradedBasis<S> out;
  out.span.assign(mus.begin(), mus.end());
  out.order = tie_break;
  out.degree_cap = cap;
  out.transform.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.transform.row(i) = T.row(pivot_rows[static_cast<std::size_t>(i)]);
    std::vector<S> coeffs(out.transform.row(i).begin(), out.transform.row(i).end());
    out.lambdas.push_back(linear_combination<S>(mus, coeffs));
    out.kappas.push_back(pivot_indices[static_cast<std::size_t>(i)].total_degree());
  }
  out.pivots = std::move(pivot_indices);
  return out;
}

template <exact_field S>
GradedBasis<S> build_graded_basis(const std::vector<Functional<S>>& mus, std::optional<int> degree_cap = std::nullopt,
                                  MonomialOrder tie_break = MonomialOrder::graded_lex) {
  return build_graded_basis<S>(std::span<const Functional<S>>(mus), degree_cap, tie_break);
}

/// Point evaluations at each x in X.
template <exact_field S>
std::vector<Functional<S>> point_evaluations(const std::vector<Point<S>>& X) {
  std::vector<Functional<S>> out;
  out.reserve(X.size());
  for (const auto& x : X) out.push_back(Functional<S>::point_evaluation(x));
  return out;
}

/// (lambda_i ()^{beta_j})_{i,j}
template <exact_field S>
Matrix<S> pivot_matrix(const GradedBasis<S>& basis) {
  const int n = basis.size();
  Matrix<S> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = basis.lambdas[static_cast<std::size_t>(i)].moment(basis.pivots[static_cast<std::size_t>(j)]);
  return m;
}

/// Every lambda_i with kappa_i >= k annihilates Pi_{<k}, and the remaining
/// lambda_i have a triangular moment pattern with nonzero diagonal on their pivots.
template <exact_field S>
bool verify_graded(const GradedBasis<S>& basis, int k) {
  const int n = basis.size();
  const int d = basis.dimension();
  const auto low = monomial_sequence(d, k - 1, basis.order);
  std::vector<int> lower;
  for (int i = 0; i < n; ++i) {
    const auto& lambda = basis.lambdas[static_cast<std::size_t>(i)];
    if (basis.kappas[static_cast<std::size_t>(i)] >= k) {
      for (const auto& alpha : low)
        if (!(lambda.moment(alpha) == S(0))) return false;
    } else {
      lower.push_back(i);
    }
  }
  for (std::size_t a = 0; a < lower.size(); ++a) {
    const auto& lambda = basis.lambdas[static_cast<std::size_t>(lower[a])];
    if (lambda.moment(basis.pivots[static_cast<std::size_t>(lower[a])]) == S(0)) return false;
    for (std::size_t b = 0; b < a; ++b)
      if (!(lambda.moment(basis.pivots[static_cast<std::size_t>(lower[b])]) == S(0))) return false;
  }
  return true;
}

}  // namespace radpoly
