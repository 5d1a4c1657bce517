#pragma once

#include <string>
#include <vector>

#include "radpoly/errors.hpp"
#include "radpoly/functional.hpp"
#include "radpoly/graded_basis.hpp"
#include "radpoly/linalg.hpp"

namespace radpoly {

enum class Method { schaback, least };

inline std::string to_string(Method m) { return m == Method::schaback ? "schaback" : "least"; }

/// Polynomials spanning an interpolation space together with the Gramian
/// (lambda_i v_j) against the graded basis they were built from.
///
/// schaback: v_j = lambda_j ||x - .||^{2 kappa_j}, of degree kappa_j.
/// least:    v_j = the least of lambda_j, homogeneous of degree kappa_j.
///
/// Either Gramian is block upper triangular over the kappa groups.
template <exact_field S>
struct InterpolationBasis {
  Method method = Method::schaback;
  GradedBasis<S> source;
  std::vector<Polynomial<S>> polys;
  Matrix<S> gramian;

  int size() const { return static_cast<int>(polys.size()); }
  int dimension() const { return source.dimension(); }
};

template <exact_field S>
Matrix<S> gramian(const std::vector<Functional<S>>& rows, const std::vector<Polynomial<S>>& cols) {
  Matrix<S> g(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i].apply(cols[j]);
  return g;
}

template <exact_field S>
InterpolationBasis<S> schaback_basis(const GradedBasis<S>& lambda) {
  InterpolationBasis<S> b{Method::schaback, lambda, {}, {}};
  for (int j = 0; j < lambda.size(); ++j)
    b.polys.push_back(radial_image(lambda.lambdas[static_cast<std::size_t>(j)], lambda.kappas[static_cast<std::size_t>(j)]));
  b.gramian = gramian(lambda.lambdas, b.polys);
  return b;
}

template <exact_field S>
InterpolationBasis<S> least_basis(const GradedBasis<S>& lambda) {
  InterpolationBasis<S> b{Method::least, lambda, {}, {}};
  for (int j = 0; j < lambda.size(); ++j)
    b.polys.push_back(
        homogeneous_moment_part(lambda.lambdas[static_cast<std::size_t>(j)], lambda.kappas[static_cast<std::size_t>(j)]));
  b.gramian = gramian(lambda.lambdas, b.polys);
  return b;
}

template <exact_field S>
InterpolationBasis<S> interpolation_basis(const GradedBasis<S>& lambda, Method m) {
  return m == Method::schaback ? schaback_basis(lambda) : least_basis(lambda);
}

/// Half-open index ranges of equal kappa.
inline std::vector<std::pair<int, int>> kappa_blocks(const std::vector<int>& kappas) {
  std::vector<std::pair<int, int>> blocks;
  int start = 0;
  const int n = static_cast<int>(kappas.size());
  for (int i = 1; i <= n; ++i) {
    if (i == n || kappas[static_cast<std::size_t>(i)] != kappas[static_cast<std::size_t>(start)]) {
      blocks.emplace_back(start, i);
      start = i;
    }
  }
  return blocks;
}

/// True when G(i, j) == 0 whenever kappa_i > kappa_j.
template <exact_field S>
bool is_block_upper_triangular(const Matrix<S>& G, const std::vector<int>& kappas) {
  for (Eigen::Index i = 0; i < G.rows(); ++i)
    for (Eigen::Index j = 0; j < G.cols(); ++j)
      if (kappas[static_cast<std::size_t>(i)] > kappas[static_cast<std::size_t>(j)] && !(G(i, j) == S(0))) return false;
  return true;
}

/// Solves G a = rhs for block upper triangular G, one diagonal block at a time
/// from the last kappa group up.
template <exact_field S>
Vector<S> block_back_substitute(const Matrix<S>& G, const std::vector<int>& kappas, const Vector<S>& rhs) {
  if (!is_block_upper_triangular(G, kappas)) throw singular_matrix("Gramian is not block upper triangular");
  const auto blocks = kappa_blocks(kappas);
  Vector<S> a = Vector<S>::Zero(G.cols());
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
    const auto [lo, hi] = *it;
    const int m = hi - lo;
    Vector<S> r = rhs.segment(lo, m);
    const int tail = static_cast<int>(G.cols()) - hi;
    if (tail > 0) r -= G.block(lo, hi, m, tail) * a.segment(hi, tail);
    try {
      a.segment(lo, m) = solve<S>(Matrix<S>(G.block(lo, lo, m, m)), r);
    } catch (const singular_matrix&) {
      throw singular_matrix("diagonal Gramian block for kappa = " + std::to_string(kappas[static_cast<std::size_t>(lo)]) +
                            " is singular");
    }
  }
  return a;
}

enum class SolvePath { block, dense };

template <exact_field S>
struct InterpolantReport {
  Method method = Method::schaback;
  Polynomial<S> interpolant;
  Vector<S> coefficients;
  /// mu_i f - data_i; identically zero for a correct solve.
  Vector<S> residuals;
  std::vector<int> kappas;
  std::vector<MultiIndex> pivots;

  bool exact() const { return residuals.isZero(); }
};

/// The unique f in the span of the basis polynomials with mu_i f = data_i.
template <exact_field S>
InterpolantReport<S> interpolate(const InterpolationBasis<S>& basis, const Vector<S>& data,
                                 SolvePath path = SolvePath::block) {
  const auto& lambda = basis.source;
  const int n = lambda.size();
  if (data.size() != n) throw dimension_mismatch("data length differs from number of functionals");
  // data are values of the original mu_i; lambda = T mu
  Vector<S> rhs = lambda.transform * data;
  Vector<S> a = path == SolvePath::block ? block_back_substitute<S>(basis.gramian, lambda.kappas, rhs)
                                         : solve<S>(basis.gramian, rhs);
  InterpolantReport<S> r;
  r.method = basis.method;
  r.interpolant = Polynomial<S>(lambda.dimension());
  for (int j = 0; j < n; ++j) r.interpolant += a(j) * basis.polys[static_cast<std::size_t>(j)];
  r.coefficients = std::move(a);
  r.residuals.resize(n);
  for (int i = 0; i < n; ++i) r.residuals(i) = lambda.span[static_cast<std::size_t>(i)].apply(r.interpolant) - data(i);
  r.kappas = lambda.kappas;
  r.pivots = lambda.pivots;
  return r;
}

/// mu_i p for every functional in the span.
template <exact_field S>
Vector<S> functional_values(const GradedBasis<S>& lambda, const Polynomial<S>& p) {
  Vector<S> v(lambda.size());
  for (int i = 0; i < lambda.size(); ++i) v(i) = lambda.span[static_cast<std::size_t>(i)].apply(p);
  return v;
}

template <exact_field S>
InterpolantReport<S> interpolate(const InterpolationBasis<S>& basis, const Polynomial<S>& target,
                                 SolvePath path = SolvePath::block) {
  return interpolate(basis, functional_values(basis.source, target), path);
}

/// P p
template <exact_field S>
Polynomial<S> project(const InterpolationBasis<S>& basis, const Polynomial<S>& p) {
  return interpolate(basis, p).interpolant;
}

template <exact_field S>
InterpolantReport<S> schaback_interpolate(const GradedBasis<S>& lambda, const Vector<S>& data) {
  return interpolate(schaback_basis(lambda), data);
}
template <exact_field S>
InterpolantReport<S> schaback_interpolate(const GradedBasis<S>& lambda, const Polynomial<S>& target) {
  return interpolate(schaback_basis(lambda), target);
}
template <exact_field S>
InterpolantReport<S> least_interpolate(const GradedBasis<S>& lambda, const Vector<S>& data) {
  return interpolate(least_basis(lambda), data);
}
template <exact_field S>
InterpolantReport<S> least_interpolate(const GradedBasis<S>& lambda, const Polynomial<S>& target) {
  return interpolate(least_basis(lambda), target);
}

template <exact_field S>
const std::vector<Polynomial<S>>& range_basis(const InterpolationBasis<S>& basis) {
  return basis.polys;
}

/// Rows are coefficient vectors over all monomials of degree <= max_degree.
template <exact_field S>
Matrix<S> coefficient_matrix(const std::vector<Polynomial<S>>& polys, int d, int max_degree) {
  const auto monos = monomial_sequence(d, max_degree);
  Matrix<S> m = Matrix<S>::Zero(static_cast<Eigen::Index>(polys.size()), static_cast<Eigen::Index>(monos.size()));
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (polys[i].degree() > max_degree) throw std::invalid_argument("polynomial above coefficient matrix degree");
    for (std::size_t j = 0; j < monos.size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = polys[i].coefficient(monos[j]);
  }
  return m;
}

template <exact_field S>
int max_degree(const std::vector<Polynomial<S>>& polys) {
  int m = -1;
  for (const auto& p : polys) m = std::max(m, p.degree());
  return m;
}

template <exact_field S>
bool same_span(const std::vector<Polynomial<S>>& a, const std::vector<Polynomial<S>>& b, int d) {
  const int deg = std::max({max_degree(a), max_degree(b), 0});
  return same_row_space<S>(coefficient_matrix(a, d, deg), coefficient_matrix(b, d, deg));
}

template <exact_field S>
int span_dimension(const std::vector<Polynomial<S>>& polys, int d) {
  return static_cast<int>(rank<S>(coefficient_matrix(polys, d, std::max(max_degree(polys), 0))));
}

/// dim(span(polys) intersected with Pi_{<k}): the kernel of the restriction to
/// coefficients of degree >= k.
template <exact_field S>
int dimension_below(const std::vector<Polynomial<S>>& polys, int d, int k) {
  const int deg = std::max(max_degree(polys), 0);
  const Matrix<S> c = coefficient_matrix(polys, d, deg);
  const auto lower = static_cast<Eigen::Index>(monomial_count(d, k - 1));
  const Eigen::Index total = span_dimension(polys, d);
  if (lower >= c.cols()) return static_cast<int>(total);
  return static_cast<int>(total - rank<S>(Matrix<S>(c.rightCols(c.cols() - lower))));
}

/// Orthogonal projection onto the affine hull of X: x -> base + linear (x - base).
template <exact_field S>
struct AffineProjector {
  Point<S> base;
  Matrix<S> linear;
  int flat_dimension = 0;

  Point<S> operator()(const Point<S>& x) const { return base + linear * (x - base); }
};

template <exact_field S>
AffineProjector<S> flat_projector(const std::vector<Point<S>>& X) {
  if (X.empty()) throw std::invalid_argument("flat of an empty point set");
  const auto d = X.front().size();
  Matrix<S> diffs(static_cast<Eigen::Index>(X.size()), d);
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (X[i].size() != d) throw dimension_mismatch("points have differing dimensions");
    diffs.row(static_cast<Eigen::Index>(i)) = (X[i] - X.front()).transpose();
  }
  auto red = reduced_echelon<S>(diffs);
  AffineProjector<S> out{X.front(), Matrix<S>::Zero(d, d), static_cast<int>(red.rank())};
  if (red.rank() == 0) return out;
  // columns of B span the direction space of the flat
  Matrix<S> B = red.matrix.topRows(red.rank()).transpose();
  Matrix<S> gram = B.transpose() * B;
  out.linear = B * solve<S>(gram, Matrix<S>(B.transpose()));
  return out;
}

/// lambda ||.||^2 with lambda scaled so its last point weight is one.
template <exact_field S>
S normalized_norm_moment(const Functional<S>& lambda) {
  if (!lambda.is_point_functional() || lambda.weights().empty())
    throw std::invalid_argument("normalized_norm_moment needs a nonzero point functional");
  Functional<S> scaled = (S(1) / lambda.weights().back()) * lambda;
  return scaled.apply(norm_squared<S>(lambda.dimension()));
}

template <exact_field S>
struct InterpolantComparison {
  bool ranges_equal = false;
  bool interpolants_equal = false;
  int probes = 0;
  /// Monomials p with P_S p != P_BR p.
  std::vector<MultiIndex> differing_probes;
  /// lambda ||.||^2 for each lambda_i of order two, scaled to unit last point weight.
  std::vector<S> norm_moments;
  GradedBasis<S> basis;
  std::vector<Polynomial<S>> schaback_range;
  std::vector<Polynomial<S>> least_range;
};

/// Compares ran P_S with ran P_BR and P_S p with P_BR p for every monomial
/// of degree <= probe_degree, interpolating at the distinct points X.
template <exact_field S>
InterpolantComparison<S> compare_interpolants(const std::vector<Point<S>>& X, int probe_degree,
                                              std::optional<int> degree_cap = std::nullopt) {
  InterpolantComparison<S> out;
  out.basis = build_graded_basis<S>(point_evaluations(X), degree_cap);
  const auto sb = schaback_basis(out.basis);
  const auto lb = least_basis(out.basis);
  const int d = out.basis.dimension();
  out.schaback_range = sb.polys;
  out.least_range = lb.polys;
  out.ranges_equal = same_span(sb.polys, lb.polys, d);
  for (const auto& alpha : monomial_sequence(d, probe_degree)) {
    const auto p = Polynomial<S>::monomial(alpha);
    ++out.probes;
    if (!(project(sb, p) == project(lb, p))) out.differing_probes.push_back(alpha);
  }
  out.interpolants_equal = out.differing_probes.empty();
  for (int i = 0; i < out.basis.size(); ++i)
    if (out.basis.kappas[static_cast<std::size_t>(i)] == 2)
      out.norm_moments.push_back(normalized_norm_moment(out.basis.lambdas[static_cast<std::size_t>(i)]));
  return out;
}

}  // namespace radpoly
