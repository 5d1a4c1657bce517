#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "radpoly/functional.hpp"
#include "radpoly/graded_basis.hpp"
#include "radpoly/interpolants.hpp"
#include "radpoly/sampling.hpp"

namespace radpoly::verification {

struct Failure {
  std::string check;
  std::string detail;
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  int cases = 0;
  std::vector<Failure> failures;
  double wall_seconds = 0;

  bool passed() const { return failures.empty(); }
};

struct Options {
  /// Negates the quantity under test; the harness must then report failures.
  bool flip_sign = false;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"micchelli", "schaback-lemma", "projector", "invariance"};
  return names;
}

namespace detail {

inline std::string describe(const QFunctional& f) {
  std::string s = "functional(d=" + std::to_string(f.dimension());
  if (!f.points().empty()) {
    s += ", points=[";
    for (std::size_t i = 0; i < f.points().size(); ++i) {
      s += i ? "; " : "";
      s += format_rational(f.weights()[i]) + "@(";
      for (Eigen::Index j = 0; j < f.points()[i].size(); ++j) s += (j ? "," : "") + format_rational(f.points()[i](j));
      s += ")";
    }
    s += "]";
  }
  if (f.moment_part()) s += ", moments=" + std::to_string(f.moment_part()->values.size()) + " cap " + std::to_string(f.moment_part()->cap);
  return s + ")";
}

inline std::string describe(const std::vector<QPoint>& X) {
  std::string s = "X=[";
  for (std::size_t i = 0; i < X.size(); ++i) {
    s += i ? "; " : "";
    for (Eigen::Index j = 0; j < X[i].size(); ++j) s += (j ? "," : "") + format_rational(X[i](j));
  }
  return s + "]";
}

/// Moment cap used for derivative-built functionals.
constexpr int derivative_cap = 8;

/// A functional of order >= k: a combination of the high-order part of a
/// graded basis of random points, or of derivative functionals, or both.
inline QFunctional ordered_functional(sampling::Source& src, int d, int k) {
  const int kind = src.integer(0, 2);
  QFunctional f = QFunctional::zero(d);
  while (f.is_structurally_zero()) {
    f = QFunctional::zero(d);
    if (kind != 1) {
      const int n = static_cast<int>(monomial_count(d, k - 1)) + src.integer(1, 3);
      auto basis = build_graded_basis<Rational>(point_evaluations(sampling::distinct_points(src, n, d)));
      for (int i = 0; i < basis.size(); ++i)
        if (basis.kappas[static_cast<std::size_t>(i)] >= k) f += sampling::weight(src) * basis.lambdas[static_cast<std::size_t>(i)];
    }
    if (kind != 0) {
      const int terms = src.integer(1, 2);
      for (int t = 0; t < terms; ++t) {
        auto alpha = sampling::multi_index(src, d, k + src.integer(0, 1));
        f += sampling::weight(src) * QFunctional::derivative(alpha, sampling::point(src, d, 3), derivative_cap);
      }
    }
  }
  return f;
}

/// Order with a search cap wide enough for every functional ordered_functional builds.
inline Order order_of(const QFunctional& f) {
  return f.is_point_functional() ? order(f) : order(f, *f.cap());
}

inline Rational sign_adjusted(const Rational& v, const Options& opt) { return opt.flip_sign ? Rational(-v) : v; }

struct Context {
  Report& report;
  void check(bool ok, const std::string& name, const std::string& detail) {
    ++report.cases;
    if (!ok) report.failures.push_back({name, detail});
  }
};

inline void micchelli_trial(sampling::Source& src, Context& ctx, const Options& opt) {
  const int d = src.integer(1, 3);
  const int k = src.integer(1, 3);
  const QFunctional f = ordered_functional(src, d, k);
  const Order o = order_of(f);
  if (!o.is_finite()) return;
  const std::string who = describe(f) + ", k=" + std::to_string(k) + ", order=" + std::to_string(o.value);

  const Rational q = sign_adjusted(tensor_apply_radial(f, f, k), opt);
  const Rational signed_q = k % 2 ? Rational(-q) : q;
  ctx.check(o.value >= k, "population-order", who);
  ctx.check(signed_q >= 0, "proposition-nonnegative", who + ", (-1)^k Q=" + format_rational(signed_q));
  ctx.check((q == 0) == (o.value >= k + 1), "proposition-equality", who + ", Q=" + format_rational(q));

  bool all_vanish = true;
  for (int r = 0; r <= k; ++r) all_vanish = all_vanish && sign_adjusted(tensor_apply_radial(f, f, r), opt) == 0;
  ctx.check(all_vanish == (o.value >= k + 1), "corollary-vanishing", who);

  // double sum over a random pair of point functionals
  const QFunctional g = sampling::point_functional(src, src.integer(1, 4), d);
  const QFunctional h = sampling::point_functional(src, src.integer(1, 4), d);
  Rational direct = 0;
  for (std::size_t i = 0; i < g.points().size(); ++i)
    for (std::size_t j = 0; j < h.points().size(); ++j) {
      const Rational r2 = (g.points()[i] - h.points()[j]).squaredNorm();
      direct += g.weights()[i] * h.weights()[j] * power(r2, k);
    }
  const Rational expanded = sign_adjusted(tensor_apply_radial(g, h, k), opt);
  ctx.check(expanded == direct, "double-sum", describe(g) + " x " + describe(h) + ", k=" + std::to_string(k));
}

inline void schaback_lemma_trial(sampling::Source& src, Context& ctx, const Options& opt) {
  const int d = src.integer(1, 3);
  const int k = src.integer(1, 3);
  const QFunctional f = ordered_functional(src, d, k);
  const Order o = order_of(f);
  if (!o.is_finite()) return;
  for (int l = 1; l <= 3; ++l) {
    QPolynomial w = radial_image(f, l);
    if (opt.flip_sign) w = w + QPolynomial::constant(d, 1);
    for (int kk = 0; kk <= 2 * l; ++kk) {
      const std::string who = describe(f) + ", l=" + std::to_string(l) + ", k=" + std::to_string(kk) +
                              ", deg=" + std::to_string(w.degree()) + ", order=" + std::to_string(o.value);
      if (o.value >= kk + 1) ctx.check(w.degree() < 2 * l - kk, "lemma-forward", who);
      // the converse only holds up to k = l; past that, c = 0 forces b > l
      if (kk <= l && w.degree() < 2 * l - kk) ctx.check(o.value >= kk + 1, "lemma-converse", who);
    }
  }

  // Schaback basis structure on a random point set
  const int n = src.integer(1, 8);
  const auto X = sampling::distinct_points(src, n, d);
  const auto basis = build_graded_basis<Rational>(point_evaluations(X));
  const auto sb = schaback_basis(basis);
  for (int j = 0; j < n; ++j)
    ctx.check(sb.polys[static_cast<std::size_t>(j)].degree() == basis.kappas[static_cast<std::size_t>(j)], "schaback-degree",
              describe(X) + ", j=" + std::to_string(j));
  QMatrix G = sb.gramian;
  if (opt.flip_sign) G = G.transpose().eval();
  ctx.check(is_block_upper_triangular(G, basis.kappas), "gramian-block-triangular", describe(X));
  for (auto [lo, hi] : kappa_blocks(basis.kappas))
    ctx.check(!(determinant<Rational>(QMatrix(G.block(lo, lo, hi - lo, hi - lo))) == 0), "gramian-diagonal-block",
              describe(X) + ", kappa=" + std::to_string(basis.kappas[static_cast<std::size_t>(lo)]));
}

inline void projector_trial(sampling::Source& src, Context& ctx, const Options& opt) {
  const int d = src.integer(1, 3);
  const int n = src.integer(1, 8);
  const auto X = sampling::distinct_points(src, n, d);
  const auto basis = build_graded_basis<Rational>(point_evaluations(X));
  for (Method m : {Method::schaback, Method::least}) {
    const auto ib = interpolation_basis(basis, m);
    const std::string who = describe(X) + ", " + to_string(m);
    const QPolynomial p = sampling::polynomial(src, d, src.integer(0, 6));
    QPolynomial Pp = project(ib, p);
    if (opt.flip_sign) Pp = -Pp;
    bool interpolates = true;
    for (const auto& mu : basis.span) interpolates = interpolates && mu.apply(Pp) == mu.apply(p);
    ctx.check(interpolates, "interpolation", who);
    ctx.check(project(ib, Pp) == Pp, "idempotence", who);
    ctx.check(Pp.degree() <= p.degree(), "degree-reduction",
              who + ", deg p=" + std::to_string(p.degree()) + ", deg Pp=" + std::to_string(Pp.degree()));
    const auto& range = range_basis(ib);
    const QPolynomial q = range[static_cast<std::size_t>(src.integer(0, n - 1))];
    ctx.check(project(ib, q) == q, "range-fixed", who);
    for (int k = 0; k <= basis.max_kappa() + 1; ++k)
      ctx.check(dimension_below(range, d, k) + basis.count_at_least(k) == n, "minimal-degree-dimension",
                who + ", k=" + std::to_string(k));
  }
}

inline void invariance_trial(sampling::Source& src, Context& ctx, const Options& opt) {
  const int d = src.integer(2, 3);
  const int shape = src.integer(0, 2);
  const int n = src.integer(2, 6);
  std::vector<QPoint> X = shape == 0 ? sampling::collinear_points(src, n, d)
                        : shape == 1 && d == 3 ? sampling::coplanar_points(src, n, d)
                                               : sampling::distinct_points(src, n, d);
  const auto basis = build_graded_basis<Rational>(point_evaluations(X));
  const QPolynomial p = sampling::polynomial(src, d, src.integer(0, 4));
  const QPoint shift = sampling::point(src, d, 3);
  const QMatrix A = sampling::orthogonal_matrix(src, d);
  const QMatrix B = sampling::invertible_matrix(src, d);
  auto moved = [&](const QMatrix& M, const QPoint& b) {
    std::vector<QPoint> Y;
    for (const auto& x : X) Y.push_back(M * x + b);
    return Y;
  };
  const auto shifted = build_graded_basis<Rational>(point_evaluations(moved(QMatrix::Identity(d, d), shift)));
  const auto rotated = build_graded_basis<Rational>(point_evaluations(moved(A, QPoint::Zero(d))));
  const auto flat = flat_projector(X);
  const QPoint off = sampling::point(src, d, 5);

  QPolynomial schaback_p;
  for (Method m : {Method::schaback, Method::least}) {
    const std::string who = describe(X) + ", " + to_string(m);
    const auto ib = interpolation_basis(basis, m);
    QPolynomial Pp = project(ib, p);
    if (opt.flip_sign) Pp = Pp + QPolynomial::variable(d, 0);
    if (m == Method::schaback) schaback_p = Pp;
    // P_X p(. + y) = (P_{X+y} p)(. + y)
    ctx.check(project(ib, translate(p, shift)) == translate(project(interpolation_basis(shifted, m), p), shift),
              "translation", who);
    // P_X p(A .) = (P_{AX} p)(A .) for orthogonal A
    ctx.check(project(ib, compose_linear(p, A)) == compose_linear(project(interpolation_basis(rotated, m), p), A),
              "orthogonal-equivariance", who);
    // ||x - y||^2 splits orthogonally over the flat, but lambda ||P x - .||^{2j}
    // survives for j >= kappa / 2, so P_S is flat invariant only while kappa <= 1
    if (m == Method::least || basis.max_kappa() <= 1)
      ctx.check(evaluate(Pp, off) == evaluate(Pp, flat(off)), "flat-invariance", who);
  }
  if (flat.flat_dimension <= 1 && basis.max_kappa() <= 1) {
    ctx.check(schaback_p == project(least_basis(basis), p), "one-flat-coincidence", describe(X));
  }
  // ran P_BR at BX equals {g(B^t .) : g in ran P_BR at X}
  std::vector<QPolynomial> pulled;
  for (const auto& g : least_basis(basis).polys) pulled.push_back(compose_linear(g, QMatrix(B.transpose())));
  const auto general = build_graded_basis<Rational>(point_evaluations(moved(B, QPoint::Zero(d))));
  ctx.check(same_span(least_basis(general).polys, pulled, d) != opt.flip_sign, "least-linear-equivariance",
            describe(X));
}

}  // namespace detail

/// Runs one named suite; trials are drawn from a single seeded source so a
/// (suite, seed, trials) triple always produces the same report.
inline Report run_suite(const std::string& suite, std::uint64_t seed, int trials, const Options& opt = {}) {
  using trial_fn = void (*)(sampling::Source&, detail::Context&, const Options&);
  trial_fn fn = nullptr;
  if (suite == "micchelli") fn = detail::micchelli_trial;
  if (suite == "schaback-lemma") fn = detail::schaback_lemma_trial;
  if (suite == "projector") fn = detail::projector_trial;
  if (suite == "invariance") fn = detail::invariance_trial;
  if (!fn) throw std::invalid_argument("unknown verification suite: " + suite);

  Report report{suite, seed, trials, 0, {}, 0};
  detail::Context ctx{report};
  sampling::Source src(seed);
  const auto start = std::chrono::steady_clock::now();
  for (int t = 0; t < trials; ++t) {
    try {
      fn(src, ctx, opt);
    } catch (const std::exception& e) {
      report.failures.push_back({"exception", "trial " + std::to_string(t) + ": " + e.what()});
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace radpoly::verification
