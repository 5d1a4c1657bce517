#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "radpoly/functional.hpp"
#include "radpoly/linalg.hpp"
#include "radpoly/polynomial.hpp"

namespace radpoly::sampling {

/// Seeded source for the randomized suites. Draws go through explicit
/// modular reduction of mt19937_64 output so a seed reproduces the same
/// trials on every standard library.
class Source {
 public:
  explicit Source(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [lo, hi].
  int integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }
  bool coin() { return engine_() & 1u; }
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Integer point in [-5, 5]^d.
inline QPoint point(Source& src, int d, int bound = 5) {
  QPoint x(d);
  for (int i = 0; i < d; ++i) x(i) = src.integer(-bound, bound);
  return x;
}

/// n pairwise distinct integer points in [-5, 5]^d.
inline std::vector<QPoint> distinct_points(Source& src, int n, int d, int bound = 5) {
  std::vector<QPoint> X;
  while (static_cast<int>(X.size()) < n) {
    QPoint x = point(src, d, bound);
    bool fresh = true;
    for (const auto& y : X) fresh = fresh && !(x == y);
    if (fresh) X.push_back(std::move(x));
  }
  return X;
}

/// n distinct points x0 + t_i v on a line in Q^d.
inline std::vector<QPoint> collinear_points(Source& src, int n, int d) {
  QPoint base = point(src, d, 3), dir = point(src, d, 2);
  while (dir.isZero()) dir = point(src, d, 2);
  std::vector<int> ts;
  while (static_cast<int>(ts.size()) < n) {
    int t = src.integer(-4, 4);
    if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
  }
  std::vector<QPoint> X;
  for (int t : ts) X.push_back(base + Rational(t) * dir);
  return X;
}

/// n distinct points on a random affine plane in Q^d (d >= 3).
inline std::vector<QPoint> coplanar_points(Source& src, int n, int d) {
  QPoint base = point(src, d, 3), u, v;
  QMatrix uv(2, d);
  do {
    u = point(src, d, 2);
    v = point(src, d, 2);
    uv.row(0) = u.transpose();
    uv.row(1) = v.transpose();
  } while (rank<Rational>(uv) < 2);
  std::vector<QPoint> X;
  while (static_cast<int>(X.size()) < n) {
    QPoint x = base + Rational(src.integer(-3, 3)) * u + Rational(src.integer(-3, 3)) * v;
    bool fresh = true;
    for (const auto& y : X) fresh = fresh && !(x == y);
    if (fresh) X.push_back(std::move(x));
  }
  return X;
}

/// Integer weight in [-9, 9].
inline Rational weight(Source& src) { return Rational(src.integer(-9, 9)); }

inline QFunctional point_functional(Source& src, int n, int d) {
  auto X = distinct_points(src, n, d);
  std::vector<Rational> w;
  for (int i = 0; i < n; ++i) w.push_back(weight(src));
  return QFunctional::point_combination(std::move(X), std::move(w));
}

/// Random polynomial of degree <= max_degree with integer coefficients.
inline QPolynomial polynomial(Source& src, int d, int max_degree, int terms = 6) {
  QPolynomial p(d);
  const auto monos = monomial_sequence(d, max_degree);
  for (int t = 0; t < terms; ++t) p.add_term(monos[static_cast<std::size_t>(src.integer(0, static_cast<int>(monos.size()) - 1))], weight(src));
  return p;
}

/// Multi-index of total degree exactly k.
inline MultiIndex multi_index(Source& src, int d, int k) {
  const auto layer = homogeneous_indices(d, k);
  return layer[static_cast<std::size_t>(src.integer(0, static_cast<int>(layer.size()) - 1))];
}

/// Exactly orthogonal rational matrix: Cayley transform (I - K)(I + K)^{-1}
/// of a random integer skew-symmetric K.
inline QMatrix orthogonal_matrix(Source& src, int d) {
  QMatrix K = QMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      K(i, j) = src.integer(-3, 3);
      K(j, i) = -K(i, j);
    }
  QMatrix I = QMatrix::Identity(d, d);
  return QMatrix(I - K) * inverse<Rational>(QMatrix(I + K));
}

/// Rotation of the plane from a Pythagorean triple (a, b, c): [[a/c, b/c], [-b/c, a/c]].
inline QMatrix pythagorean_rotation(int a, int b, int c) {
  QMatrix A(2, 2);
  A << Rational(a, c), Rational(b, c), Rational(-b, c), Rational(a, c);
  return A;
}

/// Invertible integer matrix that is not orthogonal.
inline QMatrix invertible_matrix(Source& src, int d) {
  for (;;) {
    QMatrix A(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) A(i, j) = src.integer(-3, 3);
    if (!(determinant<Rational>(A) == 0) && !(QMatrix(A.transpose() * A) == QMatrix::Identity(d, d))) return A;
  }
}

}  // namespace radpoly::sampling
