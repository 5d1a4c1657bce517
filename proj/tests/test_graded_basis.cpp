#include <doctest.h>

#include "radpoly/sampling.hpp"
#include "test_support.hpp"

using namespace radpoly;
using namespace radpoly::testing;

namespace {

/// n - rank of the moment matrix (mu_i ()^alpha) over |alpha| < k.
int annihilator_dimension(const std::vector<QFunctional>& mus, int k) {
  const int n = static_cast<int>(mus.size());
  if (k <= 0) return n;
  const auto monos = monomial_sequence(mus.front().dimension(), k - 1);
  QMatrix V(n, static_cast<Eigen::Index>(monos.size()));
  for (int i = 0; i < n; ++i)
    for (std::size_t j = 0; j < monos.size(); ++j) V(i, static_cast<Eigen::Index>(j)) = mus[static_cast<std::size_t>(i)].moment(monos[j]);
  return n - static_cast<int>(rank<Rational>(V));
}

bool unit_upper_triangular(const QMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j <= i; ++j)
      if (!(m(i, j) == (i == j ? 1 : 0))) return false;
  return true;
}

}  // namespace

TEST_CASE("two points on the line") {
  const auto b = build_graded_basis<Rational>(point_evaluations<Rational>({pt({0}), pt({1})}));
  CHECK(b.kappas == std::vector<int>{0, 1});
  CHECK(b.pivots == std::vector<MultiIndex>{{0}, {1}});
  CHECK(b.transform == mat(2, 2, {1, 0, -1, 1}));
  CHECK(b.lambdas[1].apply(x(1, 0)) == 1);
}

TEST_CASE("three points on the line") {
  const auto b = build_graded_basis<Rational>(point_evaluations<Rational>({pt({0}), pt({1}), pt({2})}));
  CHECK(b.kappas == std::vector<int>{0, 1, 2});
  CHECK(b.transform.row(2) == mat(1, 3, {q("1/2"), -1, q("1/2")}));
  CHECK(b.lambdas[2].apply(x(1, 0) * x(1, 0)) == 1);
  CHECK(b.degree_cap == 2);
}

TEST_CASE("gridded square") {
  const auto b = build_graded_basis<Rational>(point_evaluations(four_points(1, 1)));
  CHECK(b.kappas == std::vector<int>{0, 1, 1, 2});
  CHECK(b.pivots[3] == MultiIndex{1, 1});
  // lambda_4 is d11 - d10 - d01 + d00
  CHECK(b.transform.row(3) == mat(1, 4, {1, -1, -1, 1}));
  for (const auto& p : {one(2), x(2, 0), x(2, 1), x(2, 0) * x(2, 1), x(2, 0) * x(2, 0)})
    CHECK(b.lambdas[3].apply(p) == gridded_functional().apply(p));
  CHECK(verify_graded(b, 2));
  CHECK(verify_graded(b, 0));
  CHECK(unit_upper_triangular(pivot_matrix(b)));
}

TEST_CASE("corrupted basis fails verification") {
  auto b = build_graded_basis<Rational>(point_evaluations(four_points(1, 1)));
  std::swap(b.lambdas[1], b.lambdas[3]);
  CHECK_FALSE(verify_graded(b, 2));
  CHECK(verify_graded(b, 0));
}

TEST_CASE("failure modes") {
  CHECK_THROWS_AS(build_graded_basis<Rational>(point_evaluations<Rational>({pt({0, 0}), pt({1, 1}), pt({0, 0})})),
                  rank_deficient);
  try {
    build_graded_basis<Rational>(point_evaluations<Rational>({pt({0}), pt({1}), pt({0})}));
  } catch (const rank_deficient& e) {
    CHECK(e.achieved_rank == 2);
    CHECK(e.requested_rank == 3);
  }
  // three collinear points need degree 2
  CHECK_THROWS_AS(build_graded_basis<Rational>(point_evaluations<Rational>({pt({0, 0}), pt({1, 1}), pt({2, 2})}), 1),
                  rank_deficient);
  const std::vector<QFunctional> mixed{delta(pt({0})), QFunctional::derivative({1}, pt({0}), 2)};
  CHECK_THROWS_AS(build_graded_basis<Rational>(mixed), std::invalid_argument);
  CHECK_THROWS_AS(build_graded_basis<Rational>(mixed, 3), cap_exceeded);
  const auto b = build_graded_basis<Rational>(mixed, 2);
  CHECK(b.kappas == std::vector<int>{0, 1});
}

TEST_CASE("derivative spans") {
  const std::vector<QFunctional> mus{delta(pt({0})), QFunctional::derivative({1}, pt({0}), 4), delta(pt({1}))};
  const auto b = build_graded_basis<Rational>(mus, 2);
  CHECK(b.kappas == std::vector<int>{0, 1, 2});
  // f(1) - f(0) - f'(0) kills Pi_1 and has x^2 moment 1
  CHECK(b.transform.row(2) == mat(1, 3, {-1, -1, 1}));
  for (int k = 0; k <= 3; ++k) CHECK(verify_graded(b, k));
}

TEST_CASE("random point sets: invariants and tie-break independence") {
  sampling::Source src(21);
  for (int t = 0; t < 40; ++t) {
    const int d = src.integer(1, 3), n = src.integer(1, 10);
    const auto mus = point_evaluations(sampling::distinct_points(src, n, d));
    const auto lex = build_graded_basis<Rational>(mus);
    const auto colex = build_graded_basis<Rational>(mus, std::nullopt, MonomialOrder::graded_colex);
    REQUIRE(lex.size() == n);
    CHECK(!(determinant<Rational>(lex.transform) == 0));
    CHECK(std::is_sorted(lex.kappas.begin(), lex.kappas.end()));
    CHECK(unit_upper_triangular(pivot_matrix(lex)));
    CHECK(unit_upper_triangular(pivot_matrix(colex)));
    CHECK(lex.kappas == colex.kappas);
    for (int k = 0; k <= lex.max_kappa() + 1; ++k) {
      CHECK(verify_graded(lex, k));
      CHECK(verify_graded(colex, k));
      CHECK(lex.count_at_least(k) == annihilator_dimension(mus, k));
    }
  }
}
