#include <doctest.h>

#include "radpoly/sampling.hpp"
#include "radpoly/verification.hpp"
#include "test_support.hpp"

using namespace radpoly;
using namespace radpoly::testing;

TEST_CASE("point functionals apply exactly") {
  CHECK(gridded_functional().apply(x(2, 0) * x(2, 1)) == 1);
  const auto X = four_points(1, 2);
  const QFunctional lambda = QFunctional::point_combination(X, {2, -1, -2, 1});
  CHECK(lambda.apply(norm_squared<Rational>(2)) == 2);
  CHECK(lambda.apply(QPolynomial(2)) == 0);
  CHECK(second_difference()(x(1, 0) * x(1, 0)) == 2);
  CHECK_THROWS_AS(QFunctional::point_combination({pt({1}), pt({1})}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(lambda.apply(x(1, 0)), dimension_mismatch);
}

TEST_CASE("combinations merge coinciding points") {
  const QFunctional f = delta(pt({1})) - delta(pt({0}));
  const QFunctional g = delta(pt({0})) - delta(pt({1}));
  CHECK((f + g).is_structurally_zero());
  CHECK((f + g).points().empty());
  const QFunctional h = f + Rational(2) * delta(pt({1}));
  CHECK(h.points().size() == 2);
  CHECK(h.apply(one(1)) == 2);
}

TEST_CASE("derivative functionals") {
  const auto d1 = QFunctional::derivative({1}, pt({0}), 3);
  CHECK(d1.moment({0}) == 0);
  CHECK(d1.moment({1}) == 1);
  CHECK(d1.moment({2}) == 0);
  CHECK(d1.moment({3}) == 0);
  CHECK_THROWS_AS(d1.moment({4}), cap_exceeded);
  CHECK_THROWS_AS(d1.apply(pow(x(1, 0), 4)), cap_exceeded);

  const auto d2 = QFunctional::derivative({2}, pt({0}), 4);
  for (int g = 0; g <= 4; ++g) CHECK(d2.moment({g}) == (g == 2 ? 2 : 0));

  const auto dx = QFunctional::derivative({1, 0}, pt({1, 1}), 2);
  CHECK(dx.moment({1, 1}) == 1);
  CHECK(dx.moment({2, 0}) == 2);
  CHECK(dx.moment({0, 2}) == 0);
  CHECK(dx.apply(x(2, 0) * x(2, 0) + Rational(3) * x(2, 0) * x(2, 1)) == 5);
}

TEST_CASE("point to moment conversion agrees up to the cap") {
  const QFunctional lambda = gridded_functional();
  const QFunctional m = lambda.to_moments(3);
  for (const auto& alpha : monomial_sequence(2, 3)) CHECK(m.moment(alpha) == lambda.moment(alpha));
  CHECK_THROWS_AS(m.moment({4, 0}), cap_exceeded);
  CHECK(m.cap() == 3);
}

TEST_CASE("order") {
  CHECK(order(second_difference()) == Order{Order::Kind::finite, 2});
  CHECK(order(delta(pt({q("3/7"), 2}))) == Order{Order::Kind::finite, 0});
  CHECK(order(QFunctional::zero(2), 4).value == -1);
  CHECK(order(QFunctional::zero(2), 4).kind == Order::Kind::zero);
  CHECK(order(gridded_functional()).value == 2);
  const auto d3 = QFunctional::derivative({3}, pt({1}), 4);
  CHECK(order(d3, 4).value == 3);
  CHECK(order(d3, 2).kind == Order::Kind::exceeds_cap);
  CHECK_THROWS_AS(order(d3, 5), cap_exceeded);
  CHECK_THROWS_AS(order(d3), std::invalid_argument);
}

TEST_CASE("radial power expansion") {
  const auto e11 = radial_power_expansion(1, 1);
  REQUIRE(e11.size() == 3);
  CHECK((e11[0].a == 1 && e11[0].c == 0 && e11[0].beta == MultiIndex{0} && e11[0].coeff == 1));
  CHECK((e11[1].a == 0 && e11[1].c == 0 && e11[1].beta == MultiIndex{1} && e11[1].coeff == -2));
  CHECK((e11[2].a == 0 && e11[2].c == 1 && e11[2].beta == MultiIndex{0} && e11[2].coeff == 1));

  for (int d = 1; d <= 3; ++d) {
    const auto e0 = radial_power_expansion(0, d);
    REQUIRE(e0.size() == 1);
    CHECK(e0[0].coeff == 1);
    CHECK(radial_expansion_polynomial<Rational>(0, d) == one(2 * d));
  }
  CHECK(radial_power_expansion(2, 2).size() == 10);

  for (int d = 1; d <= 3; ++d) {
    QPolynomial dist2(2 * d);
    for (int i = 0; i < d; ++i) dist2 += pow(x(2 * d, i) - x(2 * d, d + i), 2);
    for (int k = 0; k <= 4; ++k) CHECK(radial_expansion_polynomial<Rational>(k, d) == pow(dist2, k));
  }
}

TEST_CASE("tensor application and inner product") {
  const auto lam = second_difference();
  CHECK(tensor_apply_radial(lam, lam, 2) == 24);
  CHECK(tensor_apply_radial(lam, lam, 1) == 0);
  CHECK(inner_product_k(lam, lam, 2) == 24);
  CHECK(inner_product_k(lam, lam, 1) == 0);
  for (int k = 1; k <= 4; ++k) CHECK(tensor_apply_radial(delta(pt({2, -1})), delta(pt({2, -1})), k) == 0);
  const QFunctional diff = delta(pt({1})) - delta(pt({0}));
  CHECK(inner_product_k(diff, diff, 1) == 2);
  const auto d1 = QFunctional::derivative({1}, pt({0}), 2);
  CHECK_THROWS_AS(tensor_apply_radial(d1, d1, 2), cap_exceeded);
}

TEST_CASE("double sum oracle on random point functionals") {
  sampling::Source src(11);
  for (int t = 0; t < 60; ++t) {
    const int d = src.integer(1, 3), k = src.integer(0, 4);
    const auto g = sampling::point_functional(src, src.integer(1, 4), d);
    const auto h = sampling::point_functional(src, src.integer(1, 4), d);
    Rational direct = 0;
    for (std::size_t i = 0; i < g.points().size(); ++i)
      for (std::size_t j = 0; j < h.points().size(); ++j)
        direct += g.weights()[i] * h.weights()[j] * power(Rational((g.points()[i] - h.points()[j]).squaredNorm()), k);
    CHECK(tensor_apply_radial(g, h, k) == direct);
    CHECK(inner_product_k(g, h, k) == inner_product_k(h, g, k));
    const auto f = sampling::point_functional(src, 2, d);
    CHECK(inner_product_k(g + Rational(5) * f, h, k) == inner_product_k(g, h, k) + Rational(5) * inner_product_k(f, h, k));
  }
}

TEST_CASE("positivity and the order characterization") {
  sampling::Source src(5);
  for (int t = 0; t < 60; ++t) {
    const int d = src.integer(1, 3), k = src.integer(1, 3);
    const auto f = verification::detail::ordered_functional(src, d, k);
    const auto o = verification::detail::order_of(f);
    REQUIRE(o.is_finite());
    CHECK(o.value >= k);
    const Rational Q = inner_product_k(f, f, k);
    CHECK(Q >= 0);
    CHECK((Q == 0) == (o.value >= k + 1));
  }
}

TEST_CASE("radial images") {
  const QPoint y = pt({q("1/2"), -3});
  const auto x1 = x(2, 0), x2 = x(2, 1);
  const QPolynomial expected = x1 * x1 + x2 * x2 - Rational(2) * y(0) * x1 - Rational(2) * y(1) * x2 +
                               QPolynomial::constant(2, y.squaredNorm());
  CHECK(radial_image(delta(y), 1) == expected);
  CHECK(radial_image(second_difference(), 2) == poly(1, {{{2}, 12}, {{1}, -24}, {{0}, 14}}));
  CHECK(radial_image(QFunctional::zero(2), 2).is_zero());

  // slot consistency: the image at x equals lambda applied to ||x - .||^{2l}
  sampling::Source src(13);
  for (int t = 0; t < 20; ++t) {
    const int d = src.integer(1, 3), l = src.integer(0, 3);
    const auto f = sampling::point_functional(src, src.integer(1, 4), d);
    const QPoint at = sampling::point(src, d);
    QPolynomial dist2(d);
    for (int i = 0; i < d; ++i) dist2 += pow(QPolynomial::constant(d, at(i)) - x(d, i), 2);
    CHECK(evaluate(radial_image(f, l), at) == f.apply(pow(dist2, l)));
  }
}

TEST_CASE("least part") {
  CHECK(least_part(second_difference()) == x(1, 0) * x(1, 0));
  CHECK(least_part(delta(pt({4, 1}))) == one(2));
  CHECK(least_part(gridded_functional()) == x(2, 0) * x(2, 1));
  CHECK(least_part(QFunctional::zero(1), 3).is_zero());
  CHECK(least_part(QFunctional::derivative({0, 2}, pt({1, 1}), 3), 3) == x(2, 1) * x(2, 1));
  CHECK_THROWS_AS(least_part(QFunctional::derivative({3}, pt({0}), 3), 2), cap_exceeded);
}
