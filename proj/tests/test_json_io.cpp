#include <doctest.h>

#include "radpoly/json_io.hpp"
#include "test_support.hpp"

using namespace radpoly;
using namespace radpoly::testing;
using json_io::Json;

TEST_CASE("rationals travel as canonical strings") {
  CHECK(json_io::read_rational(Json("-6/4")) == q("-3/2"));
  CHECK(json_io::read_rational(Json(7)) == 7);
  CHECK(json_io::write_rational(q("10/4")) == Json("5/2"));
  CHECK_THROWS_AS(json_io::read_rational(Json(0.5)), parse_error);
  CHECK_THROWS_AS(json_io::read_rational(Json("1/0")), parse_error);
}

TEST_CASE("polynomial round trip") {
  const QPolynomial p = q("1/2") * x(2, 0) * x(2, 1) - Rational(3) * x(2, 1) + one(2);
  const Json j = json_io::write_polynomial(p);
  CHECK(j.dump() ==
        R"({"d":2,"terms":[{"alpha":[0,0],"coeff":"1"},{"alpha":[0,1],"coeff":"-3"},{"alpha":[1,1],"coeff":"1/2"}]})");
  CHECK(json_io::read_polynomial(j) == p);
  CHECK_THROWS_AS(json_io::read_polynomial(j, 3), dimension_mismatch);
  CHECK_THROWS_AS(json_io::read_polynomial(Json::parse(R"({"d":2,"terms":[{"alpha":[1],"coeff":"1"}]})")),
                  dimension_mismatch);
  CHECK_THROWS_AS(json_io::read_polynomial(Json::parse(R"({"d":1,"terms":[{"alpha":[-1],"coeff":"1"}]})")), parse_error);
}

TEST_CASE("functional encodings") {
  const auto pts = json_io::read_functional(
      Json::parse(R"({"type":"points","points":[[0,0],[1,"1/2"]],"weights":[1,"-2"]})"), 2);
  CHECK(pts.apply(x(2, 1)) == -1);
  CHECK(json_io::read_functional(json_io::write_functional(pts), 2).apply(x(2, 1) * x(2, 1)) == q("-1/2"));

  const auto mom = json_io::read_functional(
      Json::parse(R"({"type":"moments","d":2,"cap":2,"moments":[{"alpha":[1,1],"value":"3/2"}]})"), 2);
  CHECK(mom.moment({1, 1}) == q("3/2"));
  CHECK(mom.cap() == 2);
  const auto again = json_io::read_functional(json_io::write_functional(mom), 2);
  CHECK(again.moment({1, 1}) == q("3/2"));

  const auto der = json_io::read_functional(Json::parse(R"({"type":"derivative","alpha":[2],"at":[3],"cap":3})"), 1);
  CHECK(der.apply(pow(x(1, 0), 3)) == 18);

  CHECK_THROWS_AS(json_io::read_functional(Json::parse(R"({"type":"spline"})"), 1), parse_error);
  CHECK_THROWS_AS(json_io::read_functional(Json::parse(R"({"type":"points","points":[[0]]})"), 1), parse_error);
  CHECK_THROWS_AS(
      json_io::read_functional(Json::parse(R"({"type":"moments","d":1,"cap":1,"moments":[{"alpha":[1],"value":1},{"alpha":[1],"value":2}]})"), 1),
      parse_error);
  // mixed functionals serialize both parts
  const Json mixed = json_io::write_functional(pts + mom);
  CHECK(mixed["type"] == "sum");
  CHECK(mixed["cap"] == 2);
}

TEST_CASE("problem documents") {
  const auto pb = json_io::read_problem(Json::parse(R"({"d":1,"points":[[0],[1]],"values":["0","1/3"]})"));
  CHECK(pb.points->size() == 2);
  CHECK((*pb.values)(1) == q("1/3"));
  CHECK_FALSE(pb.target.has_value());
  CHECK_THROWS_AS(json_io::read_problem(Json::parse(R"({"d":1,"values":[1]})")), parse_error);
  CHECK_THROWS_AS(json_io::read_problem(Json::parse(R"({"d":1,"points":[[0]],"values":[1,2]})")), parse_error);
  CHECK_THROWS_AS(json_io::read_problem(Json::parse(R"({"d":2,"points":[[0]]})")), dimension_mismatch);
  CHECK_THROWS_AS(json_io::read_problem(Json::parse(R"({"points":[[0]]})")), parse_error);
}

TEST_CASE("basis and report encodings") {
  const auto b = build_graded_basis<Rational>(point_evaluations<Rational>({pt({0}), pt({1}), pt({2})}));
  const Json jb = json_io::write_basis(b);
  CHECK(jb["kappas"] == Json::parse("[0,1,2]"));
  CHECK(jb["transform"][2] == Json::parse(R"(["1/2","-1","1/2"])"));
  const Json jr = json_io::write_report(schaback_interpolate(b, x(1, 0) * x(1, 0)));
  CHECK(jr["method"] == "schaback");
  CHECK(jr["interpolant_text"] == "x1^2");
  CHECK(jr["residuals"] == Json::parse(R"(["0","0","0"])"));
}
