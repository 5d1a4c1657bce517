#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "radpoly/errors.hpp"
#include "radpoly/functional.hpp"
#include "radpoly/graded_basis.hpp"
#include "radpoly/interpolants.hpp"

// JSON encodings shared by the command-line tool. Rationals travel as
// strings ("3", "-1/2"); integers are also accepted on input.

namespace radpoly::json_io {

using Json = nlohmann::ordered_json;

inline Rational read_rational(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw parse_error("expected a rational (integer or \"p/q\" string), got " + j.dump());
}

inline Json write_rational(const Rational& q) { return format_rational(q); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline int read_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw parse_error(std::string("expected an integer for '") + what + "'");
  return j.get<int>();
}

inline MultiIndex read_multi_index(const Json& j, int d) {
  if (!j.is_array()) throw parse_error("expected an exponent array, got " + j.dump());
  std::vector<int> e;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw parse_error("exponents must be nonnegative integers");
    e.push_back(v.get<int>());
  }
  if (static_cast<int>(e.size()) != d) throw dimension_mismatch("exponent array " + j.dump() + " has wrong length");
  return MultiIndex(std::move(e));
}

inline Json write_multi_index(const MultiIndex& a) { return a.exponents(); }

inline QPoint read_point(const Json& j, int d) {
  if (!j.is_array()) throw parse_error("expected a point array, got " + j.dump());
  if (static_cast<int>(j.size()) != d) throw dimension_mismatch("point " + j.dump() + " has wrong dimension");
  QPoint x(d);
  for (int i = 0; i < d; ++i) x(i) = read_rational(j[static_cast<std::size_t>(i)]);
  return x;
}

inline Json write_point(const QPoint& x) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) j.push_back(write_rational(x(i)));
  return j;
}

inline Json write_vector(const QVector& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(write_rational(v(i)));
  return j;
}

inline Json write_matrix(const QMatrix& m) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) j.push_back(write_vector(m.row(i).transpose()));
  return j;
}

/// {"d": 2, "terms": [{"alpha": [1, 1], "coeff": "1/2"}, ...]}, terms in graded order.
inline Json write_polynomial(const QPolynomial& p) {
  Json terms = Json::array();
  for (const auto& [alpha, c] : p.terms()) terms.push_back({{"alpha", write_multi_index(alpha)}, {"coeff", write_rational(c)}});
  return {{"d", p.dimension()}, {"terms", terms}};
}

inline QPolynomial read_polynomial(const Json& j, std::optional<int> expected_dim = std::nullopt) {
  const int d = read_int(field(j, "d"), "d");
  if (d < 1) throw parse_error("polynomial dimension must be positive");
  if (expected_dim && *expected_dim != d) throw dimension_mismatch("polynomial dimension differs from problem dimension");
  QPolynomial p(d);
  for (const auto& t : field(j, "terms")) p.add_term(read_multi_index(field(t, "alpha"), d), read_rational(field(t, "coeff")));
  return p;
}

inline QFunctional read_functional(const Json& j, int d) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "points") {
    std::vector<QPoint> pts;
    for (const auto& x : field(j, "points")) pts.push_back(read_point(x, d));
    std::vector<Rational> w;
    for (const auto& c : field(j, "weights")) w.push_back(read_rational(c));
    return QFunctional::point_combination(std::move(pts), std::move(w));
  }
  if (type == "moments") {
    if (read_int(field(j, "d"), "d") != d) throw dimension_mismatch("moment functional dimension differs");
    const int cap = read_int(field(j, "cap"), "cap");
    std::map<MultiIndex, Rational, GradedLess> values;
    for (const auto& m : field(j, "moments")) {
      auto alpha = read_multi_index(field(m, "alpha"), d);
      if (values.contains(alpha)) throw parse_error("duplicate moment " + alpha.str());
      values.emplace(std::move(alpha), read_rational(field(m, "value")));
    }
    return QFunctional::moments(d, cap, std::move(values));
  }
  if (type == "derivative") {
    return QFunctional::derivative(read_multi_index(field(j, "alpha"), d), read_point(field(j, "at"), d),
                                   read_int(field(j, "cap"), "cap"));
  }
  throw parse_error("unknown functional type '" + type + "'");
}

/// Point-only and moment-only functionals use their input encodings; mixed
/// ones carry both parts under type "sum".
inline Json write_functional(const QFunctional& f) {
  Json points = Json::array(), weights = Json::array();
  for (std::size_t i = 0; i < f.points().size(); ++i) {
    points.push_back(write_point(f.points()[i]));
    weights.push_back(write_rational(f.weights()[i]));
  }
  Json moments = Json::array();
  if (f.moment_part())
    for (const auto& [alpha, v] : f.moment_part()->values)
      moments.push_back({{"alpha", write_multi_index(alpha)}, {"value", write_rational(v)}});
  if (f.is_point_functional()) return {{"type", "points"}, {"points", points}, {"weights", weights}};
  if (f.points().empty())
    return {{"type", "moments"}, {"d", f.dimension()}, {"cap", f.moment_part()->cap}, {"moments", moments}};
  return {{"type", "sum"},          {"d", f.dimension()},         {"points", points}, {"weights", weights},
          {"cap", *f.cap()},        {"moments", moments}};
}

/// Input of the interpolation commands.
struct Problem {
  int dimension = 1;
  std::vector<QFunctional> functionals;
  /// Set when the problem was given as plain points.
  std::optional<std::vector<QPoint>> points;
  std::optional<QVector> values;
  std::optional<QPolynomial> target;
  std::optional<int> degree_cap;
};

inline Problem read_problem(const Json& j) {
  Problem pb;
  pb.dimension = read_int(field(j, "d"), "d");
  if (pb.dimension < 1) throw parse_error("dimension must be positive");
  const bool has_points = j.contains("points"), has_functionals = j.contains("functionals");
  if (has_points == has_functionals) throw parse_error("problem needs exactly one of 'points' or 'functionals'");
  if (has_points) {
    std::vector<QPoint> X;
    for (const auto& x : j.at("points")) X.push_back(read_point(x, pb.dimension));
    pb.functionals = point_evaluations(X);
    pb.points = std::move(X);
  } else {
    for (const auto& f : j.at("functionals")) pb.functionals.push_back(read_functional(f, pb.dimension));
  }
  if (pb.functionals.empty()) throw parse_error("problem has no functionals");
  if (j.contains("values")) {
    const auto& v = j.at("values");
    if (!v.is_array() || v.size() != pb.functionals.size())
      throw parse_error("'values' must have one entry per functional");
    QVector y(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) y(static_cast<Eigen::Index>(i)) = read_rational(v[i]);
    pb.values = std::move(y);
  }
  if (j.contains("target")) pb.target = read_polynomial(j.at("target"), pb.dimension);
  if (j.contains("cap")) pb.degree_cap = read_int(j.at("cap"), "cap");
  return pb;
}

inline Json write_basis(const QGradedBasis& b) {
  Json pivots = Json::array();
  for (const auto& p : b.pivots) pivots.push_back(write_multi_index(p));
  return {{"d", b.dimension()},
          {"n", b.size()},
          {"degree_cap", b.degree_cap},
          {"kappas", b.kappas},
          {"pivots", pivots},
          // row i holds the coefficients of lambda_i over the input functionals, in file order
          {"transform", write_matrix(b.transform)}};
}

inline Json write_report(const InterpolantReport<Rational>& r) {
  Json pivots = Json::array();
  for (const auto& p : r.pivots) pivots.push_back(write_multi_index(p));
  return {{"method", to_string(r.method)},
          {"kappas", r.kappas},
          {"pivots", pivots},
          {"coefficients", write_vector(r.coefficients)},
          {"interpolant", write_polynomial(r.interpolant)},
          {"interpolant_text", to_string(r.interpolant)},
          {"residuals", write_vector(r.residuals)}};
}

}  // namespace radpoly::json_io
