#pragma once

#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include "radpoly/errors.hpp"

namespace radpoly {

/// Exact rational scalar, always in lowest terms with a positive denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Scalars the exact algorithms are written against: a field with exact equality.
template <typename S>
concept exact_field = requires(S a, S b) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { a == b } -> std::convertible_to<bool>;
  S(0);
  S(1);
};

template <typename S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <typename S>
using Point = Vector<S>;

using QMatrix = Matrix<Rational>;
using QVector = Vector<Rational>;
using QPoint = Point<Rational>;

/// Parses "p", "-p" or "p/q" (q != 0) into canonical form.
inline Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den)) throw parse_error("malformed rational: '" + std::string(text) + "'");
  auto strip_plus = [](std::string_view s) { return std::string(s.front() == '+' ? s.substr(1) : s); };
  Integer n(strip_plus(num)), d(strip_plus(den));
  if (d == 0) throw parse_error("zero denominator: '" + std::string(text) + "'");
  return Rational(n, d);
}

/// Canonical text: "p" for integers, "p/q" otherwise.
inline std::string format_rational(const Rational& q) { return q.str(); }

/// Rounds |q| * 10^digits half-up and renders a fixed-point decimal.
inline std::string format_decimal(const Rational& q, int digits) {
  if (digits < 0) digits = 0;
  Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(digits));
  Rational scaled = boost::multiprecision::abs(q) * Rational(scale);
  Integer num = boost::multiprecision::numerator(scaled);
  Integer den = boost::multiprecision::denominator(scaled);
  Integer rounded = (2 * num + den) / (2 * den);
  std::string body = rounded.str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits))
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  bool negative = q < 0 && rounded != 0;
  return negative ? "-" + body : body;
}

inline Rational factorial(int n) {
  Integer r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return Rational(r);
}

}  // namespace radpoly
