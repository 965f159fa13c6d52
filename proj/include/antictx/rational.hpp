#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "antictx/errors.hpp"

namespace antictx {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
using Rational = boost::multiprecision::mpq_rational;

namespace detail {

inline bool is_digit_run(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace detail

/// Parses "p/q", "-p/q" or an integer literal.
inline Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!detail::is_digit_run(num) || !detail::is_digit_run(den)) {
    throw ParseError("malformed rational literal '" + std::string(text) + "'");
  }
  boost::multiprecision::mpz_int n{std::string(num)};
  boost::multiprecision::mpz_int d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  if (text.front() == '-') n = -n;
  return Rational(n, d);
}

/// "p/q", or just "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace antictx
