#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "invchar/error.hpp"

namespace invchar {

using BigInt = boost::multiprecision::mpz_int;
/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator by the GMP backend.
using Rational = boost::multiprecision::mpq_rational;

inline BigInt numer(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denom(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denom(q) == 1; }

inline int sign(const Rational& q) { return q.sign(); }

/// Parses "p/q" or "p" (optional leading sign). Whitespace is not allowed.
inline Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto to_big = [](std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return BigInt(std::string(s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_int(text)) throw Error(ErrorKind::Parse, "bad rational literal '" + std::string(text) + "'");
    return Rational(to_big(text));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+')
    throw Error(ErrorKind::Parse, "bad rational literal '" + std::string(text) + "'");
  BigInt d = to_big(den);
  if (d == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
  return Rational(to_big(num), d);
}

inline std::string to_string(const Rational& q) { return q.str(); }

inline Rational binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return Rational(0);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return Rational(r);
}

}  // namespace invchar
