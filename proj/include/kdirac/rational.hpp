#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace kdirac {

/// Exact rational scalar. GMP keeps values canonical: lowest terms,
/// denominator > 0, sign carried by the numerator.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Serializes as "p/q", or "p" when q = 1.
inline std::string to_string(const Rational& q) { return q.str(); }

/// q^e for integer e (e < 0 requires q != 0).
inline Rational rational_pow(const Rational& q, long e) {
  if (e < 0) {
    if (q == 0) throw std::invalid_argument("rational_pow: 0 to negative power");
    return 1 / rational_pow(q, -e);
  }
  Rational acc = 1, base = q;
  for (long k = e; k > 0; k >>= 1) {
    if (k & 1) acc *= base;
    base *= base;
  }
  return acc;
}

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// Parses "p", "p/q" or "-p/q". Whitespace is not accepted.
/// The result is canonicalized even if the input is not in lowest terms.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    const Integer num(text.substr(0, slash));
    const Integer den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return Rational(num) / Rational(den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("parse_rational: malformed rational '" + text + "'");
  }
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

/// Exact conversion to long; throws when q is not an integer or out of range.
inline long to_long(const Rational& q) {
  if (!is_integer(q)) throw std::invalid_argument("to_long: not an integer: " + q.str());
  return static_cast<long>(numerator(q));
}

}  // namespace kdirac
