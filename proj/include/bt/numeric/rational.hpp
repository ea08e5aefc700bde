#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bt::numeric {

using Integer = mpz_class;
using Rational = mpq_class;

/// p/q in lowest terms. mpq_class(p, q) keeps the fraction as given, and
/// exact equality relies on canonical form.
inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p" or "p/q"; the result is canonical (gcd 1, q > 0).
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& x);

Integer pow_integer(const Integer& base, unsigned long exponent);

}  // namespace bt::numeric
