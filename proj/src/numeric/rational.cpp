#include "bt/numeric/rational.hpp"

#include "bt/error.hpp"

namespace bt::numeric {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational literal");
  if (s.front() == '+') s.erase(0, 1);
  Rational out;
  if (out.set_str(s, 10) != 0) throw ParseError("bad rational literal '" + std::string(text) + "'");
  if (sgn(out.get_den()) == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  out.canonicalize();
  return out;
}

std::string format_rational(const Rational& x) { return x.get_str(10); }

Integer pow_integer(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

}  // namespace bt::numeric
