#include "bt/freegroup/pair.hpp"

#include "bt/error.hpp"

namespace bt::freegroup {

std::string to_string(PairName name) {
  switch (name) {
    case PairName::SO3_AB: return "so3-ab";
    case PairName::SU2_SQRT5: return "su2-sqrt5";
    case PairName::SP1_SQRT5: return "sp1-sqrt5";
  }
  return "?";
}

PairName parse_pair_name(const std::string& text) {
  if (text == "so3-ab") return PairName::SO3_AB;
  if (text == "su2-sqrt5") return PairName::SU2_SQRT5;
  if (text == "sp1-sqrt5") return PairName::SP1_SQRT5;
  throw ParseError("unknown generator pair '" + text + "' (expected so3-ab, su2-sqrt5 or sp1-sqrt5)");
}

GeneratorPair<QSqrt2> so3_ab() {
  const QSqrt2 c(Rational(1, 3));
  const QSqrt2 s(Rational(0), Rational(2, 3));
  const QSqrt2 zero(0);
  const QSqrt2 one(1);
  Matrix<QSqrt2> a{{c, -s, zero}, {s, c, zero}, {zero, zero, one}};
  Matrix<QSqrt2> b{{one, zero, zero}, {zero, c, -s}, {zero, s, c}};
  return {PairName::SO3_AB, std::move(a), std::move(b)};
}

GeneratorPair<GaussSqrt5> su2_sqrt5() {
  const GaussSqrt5 alpha(0, 1, 0, 2, 1);  // (1+2i)/√5
  const GaussSqrt5 one(0, 1, 0, 0, 1);    // 1/√5
  const GaussSqrt5 two(0, 2, 0, 0, 1);    // 2/√5
  Matrix<GaussSqrt5> a{{alpha, GaussSqrt5(0)}, {GaussSqrt5(0), alpha.conj()}};
  Matrix<GaussSqrt5> b{{one, -two}, {two, one}};
  return {PairName::SU2_SQRT5, std::move(a), std::move(b)};
}

GeneratorPair<Quaternion<QSqrt5>> sp1_sqrt5() {
  using Q = Quaternion<QSqrt5>;
  const QSqrt5 one(Rational(0), Rational(1, 5));  // 1/√5
  const QSqrt5 two(Rational(0), Rational(2, 5));
  const QSqrt5 zero(0);
  Matrix<Q> a{{Q(one, two, zero, zero), Q(0)}, {Q(0), Q(1)}};
  Matrix<Q> b{{Q(one, zero, two, zero), Q(0)}, {Q(0), Q(1)}};
  return {PairName::SP1_SQRT5, std::move(a), std::move(b)};
}

}  // namespace bt::freegroup
