#pragma once

// Uniform static interface over every scalar backend. Generic code (matrices,
// spaces, maps) talks to scalars only through ScalarOps<S>, so overload
// resolution never depends on header order.

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "bt/numeric/complex.hpp"
#include "bt/numeric/gauss_sqrt5.hpp"
#include "bt/numeric/quadratic.hpp"
#include "bt/numeric/quaternion.hpp"
#include "bt/numeric/rational.hpp"

namespace bt::numeric {

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static constexpr bool exact = false;
  static constexpr bool real = true;
  static constexpr bool commutative = true;
  static constexpr bool field = true;
  using Float = double;

  static double conj(double x) { return x; }
  static bool is_zero(double x) { return x == 0.0; }
  static double inverse(double x) {
    if (x == 0.0) throw std::domain_error("inverse of 0.0");
    return 1.0 / x;
  }
  static double to_float(double x) { return x; }
  static double magnitude(double x) { return std::abs(x); }
  static int sign(double x) { return (x > 0) - (x < 0); }
  static double from_rational(const Rational& r) { return r.get_d(); }
  static std::vector<double> components(double x) { return {x}; }
  static double from_components(const std::vector<double>& c) { return c.at(0); }
  static std::string str(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
};

template <>
struct ScalarOps<Rational> {
  static constexpr bool exact = true;
  static constexpr bool real = true;
  static constexpr bool commutative = true;
  static constexpr bool field = true;
  using Float = double;

  static Rational conj(const Rational& x) { return x; }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational inverse(const Rational& x) {
    if (is_zero(x)) throw std::domain_error("inverse of zero rational");
    return Rational(1) / x;
  }
  static double to_float(const Rational& x) { return x.get_d(); }
  static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
  static int sign(const Rational& x) { return sgn(x); }
  static Rational from_rational(const Rational& r) { return r; }
  static std::string str(const Rational& x) { return format_rational(x); }
};

template <int D>
struct ScalarOps<Quadratic<D>> {
  using S = Quadratic<D>;
  static constexpr bool exact = true;
  static constexpr bool real = true;
  static constexpr bool commutative = true;
  static constexpr bool field = true;
  using Float = double;

  static S conj(const S& x) { return x; }
  static bool is_zero(const S& x) { return x.is_zero(); }
  static S inverse(const S& x) { return x.inverse(); }
  static double to_float(const S& x) { return x.to_double(); }
  static double magnitude(const S& x) { return std::abs(x.to_double()); }
  static int sign(const S& x) { return x.sign(); }
  static S from_rational(const Rational& r) { return S(r); }
  static std::string str(const S& x) { return x.str(); }
};

template <class F>
struct ScalarOps<Complex<F>> {
  using S = Complex<F>;
  static constexpr bool exact = ScalarOps<F>::exact;
  static constexpr bool real = false;
  static constexpr bool commutative = true;
  static constexpr bool field = true;
  using Float = Complex<typename ScalarOps<F>::Float>;

  static S conj(const S& x) { return x.conj(); }
  static bool is_zero(const S& x) { return x.is_zero(); }
  static S inverse(const S& x) { return x.inverse(); }
  static Float to_float(const S& x) { return Float(ScalarOps<F>::to_float(x.re()), ScalarOps<F>::to_float(x.im())); }
  static double magnitude(const S& x) {
    return std::hypot(ScalarOps<F>::magnitude(x.re()), ScalarOps<F>::magnitude(x.im()));
  }
  static S from_rational(const Rational& r) { return S(ScalarOps<F>::from_rational(r)); }
  static std::vector<double> components(const S& x) {
    return {ScalarOps<F>::to_float(x.re()), ScalarOps<F>::to_float(x.im())};
  }
  static S from_components(const std::vector<double>& c)
    requires(!ScalarOps<F>::exact)
  {
    return S(F(c.at(0)), F(c.at(1)));
  }
  static std::string str(const S& x) {
    return "(" + ScalarOps<F>::str(x.re()) + ")+(" + ScalarOps<F>::str(x.im()) + ")i";
  }
};

template <class F>
struct ScalarOps<Quaternion<F>> {
  using S = Quaternion<F>;
  static constexpr bool exact = ScalarOps<F>::exact;
  static constexpr bool real = false;
  static constexpr bool commutative = false;
  static constexpr bool field = true;
  using Float = Quaternion<typename ScalarOps<F>::Float>;

  static S conj(const S& x) { return x.conj(); }
  static bool is_zero(const S& x) { return x.is_zero(); }
  static S inverse(const S& x) { return x.inverse(); }
  static Float to_float(const S& x) {
    return Float(ScalarOps<F>::to_float(x.w()), ScalarOps<F>::to_float(x.x()), ScalarOps<F>::to_float(x.y()),
                 ScalarOps<F>::to_float(x.z()));
  }
  static double magnitude(const S& x) { return std::sqrt(ScalarOps<F>::to_float(x.norm_sq())); }
  static S from_rational(const Rational& r) { return S(ScalarOps<F>::from_rational(r)); }
  static std::vector<double> components(const S& x) {
    return {ScalarOps<F>::to_float(x.w()), ScalarOps<F>::to_float(x.x()), ScalarOps<F>::to_float(x.y()),
            ScalarOps<F>::to_float(x.z())};
  }
  static S from_components(const std::vector<double>& c)
    requires(!ScalarOps<F>::exact)
  {
    return S(F(c.at(0)), F(c.at(1)), F(c.at(2)), F(c.at(3)));
  }
  static std::string str(const S& x) {
    return "(" + ScalarOps<F>::str(x.w()) + ")+(" + ScalarOps<F>::str(x.x()) + ")i+(" + ScalarOps<F>::str(x.y()) +
           ")j+(" + ScalarOps<F>::str(x.z()) + ")k";
  }
};

template <>
struct ScalarOps<GaussSqrt5> {
  using S = GaussSqrt5;
  static constexpr bool exact = true;
  static constexpr bool real = false;
  static constexpr bool commutative = true;
  static constexpr bool field = false;
  using Float = Complex<double>;

  static S conj(const S& x) { return x.conj(); }
  static bool is_zero(const S& x) { return x.is_zero(); }
  static Float to_float(const S& x) { return ScalarOps<Complex<QSqrt5>>::to_float(x.to_field()); }
  static double magnitude(const S& x) { return ScalarOps<Complex<QSqrt5>>::magnitude(x.to_field()); }
  static S from_rational(const Rational& r) {
    if (r.get_den() != 1) throw std::domain_error("GaussSqrt5 holds only 5-adic denominators");
    return S(r.get_num(), 0, 0, 0, 0);
  }
  static std::vector<double> components(const S& x) {
    return ScalarOps<Complex<QSqrt5>>::components(x.to_field());
  }
  static std::string str(const S& x) { return x.str(); }
};

template <class S>
using FloatOf = typename ScalarOps<S>::Float;

template <class S>
S conj(const S& x) {
  return ScalarOps<S>::conj(x);
}
template <class S>
bool is_zero(const S& x) {
  return ScalarOps<S>::is_zero(x);
}
template <class S>
S inverse(const S& x) {
  return ScalarOps<S>::inverse(x);
}
template <class S>
FloatOf<S> to_float(const S& x) {
  return ScalarOps<S>::to_float(x);
}
template <class S>
std::string to_string(const S& x) {
  return ScalarOps<S>::str(x);
}
template <class S>
S from_rational(const Rational& r) {
  return ScalarOps<S>::from_rational(r);
}

/// Real part of a scalar as a double (first component).
template <class S>
double real_part(const S& x) {
  return ScalarOps<FloatOf<S>>::components(to_float(x)).front();
}

}  // namespace bt::numeric
