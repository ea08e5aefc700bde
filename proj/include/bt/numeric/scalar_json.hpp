#pragma once

// Exact scalars serialize as objects of decimal-string components, e.g. an
// element of ℚ(√2) is {"a": "1/3", "b": "-2/3"} for 1/3 - (2/3)√2.

#include "json.hpp"

#include "bt/error.hpp"
#include "bt/numeric/scalar.hpp"

namespace bt::numeric {

using Json = nlohmann::json;

template <class S>
struct ScalarJson;

template <>
struct ScalarJson<double> {
  static Json write(double x) { return x; }
  static double read(const Json& j) { return j.get<double>(); }
};

template <>
struct ScalarJson<Rational> {
  static Json write(const Rational& x) { return format_rational(x); }
  static Rational read(const Json& j) {
    if (!j.is_string()) throw ParseError("rational must be a string");
    return parse_rational(j.get<std::string>());
  }
};

template <int D>
struct ScalarJson<Quadratic<D>> {
  static Json write(const Quadratic<D>& x) {
    return Json{{"a", format_rational(x.rational_part())}, {"b", format_rational(x.radical_part())}};
  }
  static Quadratic<D> read(const Json& j) {
    if (j.is_string()) return Quadratic<D>(parse_rational(j.get<std::string>()));
    return Quadratic<D>(ScalarJson<Rational>::read(j.at("a")), ScalarJson<Rational>::read(j.at("b")));
  }
};

template <class F>
struct ScalarJson<Complex<F>> {
  static Json write(const Complex<F>& x) { return Json{{"re", ScalarJson<F>::write(x.re())}, {"im", ScalarJson<F>::write(x.im())}}; }
  static Complex<F> read(const Json& j) { return Complex<F>(ScalarJson<F>::read(j.at("re")), ScalarJson<F>::read(j.at("im"))); }
};

template <class F>
struct ScalarJson<Quaternion<F>> {
  static Json write(const Quaternion<F>& x) {
    return Json{{"w", ScalarJson<F>::write(x.w())},
                {"x", ScalarJson<F>::write(x.x())},
                {"y", ScalarJson<F>::write(x.y())},
                {"z", ScalarJson<F>::write(x.z())}};
  }
  static Quaternion<F> read(const Json& j) {
    return Quaternion<F>(ScalarJson<F>::read(j.at("w")), ScalarJson<F>::read(j.at("x")),
                         ScalarJson<F>::read(j.at("y")), ScalarJson<F>::read(j.at("z")));
  }
};

template <>
struct ScalarJson<GaussSqrt5> {
  static Json write(const GaussSqrt5& x) {
    return Json{{"a", x.a().get_str()}, {"b", x.b().get_str()}, {"c", x.c().get_str()},
                {"d", x.d().get_str()}, {"k", x.k()}};
  }
  static GaussSqrt5 read(const Json& j) {
    auto integer = [&](const char* key) {
      Integer out;
      if (out.set_str(j.at(key).get<std::string>(), 10) != 0) throw ParseError(std::string("bad integer field ") + key);
      return out;
    };
    return GaussSqrt5(integer("a"), integer("b"), integer("c"), integer("d"), j.at("k").get<unsigned long>());
  }
};

}  // namespace bt::numeric
