#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "bt/numeric/rational.hpp"

namespace bt::numeric {

/// Element a + b·√D of the real quadratic field ℚ(√D), D squarefree > 1.
template <int D>
class Quadratic {
  static_assert(D > 1, "radicand must exceed 1");

 public:
  Quadratic() = default;
  Quadratic(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Quadratic(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  Quadratic(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static constexpr int radicand = D;
  static Quadratic root() { return Quadratic(Rational(0), Rational(1)); }

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  Quadratic& operator+=(const Quadratic& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  Quadratic& operator-=(const Quadratic& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  Quadratic& operator*=(const Quadratic& o) {
    Rational a = a_ * o.a_ + D * (b_ * o.b_);
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  Quadratic& operator/=(const Quadratic& o) { return *this *= o.inverse(); }

  friend Quadratic operator+(Quadratic x, const Quadratic& y) { return x += y; }
  friend Quadratic operator-(Quadratic x, const Quadratic& y) { return x -= y; }
  friend Quadratic operator*(Quadratic x, const Quadratic& y) { return x *= y; }
  friend Quadratic operator/(Quadratic x, const Quadratic& y) { return x /= y; }
  Quadratic operator-() const { return Quadratic(Rational(-a_), Rational(-b_)); }

  friend bool operator==(const Quadratic& x, const Quadratic& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

  /// a - b√D (field automorphism, not complex conjugation).
  Quadratic galois() const { return Quadratic(a_, Rational(-b_)); }
  Rational field_norm() const { return a_ * a_ - D * (b_ * b_); }

  Quadratic inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in Q(sqrt" + std::to_string(D) + ")");
    Rational n = field_norm();
    return Quadratic(Rational(a_ / n), Rational(-b_ / n));
  }

  /// Exact sign of the real number a + b√D.
  int sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // a² - D b² cannot vanish for irrational √D
    return sgn(field_norm()) > 0 ? sa : sb;
  }

  Quadratic abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(D)); }

  std::string str() const {
    const std::string root = "√" + std::to_string(D);
    if (sgn(b_) == 0) return format_rational(a_);
    std::string rad = b_ == 1 ? root : (b_ == -1 ? "-" + root : format_rational(b_) + root);
    if (sgn(a_) == 0) return rad;
    return format_rational(a_) + (sgn(b_) > 0 ? "+" : "") + rad;
  }

  /// Denominators of both parts divide `d`.
  bool has_denominator_dividing(const Integer& d) const {
    return mpz_divisible_p(d.get_mpz_t(), a_.get_den_mpz_t()) != 0 &&
           mpz_divisible_p(d.get_mpz_t(), b_.get_den_mpz_t()) != 0;
  }

 private:
  Rational a_;
  Rational b_;
};

using QSqrt2 = Quadratic<2>;
using QSqrt5 = Quadratic<5>;

}  // namespace bt::numeric
