#pragma once

#include <string>

#include "bt/numeric/complex.hpp"
#include "bt/numeric/quadratic.hpp"
#include "bt/numeric/rational.hpp"

namespace bt::numeric {

/// (a + b√5 + (c + d√5)·i) / 5^k with integer a, b, c, d.
///
/// Canonical: when k > 0, not all of a, b, c, d are divisible by 5. This is
/// a ring (not a field); it holds the entries of words in the SU(2) pair
/// whose generators are (Gaussian integer matrix)/√5. Use to_field() to move
/// into ℚ(√5)(i) when division is needed.
class GaussSqrt5 {
 public:
  GaussSqrt5() = default;
  GaussSqrt5(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  GaussSqrt5(Integer a, Integer b, Integer c, Integer d, unsigned long k);

  /// 1/√5 = √5/5.
  static GaussSqrt5 inv_sqrt5() { return GaussSqrt5(0, 1, 0, 0, 1); }
  static GaussSqrt5 unit_i() { return GaussSqrt5(0, 0, 1, 0, 0); }

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& c() const { return c_; }
  const Integer& d() const { return d_; }
  unsigned long k() const { return k_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0; }

  GaussSqrt5& operator+=(const GaussSqrt5& o);
  GaussSqrt5& operator-=(const GaussSqrt5& o) { return *this += -o; }
  GaussSqrt5& operator*=(const GaussSqrt5& o);
  friend GaussSqrt5 operator+(GaussSqrt5 x, const GaussSqrt5& y) { return x += y; }
  friend GaussSqrt5 operator-(GaussSqrt5 x, const GaussSqrt5& y) { return x -= y; }
  friend GaussSqrt5 operator*(GaussSqrt5 x, const GaussSqrt5& y) { return x *= y; }
  GaussSqrt5 operator-() const;
  friend bool operator==(const GaussSqrt5& x, const GaussSqrt5& y) {
    return x.k_ == y.k_ && x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }

  GaussSqrt5 conj() const;
  Complex<QSqrt5> to_field() const;
  std::string str() const;

 private:
  void canonicalize();

  Integer a_;
  Integer b_;
  Integer c_;
  Integer d_;
  unsigned long k_ = 0;
};

}  // namespace bt::numeric
