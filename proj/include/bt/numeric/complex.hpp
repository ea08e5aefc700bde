#pragma once

#include <concepts>
#include <stdexcept>
#include <utility>

namespace bt::numeric {

template <class S>
struct ScalarOps;

/// re + im·i over a real base field F (an exact field or double).
template <class F>
class Complex {
 public:
  Complex() : re_(0), im_(0) {}
  template <std::integral I>
  Complex(I v) : re_(F(static_cast<long>(v))), im_(0) {}  // NOLINT(google-explicit-constructor)
  Complex(F re) : re_(std::move(re)), im_(0) {}  // NOLINT(google-explicit-constructor)
  Complex(F re, F im) : re_(std::move(re)), im_(std::move(im)) {}

  static Complex unit_i() { return Complex(F(0), F(1)); }

  const F& re() const { return re_; }
  const F& im() const { return im_; }

  Complex& operator+=(const Complex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    F re = re_ * o.re_ - im_ * o.im_;
    F im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  friend Complex operator+(Complex x, const Complex& y) { return x += y; }
  friend Complex operator-(Complex x, const Complex& y) { return x -= y; }
  friend Complex operator*(Complex x, const Complex& y) { return x *= y; }
  Complex operator-() const { return Complex(F(-re_), F(-im_)); }
  friend bool operator==(const Complex& x, const Complex& y) { return x.re_ == y.re_ && x.im_ == y.im_; }

  Complex conj() const { return Complex(re_, F(-im_)); }
  F norm_sq() const { return re_ * re_ + im_ * im_; }
  bool is_zero() const { return ScalarOps<F>::is_zero(re_) && ScalarOps<F>::is_zero(im_); }

  Complex inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero complex scalar");
    F n = ScalarOps<F>::inverse(norm_sq());
    return Complex(F(re_ * n), F(-(im_ * n)));
  }

 private:
  F re_;
  F im_;
};

}  // namespace bt::numeric
