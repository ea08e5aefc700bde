#pragma once

#include <concepts>
#include <stdexcept>
#include <utility>

namespace bt::numeric {

template <class S>
struct ScalarOps;

/// w + x·i + y·j + z·k over a real base field F. Multiplication is
/// Hamilton's product and does not commute.
template <class F>
class Quaternion {
 public:
  Quaternion() : w_(0), x_(0), y_(0), z_(0) {}
  template <std::integral I>
  Quaternion(I v) : w_(F(static_cast<long>(v))), x_(0), y_(0), z_(0) {}  // NOLINT(google-explicit-constructor)
  Quaternion(F w) : w_(std::move(w)), x_(0), y_(0), z_(0) {}  // NOLINT(google-explicit-constructor)
  Quaternion(F w, F x, F y, F z) : w_(std::move(w)), x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {}

  static Quaternion unit_i() { return Quaternion(F(0), F(1), F(0), F(0)); }
  static Quaternion unit_j() { return Quaternion(F(0), F(0), F(1), F(0)); }
  static Quaternion unit_k() { return Quaternion(F(0), F(0), F(0), F(1)); }

  const F& w() const { return w_; }
  const F& x() const { return x_; }
  const F& y() const { return y_; }
  const F& z() const { return z_; }

  Quaternion& operator+=(const Quaternion& o) {
    w_ += o.w_;
    x_ += o.x_;
    y_ += o.y_;
    z_ += o.z_;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    w_ -= o.w_;
    x_ -= o.x_;
    y_ -= o.y_;
    z_ -= o.z_;
    return *this;
  }
  Quaternion& operator*=(const Quaternion& o) {
    F w = w_ * o.w_ - x_ * o.x_ - y_ * o.y_ - z_ * o.z_;
    F x = w_ * o.x_ + x_ * o.w_ + y_ * o.z_ - z_ * o.y_;
    F y = w_ * o.y_ - x_ * o.z_ + y_ * o.w_ + z_ * o.x_;
    F z = w_ * o.z_ + x_ * o.y_ - y_ * o.x_ + z_ * o.w_;
    w_ = std::move(w);
    x_ = std::move(x);
    y_ = std::move(y);
    z_ = std::move(z);
    return *this;
  }
  friend Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
  friend Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }
  friend Quaternion operator*(Quaternion p, const Quaternion& q) { return p *= q; }
  Quaternion operator-() const { return Quaternion(F(-w_), F(-x_), F(-y_), F(-z_)); }
  friend bool operator==(const Quaternion& p, const Quaternion& q) {
    return p.w_ == q.w_ && p.x_ == q.x_ && p.y_ == q.y_ && p.z_ == q.z_;
  }

  Quaternion conj() const { return Quaternion(w_, F(-x_), F(-y_), F(-z_)); }
  F norm_sq() const { return w_ * w_ + x_ * x_ + y_ * y_ + z_ * z_; }
  bool is_zero() const {
    return ScalarOps<F>::is_zero(w_) && ScalarOps<F>::is_zero(x_) && ScalarOps<F>::is_zero(y_) &&
           ScalarOps<F>::is_zero(z_);
  }

  Quaternion inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero quaternion");
    F n = ScalarOps<F>::inverse(norm_sq());
    return Quaternion(F(w_ * n), F(-(x_ * n)), F(-(y_ * n)), F(-(z_ * n)));
  }

 private:
  F w_;
  F x_;
  F y_;
  F z_;
};

}  // namespace bt::numeric
