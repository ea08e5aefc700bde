#pragma once

#include <random>

#include "bt/numeric/linalg.hpp"

namespace bt::testing {

using namespace bt::numeric;

inline Rational small_rational(std::mt19937_64& rng, int span = 6) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, span);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

template <class S>
S random_scalar(std::mt19937_64& rng);

template <>
inline Rational random_scalar<Rational>(std::mt19937_64& rng) {
  return small_rational(rng);
}
template <>
inline QSqrt2 random_scalar<QSqrt2>(std::mt19937_64& rng) {
  return QSqrt2(small_rational(rng), small_rational(rng));
}
template <>
inline QSqrt5 random_scalar<QSqrt5>(std::mt19937_64& rng) {
  return QSqrt5(small_rational(rng), small_rational(rng));
}
template <>
inline Complex<QSqrt5> random_scalar<Complex<QSqrt5>>(std::mt19937_64& rng) {
  return {random_scalar<QSqrt5>(rng), random_scalar<QSqrt5>(rng)};
}
template <>
inline Quaternion<QSqrt5> random_scalar<Quaternion<QSqrt5>>(std::mt19937_64& rng) {
  return {random_scalar<QSqrt5>(rng), random_scalar<QSqrt5>(rng), random_scalar<QSqrt5>(rng),
          random_scalar<QSqrt5>(rng)};
}
template <>
inline Quaternion<Rational> random_scalar<Quaternion<Rational>>(std::mt19937_64& rng) {
  return {small_rational(rng), small_rational(rng), small_rational(rng), small_rational(rng)};
}
template <>
inline GaussSqrt5 random_scalar<GaussSqrt5>(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-30, 30);
  std::uniform_int_distribution<int> k(0, 3);
  return GaussSqrt5(c(rng), c(rng), c(rng), c(rng), static_cast<unsigned long>(k(rng)));
}

template <class S>
Matrix<S> random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  Matrix<S> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_scalar<S>(rng);
  return m;
}

/// Textbook triple loop, kept separate from Matrix::operator*.
template <class S>
Matrix<S> naive_multiply(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      S acc(0);
      for (std::size_t l = 0; l < a.cols(); ++l) acc = acc + a(i, l) * b(l, j);
      out(i, j) = acc;
    }
  return out;
}

}  // namespace bt::testing
