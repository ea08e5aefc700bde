#pragma once

#include <vector>

#include "bt/random.hpp"
#include "bt/spaces/points.hpp"

namespace bt::spaces {

namespace detail {

inline numeric::Rational small_rational(Rng& rng) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  numeric::Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

template <class S>
struct RandomScalar {
  // Real exact fields: a small rational.
  static S draw(Rng& rng, bool imaginary_only) {
    return imaginary_only ? S(0) : ScalarOps<S>::from_rational(small_rational(rng));
  }
};
template <class F>
struct RandomScalar<numeric::Complex<F>> {
  static numeric::Complex<F> draw(Rng& rng, bool imaginary_only) {
    F re = RandomScalar<F>::draw(rng, false);
    F im = RandomScalar<F>::draw(rng, false);
    return {imaginary_only ? F(0) : re, im};
  }
};
template <class F>
struct RandomScalar<numeric::Quaternion<F>> {
  static numeric::Quaternion<F> draw(Rng& rng, bool imaginary_only) {
    F w = RandomScalar<F>::draw(rng, false);
    F x = RandomScalar<F>::draw(rng, false);
    F y = RandomScalar<F>::draw(rng, false);
    F z = RandomScalar<F>::draw(rng, false);
    return {imaginary_only ? F(0) : w, x, y, z};
  }
};
template <>
struct RandomScalar<double> {
  static double draw(Rng& rng, bool imaginary_only) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double x = u(rng);
    return imaginary_only ? 0.0 : x;
  }
};

}  // namespace detail

/// A random scalar with small rational components (exact backends) or
/// components uniform in [-1, 1] (float). With `imaginary_only` the real part
/// is zero, as on the diagonal of an anti-Hermitian matrix.
template <class S>
S random_scalar(Rng& rng, bool imaginary_only = false) {
  return detail::RandomScalar<S>::draw(rng, imaginary_only);
}

template <class S>
Matrix<S> random_vector(std::size_t n, Rng& rng) {
  Matrix<S> v(n, 1);
  do {
    for (std::size_t i = 0; i < n; ++i) v[i] = random_scalar<S>(rng);
  } while (v.is_zero());
  return v;
}

template <class S>
Matrix<S> random_anti_hermitian(std::size_t n, Rng& rng) {
  Matrix<S> x(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    x(i, i) = random_scalar<S>(rng, true);
    for (std::size_t j = i + 1; j < n; ++j) {
      x(i, j) = random_scalar<S>(rng);
      x(j, i) = -numeric::conj(x(i, j));
    }
  }
  return x;
}

/// Cayley transform of a random anti-Hermitian matrix: an element of
/// SO(n), U(n) or Sp(n) with entries in the backend.
template <class S>
Matrix<S> random_unitary(std::size_t n, Rng& rng) {
  return numeric::cayley_unitary(random_anti_hermitian<S>(n, rng));
}

template <class S>
SpherePoint<S> random_sphere_point(std::size_t ambient, Rng& rng) {
  return SpherePoint<S>(random_vector<S>(ambient, rng));
}

template <class S>
ProjectivePoint<S> random_line(std::size_t n, Rng& rng) {
  return Subspace<S>::line(random_vector<S>(n, rng));
}

/// g·span{e₁,…,e_k} for a random Cayley g.
template <class S>
Subspace<S> random_subspace(std::size_t n, std::size_t k, Rng& rng) {
  return act(random_unitary<S>(n, rng), Subspace<S>::coordinate(n, k));
}

/// g applied to the standard flag of the given dimensions.
template <class S>
FlagPoint<S> random_flag(std::size_t n, const std::vector<std::size_t>& dims, Rng& rng) {
  return FlagPoint<S>::from_basis(random_unitary<S>(n, rng), dims);
}

}  // namespace bt::spaces
