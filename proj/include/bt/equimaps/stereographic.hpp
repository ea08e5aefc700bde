#pragma once

#include <cmath>
#include <vector>

#include "bt/error.hpp"
#include "bt/spaces/points.hpp"

namespace bt::equimaps {

using numeric::Matrix;
using spaces::ProjectivePoint;
using spaces::SpherePoint;
using spaces::Subspace;

namespace detail {

template <class F>
struct RealParts;
template <class T>
struct RealParts<numeric::Complex<T>> {
  using Real = T;
  static std::vector<T> of(const numeric::Complex<T>& z) { return {z.re(), z.im()}; }
  static std::vector<numeric::Complex<T>> units() { return {numeric::Complex<T>(1), numeric::Complex<T>::unit_i()}; }
};
template <class T>
struct RealParts<numeric::Quaternion<T>> {
  using Real = T;
  using Q = numeric::Quaternion<T>;
  static std::vector<T> of(const Q& q) { return {q.w(), q.x(), q.y(), q.z()}; }
  static std::vector<Q> units() { return {Q(1), Q::unit_i(), Q::unit_j(), Q::unit_k()}; }
};

}  // namespace detail

/// Real scalar underlying ℂ or ℍ over a backend.
template <class F>
using RealOf = typename detail::RealParts<F>::Real;

/// Real dimension of K: 2 for ℂ, 4 for ℍ.
template <class F>
std::size_t real_dimension() {
  return detail::RealParts<F>::units().size();
}

/// K P¹ → S^d (d = 2 for ℂ, 4 for ℍ). For a line with projector P the image is
/// (2·P₀₁, P₀₀ - P₁₁), i.e. [q : 1] ↦ (2q, |q|² - 1)/(|q|² + 1) and
/// [1 : 0] ↦ the north pole. The result is a unit vector.
template <class F>
Matrix<RealOf<F>> stereographic_vector(const ProjectivePoint<F>& line) {
  if (line.ambient() != 2 || line.dim() != 1) throw DimensionError("stereographic: expected a point of K P^1");
  using R = RealOf<F>;
  const auto& p = line.projector();
  const std::vector<R> q = detail::RealParts<F>::of(p(0, 1));
  Matrix<R> out(q.size() + 1, 1);
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = q[i] + q[i];
  out[q.size()] = R(detail::RealParts<F>::of(p(0, 0))[0] - detail::RealParts<F>::of(p(1, 1))[0]);
  return out;
}

template <class F>
SpherePoint<RealOf<F>> stereographic(const ProjectivePoint<F>& line) {
  return SpherePoint<RealOf<F>>(stereographic_vector(line));
}

/// Inverse chart for float backends: x ↦ [q : 1] with q = u/(1 - t), where
/// x = (u, t); the north pole goes to [1 : 0].
template <class F>
ProjectivePoint<F> inverse_stereographic(const Matrix<double>& x) {
  static_assert(!numeric::ScalarOps<F>::exact, "the inverse chart is float-only");
  const std::size_t d = real_dimension<F>();
  if (x.rows() != d + 1 || x.cols() != 1) throw DimensionError("inverse_stereographic: wrong dimension");
  const double t = x[d];
  Matrix<F> v(2, 1);
  if (std::abs(1.0 - t) < 1e-12) {
    v[0] = F(1);
    v[1] = F(0);
  } else {
    std::vector<double> q(d);
    for (std::size_t i = 0; i < d; ++i) q[i] = x[i] / (1.0 - t);
    v[0] = numeric::ScalarOps<F>::from_components(q);
    v[1] = F(1);
  }
  return Subspace<F>::line(v);
}

/// The rotation R of S^d with stereographic(g·ℓ) = R·stereographic(ℓ).
/// Column j is the image of the frame line sent to e_j: [u_j : 1] for the
/// units 1, i (j, k) of K, and [1 : 0] for the last column. The solution is
/// then checked on further lines and for orthogonality; a mismatch beyond
/// `tol` raises InconsistentSolveError.
template <class F>
Matrix<RealOf<F>> induced_rotation(const Matrix<F>& g, double tol = spaces::default_tol<F>()) {
  using R = RealOf<F>;
  if (g.rows() != 2 || g.cols() != 2) throw DimensionError("induced_rotation: expected a 2x2 matrix");
  const auto units = detail::RealParts<F>::units();
  const std::size_t d = units.size();
  const auto line = [](const F& x, const F& y) { return Subspace<F>::line(Matrix<F>::column({x, y})); };

  Matrix<R> rot(d + 1, d + 1);
  for (std::size_t j = 0; j <= d; ++j) {
    const auto l = j < d ? line(units[j], F(1)) : line(F(1), F(0));
    const auto image = stereographic_vector(spaces::act(g, l));
    for (std::size_t i = 0; i <= d; ++i) rot(i, j) = image[i];
  }

  std::vector<ProjectivePoint<F>> checks{line(F(0), F(1)), line(F(units[0] + units[1]), F(1)),
                                         line(F(2), F(units[0] + units[d - 1]))};
  for (const auto& l : checks) {
    const Matrix<R> lhs = stereographic_vector(spaces::act(g, l));
    const Matrix<R> rhs = rot * stereographic_vector(l);
    if (!spaces::approx_equal(lhs, rhs, tol))
      throw InconsistentSolveError("induced_rotation: frame solution does not intertwine the action");
  }
  if (!numeric::is_unitary(rot, tol)) throw InconsistentSolveError("induced_rotation: solution is not orthogonal");
  return rot;
}

}  // namespace bt::equimaps
