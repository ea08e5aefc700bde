#pragma once

#include <string>

#include "bt/error.hpp"
#include "bt/spaces/points.hpp"

namespace bt::equimaps {

using numeric::Matrix;
using spaces::FlagPoint;
using spaces::ProjectivePoint;
using spaces::SpherePoint;
using spaces::Subspace;

/// S^{k+1} minus the poles → S^k: keep the first k+1 coordinates.
/// Equivariant for SO(k+1) acting on those coordinates.
template <class S>
SpherePoint<S> sphere_drop(const SpherePoint<S>& x) {
  const std::size_t n = x.ambient();
  if (n < 2) throw DimensionError("sphere_drop: ambient too small");
  const Matrix<S> head = x.vector().block(0, 0, n - 1, 1);
  if (head.is_zero()) throw DomainError("sphere_drop: the poles (0,...,0,±1) are outside the domain");
  return SpherePoint<S>(head);
}

/// K P^k minus the x_{k+1}-axis → K P^{k-1}: drop the last coordinate of a
/// representative. Equivariant for G(k,K) acting on the first k coordinates.
template <class S>
ProjectivePoint<S> proj_drop(const ProjectivePoint<S>& line) {
  if (line.dim() != 1) throw DimensionError("proj_drop: expected a line");
  const std::size_t n = line.ambient();
  const Matrix<S> v = line.basis();
  const Matrix<S> head = v.block(0, 0, n - 1, 1);
  if (head.is_zero()) throw DomainError("proj_drop: the x_n-axis is outside the domain");
  return Subspace<S>::line(head);
}

/// Top-left m×m block of the projector of a subspace lying in span{e₁..e_m}.
template <class S>
Subspace<S> restrict_to_head(const Subspace<S>& v, std::size_t m) {
  return Subspace<S>::from_projector(v.projector().block(0, 0, m, m), v.dim());
}

/// Gr_k Kⁿ → K P^{m-1}, V ↦ V ∩ H with H = span{e₁..e_m} and m = n+1-k.
/// Defined when V ⊄ H and the intersection is a line; equivariant for
/// G(m,K) acting on the first m coordinates.
template <class S>
ProjectivePoint<S> grass_slice(const Subspace<S>& v, std::size_t m) {
  const std::size_t n = v.ambient();
  if (m > n) throw DimensionError("grass_slice: hyperplane larger than ambient");
  const auto h = Subspace<S>::coordinate(n, m);
  if (h.contains(v)) throw DomainError("grass_slice: V lies in H_" + std::to_string(m) + " (the starred copy)");
  const auto x = spaces::intersect(v, h);
  if (x.dim() != 1)
    throw GapCaseError("grass_slice: dim(V ∩ H_" + std::to_string(m) + ") = " + std::to_string(x.dim()) +
                       ", not a line");
  return restrict_to_head(x, m);
}

/// The identification of {V ∈ Gr_k Kⁿ : V ⊆ span{e₁..e_m}} with Gr_k K^m.
template <class S>
Subspace<S> hyperplane_restrict(const Subspace<S>& v, std::size_t m) {
  const std::size_t n = v.ambient();
  if (m > n) throw DimensionError("hyperplane_restrict: hyperplane larger than ambient");
  if (!Subspace<S>::coordinate(n, m).contains(v))
    throw DomainError("hyperplane_restrict: V is not contained in H_" + std::to_string(m));
  return restrict_to_head(v, m);
}

/// Gr_k Kⁿ → Gr_{n-k} Kⁿ, V ↦ V^⊥.
template <class S>
Subspace<S> duality(const Subspace<S>& v) {
  return spaces::orthogonal_complement(v);
}

template <class S>
Subspace<S> flag_to_grass(const FlagPoint<S>& f, std::size_t i) {
  return spaces::flag_component(f, i);
}

}  // namespace bt::equimaps
