#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bt/error.hpp"
#include "bt/numeric/linalg.hpp"
#include "bt/numeric/matrix.hpp"

namespace bt::spaces {

using numeric::Matrix;
using numeric::ScalarOps;

/// Comparison tolerance used when none is given: 0 for exact backends.
template <class S>
constexpr double default_tol() {
  return ScalarOps<S>::exact ? 0.0 : 1e-9;
}

/// Entrywise equality: exact for exact backends, within `tol` otherwise.
template <class S>
bool approx_equal(const Matrix<S>& x, const Matrix<S>& y, double tol) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  if constexpr (ScalarOps<S>::exact) {
    return x == y;
  } else {
    return numeric::max_abs_diff(x, y) <= tol;
  }
}

/// A point of Sⁿ as a signed ray in ℝⁿ⁺¹. Exact representatives are scaled
/// so the first nonzero coordinate is ±1; float ones are unit vectors.
template <class S>
class SpherePoint {
 public:
  using Scalar = S;

  SpherePoint() = default;
  explicit SpherePoint(const Matrix<S>& v) {
    if (v.cols() != 1) throw DimensionError("sphere point: expected a column vector");
    if constexpr (ScalarOps<S>::exact) {
      v_ = numeric::normalize_signed_ray(v);
    } else {
      double norm = 0;
      for (std::size_t i = 0; i < v.rows(); ++i) norm += v[i] * v[i];
      if (norm == 0) throw DomainError("zero vector has no ray");
      v_ = v.right_scaled(1.0 / std::sqrt(norm));
    }
  }

  const Matrix<S>& vector() const { return v_; }
  std::size_t ambient() const { return v_.rows(); }
  std::string key() const { return numeric::key(v_); }
  SpherePoint antipode() const { return SpherePoint(Matrix<S>(-v_)); }

  bool approx_equals(const SpherePoint& o, double tol) const { return approx_equal(v_, o.v_, tol); }
  friend bool operator==(const SpherePoint& p, const SpherePoint& q) { return p.v_ == q.v_; }

 private:
  Matrix<S> v_;
};

/// A right K-subspace of Kⁿ, stored as its orthogonal projector.
template <class S>
class Subspace {
 public:
  using Scalar = S;

  Subspace() = default;

  /// Span of the columns; they must be independent.
  static Subspace from_basis(const Matrix<S>& basis) {
    return Subspace(numeric::projector_of_basis(basis), basis.cols());
  }
  /// Trusts `p` to be a rank-`dim` orthogonal projector.
  static Subspace from_projector(Matrix<S> p, std::size_t dim) {
    if (!p.is_square() || dim > p.rows()) throw DimensionError("subspace: bad projector shape");
    return Subspace(std::move(p), dim);
  }
  static Subspace line(const Matrix<S>& v) {
    if (v.cols() != 1) throw DimensionError("line: expected a column vector");
    if (v.is_zero()) throw DomainError("zero vector spans no line");
    return from_basis(v);
  }
  static Subspace zero(std::size_t n) { return Subspace(Matrix<S>(n, n), 0); }
  static Subspace whole(std::size_t n) { return Subspace(Matrix<S>::identity(n), n); }
  /// span{e₁, …, e_k}.
  static Subspace coordinate(std::size_t n, std::size_t k) {
    if (k > n) throw DimensionError("coordinate subspace larger than ambient");
    Matrix<S> p(n, n);
    for (std::size_t i = 0; i < k; ++i) p(i, i) = S(1);
    return Subspace(std::move(p), k);
  }

  const Matrix<S>& projector() const { return p_; }
  std::size_t dim() const { return dim_; }
  std::size_t ambient() const { return p_.rows(); }
  /// Some basis of the subspace (pivot columns of the projector).
  Matrix<S> basis() const { return dim_ == 0 ? Matrix<S>(ambient(), 0) : numeric::column_space(p_); }

  /// W ⊆ this, tested as P·P_W = P_W.
  bool contains(const Subspace& w, double tol = default_tol<S>()) const { return approx_equal(Matrix<S>(p_ * w.p_), w.p_, tol); }
  bool contains_vector(const Matrix<S>& v, double tol = default_tol<S>()) const { return approx_equal(Matrix<S>(p_ * v), v, tol); }

  std::string key() const { return numeric::key(p_); }
  bool approx_equals(const Subspace& o, double tol) const { return dim_ == o.dim_ && approx_equal(p_, o.p_, tol); }
  friend bool operator==(const Subspace& a, const Subspace& b) { return a.dim_ == b.dim_ && a.p_ == b.p_; }

 private:
  Subspace(Matrix<S> p, std::size_t dim) : p_(std::move(p)), dim_(dim) {}

  Matrix<S> p_;
  std::size_t dim_ = 0;
};

/// Lines are one-dimensional subspaces.
template <class S>
using ProjectivePoint = Subspace<S>;

/// V₁ ⊂ ⋯ ⊂ V_k with strictly increasing dimensions.
template <class S>
class FlagPoint {
 public:
  using Scalar = S;

  FlagPoint() = default;
  explicit FlagPoint(std::vector<Subspace<S>> components, double tol = default_tol<S>()) : v_(std::move(components)) {
    if (v_.empty()) throw DimensionError("flag: no components");
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (v_[i].ambient() != v_[0].ambient()) throw DimensionError("flag: components in different ambients");
      if (i == 0) continue;
      if (v_[i].dim() <= v_[i - 1].dim()) throw DimensionError("flag: dimensions must increase");
      if (!v_[i].contains(v_[i - 1], tol)) throw DimensionError("flag: components are not nested");
    }
  }

  /// V_i = span of the first dims[i] columns of `basis`.
  static FlagPoint from_basis(const Matrix<S>& basis, const std::vector<std::size_t>& dims) {
    std::vector<Subspace<S>> comps;
    for (std::size_t d : dims) comps.push_back(Subspace<S>::from_basis(basis.block(0, 0, basis.rows(), d)));
    return FlagPoint(std::move(comps));
  }

  const std::vector<Subspace<S>>& components() const { return v_; }
  std::size_t size() const { return v_.size(); }
  std::size_t ambient() const { return v_.front().ambient(); }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (const auto& c : v_) out.push_back(c.dim());
    return out;
  }

  std::string key() const {
    std::string out;
    for (const auto& c : v_) out += c.key() + "|";
    return out;
  }
  bool approx_equals(const FlagPoint& o, double tol) const {
    if (v_.size() != o.v_.size()) return false;
    for (std::size_t i = 0; i < v_.size(); ++i)
      if (!v_[i].approx_equals(o.v_[i], tol)) return false;
    return true;
  }
  friend bool operator==(const FlagPoint& a, const FlagPoint& b) { return a.v_ == b.v_; }

 private:
  std::vector<Subspace<S>> v_;
};

// ---- group action -------------------------------------------------------

template <class S>
void require_acts(const Matrix<S>& g, std::size_t ambient) {
  if (!g.is_square() || g.rows() != ambient)
    throw DimensionError("group element of size " + std::to_string(g.rows()) + " cannot act on dimension " +
                         std::to_string(ambient));
}

template <class S>
SpherePoint<S> act(const Matrix<S>& g, const SpherePoint<S>& p) {
  require_acts(g, p.ambient());
  return SpherePoint<S>(Matrix<S>(g * p.vector()));
}

/// g·V has projector g P g*.
template <class S>
Subspace<S> act(const Matrix<S>& g, const Subspace<S>& v) {
  require_acts(g, v.ambient());
  return Subspace<S>::from_projector(g * v.projector() * g.conj_transpose(), v.dim());
}

template <class S>
FlagPoint<S> act(const Matrix<S>& g, const FlagPoint<S>& f) {
  std::vector<Subspace<S>> comps;
  comps.reserve(f.size());
  for (const auto& c : f.components()) comps.push_back(act(g, c));
  return FlagPoint<S>(std::move(comps));
}

// ---- operations ---------------------------------------------------------

/// Sⁿ → ℝPⁿ, identifying antipodes.
template <class S>
ProjectivePoint<S> antipodal_project(const SpherePoint<S>& p) {
  return Subspace<S>::line(p.vector());
}

/// g ∈ G(m,K) acting on the first m coordinates of Kⁿ.
template <class S>
Matrix<S> block_embed(const Matrix<S>& g, std::size_t n) {
  if (!g.is_square()) throw DimensionError("block_embed: expected a square matrix");
  if (g.rows() > n)
    throw DimensionError("block_embed: block of size " + std::to_string(g.rows()) + " exceeds ambient " +
                         std::to_string(n));
  return numeric::embed_top_left(g, n);
}

/// V_i, counting from 1.
template <class S>
const Subspace<S>& flag_component(const FlagPoint<S>& f, std::size_t i) {
  if (i < 1 || i > f.size())
    throw std::out_of_range("flag component " + std::to_string(i) + " out of range 1.." + std::to_string(f.size()));
  return f.components()[i - 1];
}

template <class S>
Subspace<S> orthogonal_complement(const Subspace<S>& v) {
  const std::size_t n = v.ambient();
  return Subspace<S>::from_projector(Matrix<S>::identity(n) - v.projector(), n - v.dim());
}

/// V ∩ W = ker [(I - P_V); (I - P_W)].
template <class S>
Subspace<S> intersect(const Subspace<S>& v, const Subspace<S>& w) {
  if (v.ambient() != w.ambient()) throw DimensionError("intersect: different ambient spaces");
  const std::size_t n = v.ambient();
  const Matrix<S> id = Matrix<S>::identity(n);
  const Matrix<S> cv = id - v.projector();
  const Matrix<S> cw = id - w.projector();
  Matrix<S> stacked(2 * n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      stacked(r, c) = cv(r, c);
      stacked(n + r, c) = cw(r, c);
    }
  const Matrix<S> k = numeric::kernel(stacked);
  if (k.cols() == 0) return Subspace<S>::zero(n);
  return Subspace<S>::from_basis(k);
}

}  // namespace bt::spaces
