#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "bt/error.hpp"
#include "bt/numeric/matrix.hpp"

namespace bt::numeric {

/// Relative magnitude below which a floating-point pivot counts as zero.
/// Matches the default float tolerance; exact backends never consult it.
inline constexpr double kFloatPivotCutoff = 1e-9;

/// (x, y) = conj(x₁)y₁ + ... + conj(xₙ)yₙ for column vectors.
template <class S>
S inner_product(const Matrix<S>& x, const Matrix<S>& y) {
  if (x.cols() != 1 || y.cols() != 1 || x.rows() != y.rows())
    throw DimensionError("inner_product: operands must be column vectors of equal length");
  S out(0);
  for (std::size_t i = 0; i < x.rows(); ++i) out += ScalarOps<S>::conj(x[i]) * y[i];
  return out;
}

/// Squared distance (x - y, x - y); exact over exact backends.
template <class S>
S dist_sq(const Matrix<S>& x, const Matrix<S>& y) {
  const Matrix<S> d = x - y;
  return inner_product(d, d);
}

template <class S>
double dist(const Matrix<S>& x, const Matrix<S>& y) {
  return std::sqrt(real_part(dist_sq(x, y)));
}

template <class S>
struct Echelon {
  Matrix<S> reduced;
  std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form using only left row operations, so the solution
/// set of M·x = 0 (x a right-module vector) is preserved over ℍ as well.
template <class S>
Echelon<S> rref(Matrix<S> m) {
  using Ops = ScalarOps<S>;
  std::vector<std::size_t> pivots;
  double scale = 0.0;
  if constexpr (!Ops::exact) {
    for (const auto& x : m.data()) scale = std::max(scale, Ops::magnitude(x));
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = m.rows();
    if constexpr (Ops::exact) {
      for (std::size_t i = r; i < m.rows(); ++i) {
        if (!Ops::is_zero(m(i, c))) {
          p = i;
          break;
        }
      }
    } else {
      double best = kFloatPivotCutoff * std::max(scale, 1.0);
      for (std::size_t i = r; i < m.rows(); ++i) {
        const double mag = Ops::magnitude(m(i, c));
        if (mag > best) {
          best = mag;
          p = i;
        }
      }
    }
    if (p == m.rows()) {
      if constexpr (!Ops::exact) {
        for (std::size_t i = r; i < m.rows(); ++i) m(i, c) = S(0);
      }
      continue;
    }
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const S inv = Ops::inverse(m(r, c));
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = inv * m(r, j);
    m(r, c) = S(1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || Ops::is_zero(m(i, c))) continue;
      const S f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (!Ops::is_zero(m(r, j))) m(i, j) -= f * m(r, j);
      }
      m(i, c) = S(0);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class S>
std::size_t rank(const Matrix<S>& m) {
  return rref(m).pivot_cols.size();
}

/// Basis of {x : M·x = 0} as the columns of an n×d matrix (d may be 0).
template <class S>
Matrix<S> kernel(const Matrix<S>& m) {
  const Echelon<S> e = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix<S> basis(n, free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis(f, k) = S(1);
    for (std::size_t t = 0; t < e.pivot_cols.size(); ++t) basis(e.pivot_cols[t], k) = -e.reduced(t, f);
  }
  return basis;
}

/// Pivot columns of M, a basis of its right column span.
template <class S>
Matrix<S> column_space(const Matrix<S>& m) {
  const Echelon<S> e = rref(m);
  Matrix<S> basis(m.rows(), e.pivot_cols.size());
  for (std::size_t k = 0; k < e.pivot_cols.size(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) basis(i, k) = m(i, e.pivot_cols[k]);
  return basis;
}

/// Gauss-Jordan inverse with left row operations (valid over ℍ).
template <class S>
Matrix<S> inverse(const Matrix<S>& m) {
  if (!m.is_square()) throw DimensionError("inverse: matrix is not square");
  const std::size_t n = m.rows();
  Matrix<S> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = S(1);
  }
  const Echelon<S> e = rref(std::move(aug));
  if (e.pivot_cols.size() < n || e.pivot_cols[n - 1] != n - 1) throw SingularMatrixError("inverse: matrix is singular");
  return e.reduced.block(0, n, n, n);
}

/// Determinant over a commutative backend, by elimination.
template <class S>
  requires(ScalarOps<S>::commutative && ScalarOps<S>::field)
S determinant(Matrix<S> m) {
  if (!m.is_square()) throw DimensionError("determinant: matrix is not square");
  const std::size_t n = m.rows();
  S det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    for (std::size_t i = c; i < n; ++i)
      if (!ScalarOps<S>::is_zero(m(i, c))) {
        p = i;
        break;
      }
    if (p == n) return S(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det = det * m(c, c);
    const S inv = ScalarOps<S>::inverse(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (ScalarOps<S>::is_zero(m(i, c))) continue;
      const S f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// P = B (B*B)⁻¹ B*, the orthogonal projector onto the right column span of B.
template <class S>
Matrix<S> projector_of_basis(const Matrix<S>& basis) {
  if (basis.cols() == 0) return Matrix<S>(basis.rows(), basis.rows());
  if (rank(basis) != basis.cols()) throw SingularMatrixError("projector_of_basis: basis is rank deficient");
  const Matrix<S> adj = basis.conj_transpose();
  return basis * inverse(adj * basis) * adj;
}

/// U*U = I, exactly for exact backends and within `tol` otherwise.
template <class S>
bool is_unitary(const Matrix<S>& u, double tol = 0.0) {
  if (!u.is_square()) return false;
  const Matrix<S> prod = u.conj_transpose() * u;
  if constexpr (ScalarOps<S>::exact) {
    return prod == Matrix<S>::identity(u.rows());
  } else {
    return max_abs_diff(prod, Matrix<S>::identity(u.rows())) <= tol;
  }
}

template <class S>
bool is_anti_hermitian(const Matrix<S>& x, double tol = 0.0) {
  if (!x.is_square()) return false;
  if constexpr (ScalarOps<S>::exact) {
    return x.conj_transpose() == -x;
  } else {
    return max_abs_diff(x.conj_transpose(), -x) <= tol;
  }
}

/// Cayley transform U = (I - X)(I + X)⁻¹ of an anti-Hermitian X; U*U = I.
template <class S>
Matrix<S> cayley_unitary(const Matrix<S>& x) {
  if (!is_anti_hermitian(x, 1e-12)) throw DimensionError("cayley_unitary: X must be anti-Hermitian");
  const auto id = Matrix<S>::identity(x.rows());
  return (id - x) * inverse(id + x);
}

/// g in the top-left block, identity on the remaining n - m coordinates.
template <class S>
Matrix<S> embed_top_left(const Matrix<S>& g, std::size_t n) {
  if (!g.is_square() || g.rows() > n) throw DimensionError("embed_top_left: block larger than ambient size");
  Matrix<S> out = Matrix<S>::identity(n);
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < g.cols(); ++c) out(r, c) = g(r, c);
  return out;
}

/// Rescales a nonzero real vector by a positive scalar so its first nonzero
/// entry is ±1. Two vectors are positive multiples of each other iff their
/// normalized forms are equal.
template <class S>
Matrix<S> normalize_signed_ray(const Matrix<S>& v) {
  static_assert(ScalarOps<S>::real, "signed rays need an ordered scalar field");
  for (std::size_t i = 0; i < v.rows(); ++i) {
    if (ScalarOps<S>::is_zero(v[i])) continue;
    S scale = ScalarOps<S>::inverse(v[i]);
    if (ScalarOps<S>::sign(v[i]) < 0) scale = -scale;
    Matrix<S> out = v.right_scaled(scale);
    if constexpr (!ScalarOps<S>::exact) out[i] = ScalarOps<S>::sign(v[i]) < 0 ? S(-1) : S(1);
    return out;
  }
  throw DomainError("zero vector has no ray");
}

}  // namespace bt::numeric
