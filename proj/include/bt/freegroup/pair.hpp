#pragma once

#include <array>
#include <string>

#include "bt/freegroup/word.hpp"
#include "bt/numeric/gauss_sqrt5.hpp"
#include "bt/numeric/linalg.hpp"
#include "bt/numeric/matrix.hpp"
#include "bt/numeric/quaternion.hpp"

namespace bt::freegroup {

using numeric::GaussSqrt5;
using numeric::Matrix;
using numeric::QSqrt2;
using numeric::QSqrt5;
using numeric::Rational;
using numeric::Quaternion;

enum class PairName { SO3_AB, SU2_SQRT5, SP1_SQRT5 };

std::string to_string(PairName name);
/// "so3-ab", "su2-sqrt5", "sp1-sqrt5".
PairName parse_pair_name(const std::string& text);

/// Images of a and b in a unitary group. The inverse images are cached
/// because every enumeration multiplies by all four letters.
template <class S>
class GeneratorPair {
 public:
  GeneratorPair(PairName name, Matrix<S> a, Matrix<S> b) : name_(name), native_dim_(a.rows()) {
    if (!a.is_square() || a.rows() != b.rows() || !b.is_square())
      throw DimensionError("generator pair: a and b must be square of equal size");
    images_ = {a, b, a.conj_transpose(), b.conj_transpose()};
  }

  PairName name() const { return name_; }
  /// Ambient matrix size (after any block embedding).
  std::size_t dim() const { return images_[0].rows(); }
  /// Size of the block carrying the free group; dim() - native_dim() trailing
  /// coordinates are fixed.
  std::size_t native_dim() const { return native_dim_; }
  bool embedded() const { return dim() != native_dim_; }
  /// Display name: "so3-ab", or "so3-ab*4" when embedded in 4×4.
  std::string label() const {
    return embedded() ? to_string(name_) + "*" + std::to_string(dim()) : to_string(name_);
  }

  const Matrix<S>& a() const { return images_[0]; }
  const Matrix<S>& b() const { return images_[1]; }
  const Matrix<S>& image(Letter x) const { return images_[static_cast<std::size_t>(x)]; }

  /// The same pair acting on the top-left block of K^n.
  GeneratorPair embed(std::size_t n) const {
    GeneratorPair out = *this;
    for (auto& m : out.images_) m = numeric::embed_top_left(m, n);
    return out;
  }

 private:
  PairName name_;
  std::size_t native_dim_;
  std::array<Matrix<S>, 4> images_;
};

/// The rotations by arccos(1/3) about the z- and x-axes, over ℚ(√2).
GeneratorPair<QSqrt2> so3_ab();
/// SU(2) images of the unit quaternions (1+2i)/√5 and (1+2j)/√5, where
/// α + βj ↦ [[α, -β̄], [β, ᾱ]].
GeneratorPair<GaussSqrt5> su2_sqrt5();
/// diag(q, 1) in Sp(2) for the same two unit quaternions.
GeneratorPair<Quaternion<QSqrt5>> sp1_sqrt5();

/// Product of the letter images, left to right; the identity for ε.
template <class S>
Matrix<S> evaluate(const Word& w, const GeneratorPair<S>& pair) {
  Matrix<S> out = Matrix<S>::identity(pair.dim());
  for (std::size_t i = 0; i < w.size(); ++i) out = out * pair.image(w[i]);
  return out;
}

/// w·v without forming the product matrix (right-to-left matvecs).
template <class S>
Matrix<S> apply_word(const Word& w, const GeneratorPair<S>& pair, Matrix<S> v) {
  for (std::size_t i = w.size(); i-- > 0;) v = pair.image(w[i]) * v;
  return v;
}

}  // namespace bt::freegroup
