#pragma once

#include <array>
#include <string>
#include <variant>

#include "bt/equimaps/selftest.hpp"
#include "bt/freegroup/pair.hpp"
#include "bt/freegroup/word.hpp"
#include "bt/numeric/scalar_json.hpp"
#include "bt/spaces/descriptor.hpp"
#include "bt/spaces/points.hpp"

namespace bt::paradox {

using equimaps::MapSpec;
using freegroup::Letter;
using freegroup::Word;
using numeric::Json;
using numeric::Matrix;
using spaces::Field;
using spaces::SpaceDescriptor;

using RealScalar = numeric::QSqrt2;
using ComplexScalar = numeric::Complex<numeric::QSqrt5>;
using QuatScalar = numeric::Quaternion<numeric::QSqrt5>;

/// An exact point of any supported space.
using AnyPoint =
    std::variant<spaces::SpherePoint<RealScalar>, spaces::Subspace<RealScalar>, spaces::Subspace<ComplexScalar>,
                 spaces::Subspace<QuatScalar>, spaces::FlagPoint<RealScalar>, spaces::FlagPoint<ComplexScalar>,
                 spaces::FlagPoint<QuatScalar>>;

/// An exact group element over one of the three field backends.
using AnyMatrix = std::variant<Matrix<RealScalar>, Matrix<ComplexScalar>, Matrix<QuatScalar>>;

std::string key(const AnyPoint& p);
/// g·p; throws DimensionError on a backend or size mismatch.
AnyPoint act(const AnyMatrix& g, const AnyPoint& p);
/// Applies a catalog map. Stereographic is not available here (it is float-only).
AnyPoint apply_map(const MapSpec& spec, const AnyPoint& p);
Json point_to_json(const AnyPoint& p);

/// Real coordinates of gᵏ·p in double precision for 0 ≤ k ≤ count, iterated
/// in floating point: unit vectors for sphere points, projector entries for
/// subspaces and flags. Distinct exact points can land close together, equal
/// ones stay within a few ulps per step.
std::vector<std::vector<double>> float_orbit(const AnyMatrix& g, const AnyPoint& p, int count);
inline std::vector<double> float_coordinates(const AnyPoint& p, const AnyMatrix& like) {
  return float_orbit(like, p, 0).front();
}

std::size_t rows(const AnyMatrix& m);
AnyMatrix identity_like(const AnyMatrix& m, std::size_t n);
AnyMatrix embed(const AnyMatrix& m, std::size_t n);
bool is_unitary(const AnyMatrix& m);
AnyMatrix multiply(const AnyMatrix& a, const AnyMatrix& b);
/// Identity outside the top-left block of size `block`.
bool is_block_embedded(const AnyMatrix& m, std::size_t block);
Field field_of(const AnyMatrix& m);
Json matrix_json(const AnyMatrix& m);
AnyMatrix matrix_from_json(const Json& j, Field f);

/// A free pair acting on a space, with cached inverse images.
struct ActingPair {
  std::string label;
  std::size_t native_dim = 0;
  std::array<AnyMatrix, 4> images;

  const AnyMatrix& image(Letter x) const { return images[static_cast<std::size_t>(x)]; }
  std::size_t dim() const { return rows(images[0]); }
  ActingPair embed(std::size_t n) const;
  static ActingPair from_generators(std::string label, const AnyMatrix& a, const AnyMatrix& b);
};

/// The named exact pair over the field its points live in: so3-ab over ℝ,
/// su2-sqrt5 over ℂ, sp1-sqrt5 over ℍ.
ActingPair standard_pair(freegroup::PairName name);
Field pair_field(freegroup::PairName name);

/// w·p, applying the letters right to left.
AnyPoint apply_word(const ActingPair& pair, const Word& w, const AnyPoint& p);

/// A fixed Cayley element of size n over the field, with real entries.
AnyMatrix reference_rotation(Field f, std::size_t n);

/// Standard seeds: the ray or line through (1, 2, …, n), and for
/// Grassmannians and flags the reference rotation applied to the coordinate
/// subspace or standard flag.
AnyPoint default_seed(const SpaceDescriptor& d);
/// The default seed moved by a fixed rotation depending on `attempt`; 0 gives
/// the default seed itself. Used when a seed turns out to be exceptional
/// somewhere down the certificate.
AnyPoint seed_candidate(const SpaceDescriptor& d, int attempt);
/// A seed of grass(K,n,k) lying inside span{e₁..e_m}.
AnyPoint hyperplane_seed(const SpaceDescriptor& d, std::size_t m);

/// Parses a comma-separated exact vector ("1,2,3" or "1/2,-3") as a sphere or
/// projective seed for the given space. Real entries only.
AnyPoint parse_seed_point(const SpaceDescriptor& d, const std::string& text);

}  // namespace bt::paradox
