#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bt/spaces/field.hpp"

namespace bt::spaces {

/// One of sphere(n) = Sⁿ ⊂ ℝⁿ⁺¹, proj(K,n) = K P^{n-1} (lines in Kⁿ),
/// grass(K,n,k) = Gr_k Kⁿ, flag(K;d₁,…,d_k) with d_k = n.
struct SpaceDescriptor {
  enum class Kind { Sphere, Projective, Grassmann, Flag };

  Kind kind = Kind::Sphere;
  Field field = Field::R;
  std::size_t n = 0;
  std::size_t k = 0;               // Grassmann only
  std::vector<std::size_t> dims;   // Flag only, ends with n

  static SpaceDescriptor sphere(std::size_t n);
  static SpaceDescriptor projective(Field f, std::size_t n);
  static SpaceDescriptor grassmann(Field f, std::size_t n, std::size_t k);
  static SpaceDescriptor flag(Field f, std::vector<std::size_t> dims);

  /// Size of the vectors or matrices representing a point: n+1 for spheres, n otherwise.
  std::size_t ambient() const { return kind == Kind::Sphere ? n + 1 : n; }
  /// Same space up to the identification grass(K,n,1) = proj(K,n).
  bool same_space(const SpaceDescriptor& other) const;

  std::string str() const;
  friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;
};

/// Throws ConstraintError naming the violated hypothesis.
void validate(const SpaceDescriptor& d);

/// Parses and validates. ParseError on bad syntax, ConstraintError on
/// well-formed descriptors outside the theorem's range.
SpaceDescriptor parse_descriptor(std::string_view text);

}  // namespace bt::spaces
