#pragma once

#include <cstddef>
#include <string>

#include "bt/numeric/complex.hpp"
#include "bt/numeric/quadratic.hpp"
#include "bt/numeric/quaternion.hpp"

namespace bt::spaces {

enum class Field { R, C, H };

/// Smallest n for which K P^{n-1} is shown paradoxical: 3 for ℝ, 2 for ℂ and ℍ.
constexpr std::size_t base_dimension(Field k) { return k == Field::R ? 3 : 2; }

char to_char(Field k);
/// Parses "R", "C" or "H".
Field field_from_string(const std::string& text);

/// Exact and floating scalars used for points over each field. The real
/// backend is ℚ(√2) so the standard rotation pair acts exactly; ℂ and ℍ use
/// ℚ(√5) so the √5-denominator pair does.
template <Field K>
struct FieldScalars;
template <>
struct FieldScalars<Field::R> {
  using Exact = numeric::QSqrt2;
  using Float = double;
};
template <>
struct FieldScalars<Field::C> {
  using Exact = numeric::Complex<numeric::QSqrt5>;
  using Float = numeric::Complex<double>;
};
template <>
struct FieldScalars<Field::H> {
  using Exact = numeric::Quaternion<numeric::QSqrt5>;
  using Float = numeric::Quaternion<double>;
};

}  // namespace bt::spaces
