#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "bt/error.hpp"
#include "bt/freegroup/pair.hpp"

namespace bt::freegroup {

/// Generator of ker(evaluate(w) - I), scaled so its first nonzero entry is 1.
template <class S>
Matrix<S> axis_of(const Word& w, const GeneratorPair<S>& pair) {
  if (w.empty()) throw KernelDimensionError("the identity word has no axis");
  const Matrix<S> g = evaluate(w, pair);
  const Matrix<S> k = numeric::kernel(g - Matrix<S>::identity(pair.dim()));
  if (k.cols() != 1)
    throw KernelDimensionError("fixed space of " + w.str() + " has dimension " + std::to_string(k.cols()));
  Matrix<S> ray = numeric::normalize_signed_ray(k);
  for (std::size_t i = 0; i < ray.rows(); ++i) {
    if (numeric::is_zero(ray[i])) continue;
    if (numeric::ScalarOps<S>::sign(ray[i]) < 0) ray = -ray;
    break;
  }
  return ray;
}

template <class S>
struct AxisRecord {
  Matrix<S> ray;
  Word word;  ///< shortlex-least word of the ball with this axis
};

template <class S>
struct ExceptionalSet {
  int depth = 0;
  std::vector<AxisRecord<S>> axes;

  std::size_t size() const { return axes.size(); }
  /// Both sphere points ±ray of every axis, as normalized signed rays.
  std::vector<Matrix<S>> sphere_points() const {
    std::vector<Matrix<S>> out;
    out.reserve(2 * axes.size());
    for (const auto& a : axes) {
      out.push_back(a.ray);
      out.push_back(-a.ray);
    }
    return out;
  }
};

/// Axes of all nonidentity words of length ≤ L, deduplicated by exact ray
/// equality, in shortlex order of their first word.
template <class S>
ExceptionalSet<S> exceptional_set(const GeneratorPair<S>& pair, int L) {
  if (L < 1) throw std::invalid_argument("exceptional_set: depth must be at least 1");
  ExceptionalSet<S> out;
  out.depth = L;
  std::unordered_set<std::string> seen;
  for (const Word& w : enumerate_ball(L)) {
    if (w.empty()) continue;
    Matrix<S> ray = axis_of(w, pair);
    if (seen.insert(numeric::key(ray)).second) out.axes.push_back({std::move(ray), w});
  }
  return out;
}

}  // namespace bt::freegroup
