#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bt/numeric/linalg.hpp"
#include "bt/numeric/matrix.hpp"

namespace bt::freegroup {

struct AbsorberReport {
  int bound = 0;
  std::size_t set_size = 0;
  std::uint64_t images_checked = 0;
  /// (m, n) with g^m(D) ∩ g^n(D) ≠ ∅; always reported as (0, n - m).
  std::optional<std::pair<int, int>> collision;
  std::string collision_point;
  bool passed() const { return !collision.has_value(); }
};

/// Checks g^m(D) ∩ g^n(D) = ∅ for 0 ≤ m < n ≤ M. Since g is a bijection this
/// is the same as g^k(D) ∩ D = ∅ for 1 ≤ k ≤ M, so only M images of D are
/// formed. `apply` maps a point to its g-image, `key` gives a canonical
/// string for exact comparison.
template <class Point, class Apply, class Key>
AbsorberReport absorber_check(const std::vector<Point>& d, int bound, Apply&& apply, Key&& key) {
  AbsorberReport report;
  report.bound = bound;
  report.set_size = d.size();
  std::unordered_set<std::string> base;
  for (const Point& p : d) base.insert(key(p));
  std::vector<Point> current = d;
  for (int k = 1; k <= bound && !current.empty(); ++k) {
    for (Point& p : current) {
      p = apply(p);
      ++report.images_checked;
      const std::string kp = key(p);
      if (base.count(kp)) {
        report.collision = std::make_pair(0, k);
        report.collision_point = kp;
        return report;
      }
    }
  }
  return report;
}

/// Sphere-point version: D is a list of normalized signed rays.
template <class S>
AbsorberReport absorber_check_rays(const numeric::Matrix<S>& g, const std::vector<numeric::Matrix<S>>& rays,
                                   int bound) {
  using M = numeric::Matrix<S>;
  return absorber_check(
      rays, bound, [&](const M& v) { return numeric::normalize_signed_ray(M(g * v)); },
      [](const M& v) { return numeric::key(v); });
}

/// Rotation about (5,0,2) with cosine 71/129, the Cayley transform of a
/// small integer skew matrix. The more obvious rational rotation about
/// (1,1,1) maps an axis of a length-4 word onto another axis, so it only
/// absorbs the exceptional set up to radius 3.
template <class S>
numeric::Matrix<S> s2_absorber() {
  const int m[3][3] = {{121, 40, 20}, {-40, 71, 100}, {20, -100, 79}};
  numeric::Matrix<S> g(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) g(r, c) = numeric::from_rational<S>(numeric::ratio(m[r][c], 129));
  return g;
}

/// Rotation of the (e_i, e_j) plane with cosine 3/5 and sine 4/5.
template <class S>
numeric::Matrix<S> plane_rotation(std::size_t n, std::size_t i, std::size_t j) {
  auto g = numeric::Matrix<S>::identity(n);
  const S c = numeric::from_rational<S>(numeric::Rational(3, 5));
  const S s = numeric::from_rational<S>(numeric::Rational(4, 5));
  g(i, i) = c;
  g(j, j) = c;
  g(i, j) = -s;
  g(j, i) = s;
  return g;
}

}  // namespace bt::freegroup
