#pragma once

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bt/paradox/point.hpp"

namespace bt::paradox {

/// A point together with how it was built: w·seed for a word of the acting
/// pair, or gᵏ·d for a point d of an exceptional set when absorber_power = k.
struct ProvenancedPoint {
  AnyPoint point;
  Word word;
  int absorber_power = -1;
  std::string origin;  ///< node path of the seed (or absorber) it came from
};

/// The seed is fixed by a nonidentity word, so the orbit is not free.
struct FixedSeedError : DomainError {
  FixedSeedError(Word w, const std::string& msg) : DomainError(msg), word(w) {}
  Word word;
};

/// {w·seed : |w| ≤ L}, pairwise distinct, in shortlex order of w.
class Fragment {
 public:
  Fragment() = default;

  const AnyPoint& seed() const { return seed_; }
  const ActingPair& pair() const { return pair_; }
  int depth() const { return depth_; }
  const std::vector<ProvenancedPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  /// Word of the fragment point equal to p.
  std::optional<Word> find(const AnyPoint& p) const;
  std::optional<Word> find_key(const std::string& key) const;

  friend Fragment orbit_fragment(const AnyPoint& seed, const ActingPair& pair, int depth, const std::string& origin);

 private:
  AnyPoint seed_;
  ActingPair pair_;
  int depth_ = 0;
  std::vector<ProvenancedPoint> points_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Builds the fragment level by level. A collision between w₁·seed and
/// w₂·seed means reduce(w₁⁻¹w₂) fixes the seed; FixedSeedError names it.
Fragment orbit_fragment(const AnyPoint& seed, const ActingPair& pair, int depth, const std::string& origin = "");

struct ReassemblyReport {
  int depth = 0;
  std::array<std::uint64_t, 5> piece_sizes{};  ///< indexed by PrefixClass
  std::uint64_t covered_checked = 0;           ///< radius-(L-1) points checked, summed over both translates
  std::uint64_t failures = 0;
  std::optional<int> failure_radius;  ///< smallest |w| of a point covered ≠ 1 times
  std::vector<std::string> examples;
  bool passed() const { return failures == 0; }
  Json to_json() const;
};

/// For x ∈ {a, b} with translate t_x: every point of the radius-(L-1) ball
/// lies in exactly one of W(x)·seed and t_x·(W(x⁻¹)·seed). The pieces are
/// disjoint because the fragment points are.
ReassemblyReport check_reassembly(const Fragment& f, const AnyMatrix& translate_a, const AnyMatrix& translate_b);

}  // namespace bt::paradox
