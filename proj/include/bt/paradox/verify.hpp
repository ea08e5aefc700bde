#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bt/equimaps/selftest.hpp"
#include "bt/freegroup/absorber.hpp"
#include "bt/paradox/derivation.hpp"
#include "bt/paradox/fragment.hpp"
#include "bt/random.hpp"

namespace bt::paradox {

using equimaps::Mode;

// ---- equidecomposition witnesses ---------------------------------------

enum class Membership { No, Yes, Unknown };

/// One piece Aᵢ = gᵢ·Bᵢ. Predicates may use the point's provenance and
/// bounded searches; `pull` applies gᵢ⁻¹ and updates the provenance.
struct WitnessPiece {
  std::string name;
  std::function<Membership(const ProvenancedPoint&)> in_source;
  std::function<Membership(const ProvenancedPoint&)> in_target;
  std::function<ProvenancedPoint(const ProvenancedPoint&)> pull;
};

struct EquidecompWitness {
  std::vector<WitnessPiece> pieces;
};

struct EquidecompReport {
  std::uint64_t checked = 0;
  std::uint64_t unknown = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> examples;
  bool passed() const { return failures == 0 && checked > 0; }
  Json to_json() const;
};

/// Each source sample lies in exactly one Aᵢ and its gᵢ⁻¹-image in Bᵢ; each
/// target sample lies in exactly one Bᵢ. Samples whose membership cannot be
/// decided are counted as unknown rather than checked.
EquidecompReport equidecomp_verify(const EquidecompWitness& w, const std::vector<ProvenancedPoint>& source,
                                   const std::vector<ProvenancedPoint>& target);

// ---- per-certificate analysis -----------------------------------------

/// A seed at some node and the free pair that moves it, block-embedded to
/// that node's ambient. `base` is the path of the node owning the fragment.
struct Source {
  std::string base;
  AnyPoint seed;
  ActingPair pair;
};

/// gᵏ(D) for 0 ≤ k ≤ bound. Membership and the disjointness check go
/// through a grid of float shadows; every float hit is confirmed exactly, so
/// answers are exact while only near-collisions pay for rational arithmetic.
class AbsorbedSet {
 public:
  AbsorbedSet() = default;
  AbsorbedSet(std::vector<AnyPoint> exceptional, const AnyMatrix& g, int bound, int extra);

  const std::vector<AnyPoint>& exceptional() const { return d_; }
  int bound() const { return bound_; }
  /// gᵏ·dᵢ, exact, for 0 ≤ k ≤ bound + extra.
  AnyPoint image(std::size_t i, int k) const { return act(powers_.at(static_cast<std::size_t>(k)), d_.at(i)); }
  /// Least k ≤ bound with p ∈ gᵏ(D).
  std::optional<int> power_of(const AnyPoint& p) const;
  const freegroup::AbsorberReport& report() const { return report_; }
  /// Float hits that exact arithmetic rejected during the disjointness check.
  std::uint64_t near_misses() const { return near_misses_; }

 private:
  std::vector<std::uint32_t> near(const std::vector<double>& v) const;

  std::vector<AnyPoint> d_;
  std::vector<AnyMatrix> powers_;
  int bound_ = 0;
  std::size_t stride_ = 0;
  std::vector<double> coords_;  // id = k·|D| + i
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells_;
  freegroup::AbsorberReport report_;
  std::uint64_t near_misses_ = 0;
};

struct Classification {
  std::string label;          ///< "W(a)", …, "identity", "absorbed", "gap" or "unknown"
  std::optional<Word> word;   ///< the fragment word, when found
  std::string node;           ///< where the decision was made
};

/// Seeds pushed down the certificate, orbit fragments at every FreeTransport
/// and Intertwine node, and absorbed sets at every CountableAbsorb node.
/// Failures while building (fixed seeds, seeds outside a map's domain) are
/// kept per node rather than thrown.
class Analysis {
 public:
  struct Options {
    int depth = 6;
    int exceptional_depth = 0;  ///< 0: min(depth, 6)
    int absorb_bound = 0;       ///< 0: use each node's bound
    int extra_absorb = 10;
    int seed_attempts = 8;
    unsigned jobs = 1;
  };

  Analysis(const Node& root, const Options& opts);
  Analysis(const Node& root, const Options& opts, const AnyPoint& seed);

  const Node& root() const { return *root_; }
  const Options& options() const { return opts_; }
  std::vector<std::string> paths() const;
  /// Which seed candidate was used (0 for the default seed).
  int seed_attempt() const { return seed_attempt_; }

  const std::optional<AnyPoint>& seed(const std::string& path) const { return info(path).seed; }
  const std::string& error(const std::string& path) const { return info(path).error; }
  const std::vector<Source>& sources(const std::string& path) const { return info(path).sources; }
  const Fragment* fragment(const std::string& path) const;
  const AbsorbedSet* absorbed(const std::string& path) const;

  /// The piece of p at the node (default: the root).
  Classification classify_at(const std::string& path, const AnyPoint& p) const;
  /// Root classification; throws DomainError when p's provenance word
  /// disagrees with the fragment.
  Classification classify(const ProvenancedPoint& p) const;

 private:
  struct Info {
    const Node* node = nullptr;
    std::optional<AnyPoint> seed;
    std::string error;
    std::vector<Source> sources;
    std::optional<Fragment> fragment;
    std::optional<AbsorbedSet> absorbed;
  };

  void plan(const Node& node, const std::string& path, std::optional<AnyPoint> seed);
  void build();
  const Info& info(const std::string& path) const;

  const Node* root_;
  Options opts_;
  int seed_attempt_ = 0;
  std::map<std::string, Info> info_;
};

/// Exceptional set D at a CountableAbsorb node, as points of its space.
std::vector<AnyPoint> exceptional_points(const Node& node, int depth);

// ---- verification -------------------------------------------------------

struct VerifyOptions {
  int depth = 6;
  std::size_t samples = 500;
  std::uint64_t seed = 42;
  Mode mode = Mode::Exact;
  double tol = 1e-9;
  int absorb_bound = 0;       ///< 0: use each node's bound
  int exceptional_depth = 0;  ///< 0: min(depth, 6)
  unsigned jobs = 1;
  Json to_json() const;
};

struct NodeReport {
  std::string path;
  std::string rule;
  std::string space;
  std::string group;
  std::string status;  ///< "pass", "fail" or "unknown" (nothing was checked)
  Json stats = Json::object();
  std::vector<std::string> failures;
  Json to_json() const;
};

struct VerificationReport {
  std::string space;
  VerifyOptions options;
  int seed_candidate = 0;  ///< see seed_candidate()
  std::vector<NodeReport> nodes;
  bool passed() const;
  Json to_json() const;
};

VerificationReport verify(const Node& root, const VerifyOptions& opts);

/// Uniform random reduced word of length ≤ L.
Word random_word(int L, Rng& rng);

}  // namespace bt::paradox
