#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bt/paradox/point.hpp"

namespace bt::paradox {

enum class Rule {
  BaseF2,              ///< F₂ = W(a) ⊔ a·W(a⁻¹) = W(b) ⊔ b·W(b⁻¹)
  FreeTransport,       ///< a free action transports the F₂ decomposition
  SubgroupLift,        ///< H-paradoxical and H ⊆ G gives G-paradoxical
  DisjointUnion,       ///< two invariant G-paradoxical parts
  EquidecompTransfer,  ///< along an equivariant bijection
  Pullback,            ///< along an equivariant map into a paradoxical space
  CountableAbsorb,     ///< X ≈ X∖D when some g moves D off itself forever
  Intertwine,          ///< K P¹ onto a sphere, via stereographic projection
};

std::string to_string(Rule r);
Rule parse_rule(const std::string& text);

/// Which group a node's conclusion is about. Matrices are n×n and move only
/// the top-left m×m block; m < n marks a starred (block-embedded) copy.
struct GroupTag {
  enum class Kind { F2, Free, Special, Full };

  Kind kind = Kind::F2;
  Field field = Field::R;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string pair;       // Free only
  bool absorber = false;  // Free only: the pair together with an absorber

  static GroupTag f2();
  static GroupTag free(freegroup::PairName pair);
  static GroupTag special(std::size_t n);
  static GroupTag full(Field f, std::size_t n);

  /// The same block acting inside n×n matrices.
  GroupTag in_ambient(std::size_t n) const;
  GroupTag with_absorber() const;
  /// "F2", "F2<so3-ab>+g", "SO(3)", "U(3)*4", …
  std::string str() const;
  Json to_json() const;
  static GroupTag from_json(const Json& j);
  friend bool operator==(const GroupTag&, const GroupTag&) = default;
};

/// h ⊆ g for the tags the builder produces.
bool is_subgroup(const GroupTag& h, const GroupTag& g);
/// SO(n+1) for sⁿ, G(n,K) otherwise.
GroupTag natural_group(const SpaceDescriptor& d);

/// Region names: the part of the node's space its conclusion is about.
namespace region {
inline const std::string kWhole = "whole";
inline const std::string kMinusExceptional = "minus-exceptional";
inline const std::string kMinusPoles = "minus-poles";
inline const std::string kMinusAxis = "minus-axis";
std::string off_hyperplane(std::size_t m);
std::string in_hyperplane(std::size_t m);
/// The domain of a catalog map.
std::string domain_of(const MapSpec& map);
/// What removing an exceptional-set recipe leaves.
std::string after_removing(const std::string& recipe);
}  // namespace region

/// One rule instance. BaseF2 has no space: its conclusion is about F₂ acting
/// on itself.
struct Node {
  Rule rule = Rule::BaseF2;
  std::optional<SpaceDescriptor> space;
  GroupTag group;
  std::string region = region::kWhole;
  Json params = Json::object();
  std::vector<Node> children;

  std::string space_str() const { return space ? space->str() : "F2"; }
  Json to_json() const;
  static Node from_json(const Json& j);
};

struct DeriveOptions {
  int absorb_bound = 50;
  std::size_t flag_component = 1;
};

/// The certificate for "d is G-paradoxical". Throws ConstraintError for
/// descriptors outside the theorem's range.
Node derive(const SpaceDescriptor& d, const DeriveOptions& opts = {});

/// {"schema": "paradox-cert/1", "space": …, "root": …}
Json certificate_to_json(const Node& root);
Node certificate_from_json(const Json& j);

/// Parameters shared by FreeTransport and Intertwine nodes.
ActingPair pair_of(const Node& node);
/// The translate for W(x⁻¹) named in the parameters, x ∈ {a, b}.
Letter translate_of(const Node& node, Letter x);
MapSpec map_of(const Node& node);

struct CheckReport {
  std::size_t nodes = 0;
  std::vector<std::string> violations;  ///< "path: message"
  std::vector<std::string> deferred;    ///< side conditions left to verify
  bool passed() const { return violations.empty(); }
  Json to_json() const;
};

/// Structural validation only; nothing is sampled.
CheckReport check(const Node& root);

/// Node paths: "0" for the root, "0.1" for its second child, …
const Node& node_at(const Node& root, const std::string& path);

}  // namespace bt::paradox
