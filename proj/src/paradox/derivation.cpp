#include "bt/paradox/derivation.hpp"

#include <map>
#include <set>

#include "bt/freegroup/absorber.hpp"

namespace bt::paradox {

namespace {

const std::map<Rule, std::string> kRuleNames = {
    {Rule::BaseF2, "BaseF2"},
    {Rule::FreeTransport, "FreeTransport"},
    {Rule::SubgroupLift, "SubgroupLift"},
    {Rule::DisjointUnion, "DisjointUnion"},
    {Rule::EquidecompTransfer, "EquidecompTransfer"},
    {Rule::Pullback, "Pullback"},
    {Rule::CountableAbsorb, "CountableAbsorb"},
    {Rule::Intertwine, "Intertwine"},
};

const char* kKindNames[] = {"f2", "free", "special", "full"};

std::string group_name(Field f, bool special) {
  switch (f) {
    case Field::R: return special ? "SO" : "O";
    case Field::C: return special ? "SU" : "U";
    case Field::H: return "Sp";
  }
  return "?";
}

}  // namespace

std::string to_string(Rule r) { return kRuleNames.at(r); }

Rule parse_rule(const std::string& text) {
  for (const auto& [r, name] : kRuleNames)
    if (name == text) return r;
  throw ParseError("unknown rule '" + text + "'");
}

// ---- group tags ---------------------------------------------------------

GroupTag GroupTag::f2() { return GroupTag{}; }

GroupTag GroupTag::free(freegroup::PairName pair) {
  GroupTag g;
  g.kind = Kind::Free;
  g.field = pair_field(pair);
  g.n = g.m = pair == freegroup::PairName::SO3_AB ? 3 : 2;
  g.pair = freegroup::to_string(pair);
  return g;
}

GroupTag GroupTag::special(std::size_t n) {
  GroupTag g;
  g.kind = Kind::Special;
  g.n = g.m = n;
  return g;
}

GroupTag GroupTag::full(Field f, std::size_t n) {
  GroupTag g;
  g.kind = Kind::Full;
  g.field = f;
  g.n = g.m = n;
  return g;
}

GroupTag GroupTag::in_ambient(std::size_t n) const {
  GroupTag g = *this;
  g.n = n;
  return g;
}

GroupTag GroupTag::with_absorber() const {
  GroupTag g = *this;
  g.absorber = true;
  return g;
}

std::string GroupTag::str() const {
  std::string out;
  switch (kind) {
    case Kind::F2: return "F2";
    case Kind::Free: out = "F2<" + pair + ">" + (absorber ? "+g" : ""); break;
    case Kind::Special: out = group_name(field, true) + "(" + std::to_string(m) + ")"; break;
    case Kind::Full: out = group_name(field, false) + "(" + std::to_string(m) + ")"; break;
  }
  if (n != m) out += "*" + std::to_string(n);
  return out;
}

Json GroupTag::to_json() const {
  Json j{{"kind", kKindNames[static_cast<int>(kind)]}, {"name", str()}};
  if (kind == Kind::F2) return j;
  j["field"] = std::string(1, spaces::to_char(field));
  j["n"] = n;
  j["m"] = m;
  if (kind == Kind::Free) {
    j["pair"] = pair;
    j["absorber"] = absorber;
  }
  return j;
}

GroupTag GroupTag::from_json(const Json& j) {
  GroupTag g;
  const std::string kind = j.at("kind").get<std::string>();
  bool found = false;
  for (int i = 0; i < 4; ++i)
    if (kind == kKindNames[i]) {
      g.kind = static_cast<Kind>(i);
      found = true;
    }
  if (!found) throw ParseError("unknown group kind '" + kind + "'");
  if (g.kind == Kind::F2) return g;
  g.field = spaces::field_from_string(j.at("field").get<std::string>());
  g.n = j.at("n").get<std::size_t>();
  g.m = j.at("m").get<std::size_t>();
  if (g.kind == Kind::Free) {
    g.pair = j.at("pair").get<std::string>();
    g.absorber = j.value("absorber", false);
  }
  return g;
}

bool is_subgroup(const GroupTag& h, const GroupTag& g) {
  using Kind = GroupTag::Kind;
  if (h == g) return true;
  if (h.kind == Kind::F2 || g.kind == Kind::F2) return false;
  if (h.field != g.field || h.n != g.n || h.m > g.m) return false;
  switch (g.kind) {
    case Kind::Full: return true;
    case Kind::Special:
      return h.kind == Kind::Special || (h.kind == Kind::Free && h.field == Field::R);
    case Kind::Free: return h.kind == Kind::Free && h.pair == g.pair && (!h.absorber || g.absorber);
    case Kind::F2: break;
  }
  return false;
}

GroupTag natural_group(const SpaceDescriptor& d) {
  if (d.kind == SpaceDescriptor::Kind::Sphere) return GroupTag::special(d.n + 1);
  return GroupTag::full(d.field, d.n);
}

// ---- regions ------------------------------------------------------------

namespace region {

std::string off_hyperplane(std::size_t m) { return "off-hyperplane:" + std::to_string(m); }
std::string in_hyperplane(std::size_t m) { return "in-hyperplane:" + std::to_string(m); }

std::string domain_of(const MapSpec& map) {
  using equimaps::MapId;
  switch (map.id) {
    case MapId::SphereDrop: return kMinusPoles;
    case MapId::ProjDrop: return kMinusAxis;
    case MapId::GrassSlice: return off_hyperplane(map.m);
    case MapId::HyperplaneRestrict: return in_hyperplane(map.m);
    default: return kWhole;
  }
}

std::string after_removing(const std::string& recipe) {
  if (recipe == "axes" || recipe == "axis-lines") return kMinusExceptional;
  if (recipe == "poles") return kMinusPoles;
  if (recipe == "axis") return kMinusAxis;
  throw ParseError("unknown exceptional-set recipe '" + recipe + "'");
}

}  // namespace region

// ---- nodes --------------------------------------------------------------

Json Node::to_json() const {
  Json kids = Json::array();
  for (const auto& c : children) kids.push_back(c.to_json());
  return Json{{"rule", to_string(rule)}, {"space", space_str()}, {"group", group.to_json()},
              {"region", region},        {"params", params},      {"children", std::move(kids)}};
}

Node Node::from_json(const Json& j) {
  Node n;
  n.rule = parse_rule(j.at("rule").get<std::string>());
  const std::string space = j.at("space").get<std::string>();
  if (space != "F2") n.space = spaces::parse_descriptor(space);
  n.group = GroupTag::from_json(j.at("group"));
  n.region = j.value("region", region::kWhole);
  n.params = j.value("params", Json::object());
  for (const auto& c : j.at("children")) n.children.push_back(from_json(c));
  return n;
}

Json certificate_to_json(const Node& root) {
  return Json{{"schema", "paradox-cert/1"}, {"space", root.space_str()}, {"root", root.to_json()}};
}

Node certificate_from_json(const Json& j) {
  if (!j.is_object() || j.value("schema", "") != "paradox-cert/1")
    throw ParseError("not a paradox-cert/1 certificate");
  return Node::from_json(j.at("root"));
}

ActingPair pair_of(const Node& node) {
  const auto name = freegroup::parse_pair_name(node.params.at("pair").get<std::string>());
  const Field f = pair_field(name);
  const auto& gens = node.params.at("generators");
  return ActingPair::from_generators(freegroup::to_string(name), matrix_from_json(gens.at("a"), f),
                                     matrix_from_json(gens.at("b"), f));
}

Letter translate_of(const Node& node, Letter x) {
  const std::string key = x == Letter::a ? "W(a^-1)" : "W(b^-1)";
  const std::string text = node.params.at("translates").at(key).get<std::string>();
  if (text.size() != 1) throw ParseError("translate must be a single letter, got '" + text + "'");
  return freegroup::letter_from_char(text[0]);
}

MapSpec map_of(const Node& node) { return MapSpec::from_json(node.params.at("map")); }

// ---- builders -----------------------------------------------------------

namespace {

using Kind = SpaceDescriptor::Kind;

Json pair_params(freegroup::PairName name, const std::string& recipe) {
  const ActingPair p = standard_pair(name);
  return Json{{"pair", freegroup::to_string(name)},
              {"generators", {{"a", matrix_json(p.images[0])}, {"b", matrix_json(p.images[1])}}},
              {"translates", {{"W(a^-1)", "a"}, {"W(b^-1)", "b"}}},
              {"exceptional", recipe}};
}

Json absorb_params(const AnyMatrix& g, const std::string& recipe, int bound) {
  return Json{{"absorber", matrix_json(g)},
              {"exceptional", recipe},
              {"bound", bound},
              {"witness",
               {{"source_pieces", {"absorbed-shifted", "rest"}},
                {"target_pieces", {"absorbed", "rest"}},
                {"elements", {"absorber", "identity"}}}}};
}

AnyMatrix plane_rotation_over(Field f, std::size_t n) {
  switch (f) {
    case Field::R: return freegroup::plane_rotation<RealScalar>(n, 0, n - 1);
    case Field::C: return freegroup::plane_rotation<ComplexScalar>(n, 0, n - 1);
    case Field::H: return freegroup::plane_rotation<QuatScalar>(n, 0, n - 1);
  }
  throw ParseError("unknown field");
}

Node make(Rule rule, const SpaceDescriptor& space, GroupTag group, std::string region, Json params,
          std::vector<Node> children) {
  Node n;
  n.rule = rule;
  n.space = space;
  n.group = std::move(group);
  n.region = std::move(region);
  n.params = std::move(params);
  n.children = std::move(children);
  return n;
}

Node base_f2() {
  Node n;
  n.rule = Rule::BaseF2;
  n.group = GroupTag::f2();
  return n;
}

/// S² and ℝP²: the standard pair acts freely off the axes, and an absorber
/// puts the axes back.
Node free_base(const SpaceDescriptor& d, const DeriveOptions& opts) {
  const bool sphere = d.kind == Kind::Sphere;
  const std::string recipe = sphere ? "axes" : "axis-lines";
  const auto name = freegroup::PairName::SO3_AB;
  Node transport = make(Rule::FreeTransport, d, GroupTag::free(name), region::kMinusExceptional,
                        pair_params(name, recipe), {base_f2()});
  Json absorb = absorb_params(freegroup::s2_absorber<RealScalar>(), recipe, opts.absorb_bound);
  absorb["pair"] = freegroup::to_string(name);
  Node absorbed = make(Rule::CountableAbsorb, d, GroupTag::free(name).with_absorber(), region::kWhole,
                       std::move(absorb), {std::move(transport)});
  return make(Rule::SubgroupLift, d, natural_group(d), region::kWhole, Json::object(), {std::move(absorbed)});
}

/// X ≈ X∖D by an absorber, X∖D paradoxical because it maps onto a smaller
/// space of the same family.
Node absorb_then_pull(const SpaceDescriptor& d, const AnyMatrix& g, const std::string& recipe, const MapSpec& map,
                      Node child, const DeriveOptions& opts) {
  const std::string rest = region::after_removing(recipe);
  const GroupTag group = natural_group(d);
  Node pulled = make(Rule::Pullback, d, child.group.in_ambient(d.ambient()), rest, Json{{"map", map.to_json()}},
                     {std::move(child)});
  Node lifted = make(Rule::SubgroupLift, d, group, rest, Json::object(), {std::move(pulled)});
  return make(Rule::CountableAbsorb, d, group, region::kWhole, absorb_params(g, recipe, opts.absorb_bound),
              {std::move(lifted)});
}

Node derive_sphere(const SpaceDescriptor& d, const DeriveOptions& opts) {
  if (d.n == 2) return free_base(d, opts);
  Node child = derive_sphere(SpaceDescriptor::sphere(d.n - 1), opts);
  return absorb_then_pull(d, freegroup::plane_rotation<RealScalar>(d.n + 1, 0, d.n), "poles",
                          MapSpec::sphere_drop(d.n), std::move(child), opts);
}

Node derive_projective(const SpaceDescriptor& d, const DeriveOptions& opts) {
  const std::size_t base = spaces::base_dimension(d.field);
  if (d.n == base) {
    if (d.field == Field::R) return free_base(d, opts);
    const auto name = d.field == Field::C ? freegroup::PairName::SU2_SQRT5 : freegroup::PairName::SP1_SQRT5;
    const MapSpec map = MapSpec::stereographic(d.field);
    Json params = pair_params(name, "none");
    params["map"] = map.to_json();
    return make(Rule::Intertwine, d, natural_group(d), region::kWhole, std::move(params),
                {derive_sphere(map.target(), opts)});
  }
  Node child = derive_projective(SpaceDescriptor::projective(d.field, d.n - 1), opts);
  return absorb_then_pull(d, plane_rotation_over(d.field, d.n), "axis", MapSpec::proj_drop(d.field, d.n),
                          std::move(child), opts);
}

Node derive_checked(const SpaceDescriptor& d, const DeriveOptions& opts);

Node derive_grassmann(const SpaceDescriptor& d, const DeriveOptions& opts) {
  if (d.k == 1) return derive_projective(SpaceDescriptor::projective(d.field, d.n), opts);
  const GroupTag group = natural_group(d);
  if (2 * d.k > d.n) {
    const MapSpec map = MapSpec::duality(d.field, d.n, d.k);
    return make(Rule::EquidecompTransfer, d, group, region::kWhole, Json{{"map", map.to_json()}},
                {derive_checked(map.target(), opts)});
  }
  const MapSpec slice = MapSpec::grass_slice(d.field, d.n, d.k);
  const MapSpec inside = MapSpec::hyperplane_restrict(d.field, d.n, d.k);
  const std::size_t m = slice.m;
  Node off = make(Rule::Pullback, d, natural_group(slice.target()).in_ambient(d.n), region::off_hyperplane(m),
                  Json{{"map", slice.to_json()}}, {derive_checked(slice.target(), opts)});
  Node in = make(Rule::Pullback, d, natural_group(inside.target()).in_ambient(d.n), region::in_hyperplane(m),
                 Json{{"map", inside.to_json()}}, {derive_checked(inside.target(), opts)});
  Node split = make(Rule::DisjointUnion, d, GroupTag::full(d.field, m).in_ambient(d.n), region::kWhole,
                    Json{{"hyperplane", m}, {"gap_inputs", "reported"}}, {std::move(off), std::move(in)});
  return make(Rule::SubgroupLift, d, group, region::kWhole, Json::object(), {std::move(split)});
}

Node derive_flag(const SpaceDescriptor& d, const DeriveOptions& opts) {
  const MapSpec map = MapSpec::flag_to_grass(d.field, d.dims, opts.flag_component);
  return make(Rule::Pullback, d, natural_group(d), region::kWhole,
              Json{{"map", map.to_json()}, {"component", opts.flag_component}}, {derive_checked(map.target(), opts)});
}

Node derive_checked(const SpaceDescriptor& d, const DeriveOptions& opts) {
  spaces::validate(d);
  switch (d.kind) {
    case Kind::Sphere: return derive_sphere(d, opts);
    case Kind::Projective: return derive_projective(d, opts);
    case Kind::Grassmann: return derive_grassmann(d, opts);
    case Kind::Flag: return derive_flag(d, opts);
  }
  throw ConstraintError("unknown space kind");
}

}  // namespace

Node derive(const SpaceDescriptor& d, const DeriveOptions& opts) {
  if (d.kind == Kind::Flag && (opts.flag_component < 1 || opts.flag_component >= d.dims.size()))
    throw ConstraintError("flag component must name a proper component 1.." + std::to_string(d.dims.size() - 1));
  return derive_checked(d, opts);
}

// ---- structural check ---------------------------------------------------

namespace {

class Checker {
 public:
  explicit Checker(CheckReport& report) : report_(report) {}

  void visit(const Node& node, const std::string& path) {
    ++report_.nodes;
    try {
      check_node(node, path);
    } catch (const std::exception& e) {
      fail(path, std::string("malformed parameters: ") + e.what());
    }
    for (std::size_t i = 0; i < node.children.size(); ++i) visit(node.children[i], path + "." + std::to_string(i));
  }

 private:
  void fail(const std::string& path, const std::string& msg) { report_.violations.push_back(path + ": " + msg); }
  void defer(const std::string& path, const std::string& msg) { report_.deferred.push_back(path + ": " + msg); }

  bool arity(const Node& node, const std::string& path, std::size_t expected) {
    if (node.children.size() == expected) return true;
    fail(path, to_string(node.rule) + " needs " + std::to_string(expected) + " premise(s), has " +
                   std::to_string(node.children.size()));
    return false;
  }

  void same_space(const Node& node, const Node& child, const std::string& path) {
    if (!child.space || !node.space->same_space(*child.space))
      fail(path, "premise is about " + child.space_str() + ", conclusion about " + node.space_str());
  }

  void check_pair(const Node& node, const std::string& path) {
    const ActingPair pair = pair_of(node);
    const auto name = freegroup::parse_pair_name(node.params.at("pair").get<std::string>());
    if (pair_field(name) != node.space->field && node.space->kind != SpaceDescriptor::Kind::Sphere)
      fail(path, "pair " + pair.label + " is over the wrong field for " + node.space_str());
    if (pair.dim() != node.space->ambient())
      fail(path, "pair " + pair.label + " acts on dimension " + std::to_string(pair.dim()) + ", space needs " +
                     std::to_string(node.space->ambient()));
    translate_of(node, Letter::a);
    translate_of(node, Letter::b);
  }

  void check_node(const Node& node, const std::string& path) {
    if (node.rule == Rule::BaseF2) {
      arity(node, path, 0);
      if (node.space) fail(path, "BaseF2 is about F2 itself, not " + node.space_str());
      if (node.group.kind != GroupTag::Kind::F2) fail(path, "BaseF2 group must be F2");
      return;
    }
    if (!node.space) {
      fail(path, to_string(node.rule) + " needs a space");
      return;
    }
    const SpaceDescriptor& space = *node.space;
    if (node.group.kind == GroupTag::Kind::F2 || node.group.n != space.ambient())
      fail(path, "group " + node.group.str() + " does not act on " + space.str());

    switch (node.rule) {
      case Rule::BaseF2: break;
      case Rule::FreeTransport: {
        if (!arity(node, path, 1)) return;
        if (node.children[0].rule != Rule::BaseF2) fail(path, "FreeTransport premise must be BaseF2");
        check_pair(node, path);
        const auto name = freegroup::parse_pair_name(node.params.at("pair").get<std::string>());
        if (node.group != GroupTag::free(name)) fail(path, "group must be the free group of the pair");
        const std::string recipe = node.params.at("exceptional").get<std::string>();
        const std::string expected = space.kind == SpaceDescriptor::Kind::Sphere ? "axes" : "axis-lines";
        if (recipe != expected) fail(path, "exceptional set '" + recipe + "' does not fit " + space.str());
        if (node.region != region::kMinusExceptional) fail(path, "free transport is on the complement of the exceptional set");
        defer(path, "freeness of " + node.params.at("pair").get<std::string>() + " and reassembly");
        break;
      }
      case Rule::SubgroupLift: {
        if (!arity(node, path, 1)) return;
        const Node& c = node.children[0];
        same_space(node, c, path);
        if (c.region != node.region) fail(path, "premise region " + c.region + " differs from " + node.region);
        if (!is_subgroup(c.group, node.group)) fail(path, c.group.str() + " is not a subgroup of " + node.group.str());
        defer(path, "membership of generators in " + node.group.str());
        break;
      }
      case Rule::CountableAbsorb: {
        if (!arity(node, path, 1)) return;
        const Node& c = node.children[0];
        same_space(node, c, path);
        const std::string recipe = node.params.at("exceptional").get<std::string>();
        const std::string rest = region::after_removing(recipe);
        if (c.region != rest) fail(path, "premise must be about the region " + rest + ", got " + c.region);
        if (node.region != region::kWhole) fail(path, "absorption concludes about the whole space");
        const bool ok = c.group.kind == GroupTag::Kind::Free ? node.group == c.group.with_absorber()
                                                             : is_subgroup(c.group, node.group);
        if (!ok) fail(path, "group " + node.group.str() + " does not contain premise group " + c.group.str());
        if ((recipe == "axes" || recipe == "poles") && space.kind != SpaceDescriptor::Kind::Sphere)
          fail(path, "recipe " + recipe + " needs a sphere");
        if ((recipe == "axis" || recipe == "axis-lines") && space.kind == SpaceDescriptor::Kind::Sphere)
          fail(path, "recipe " + recipe + " needs a projective space");
        const AnyMatrix g = matrix_from_json(node.params.at("absorber"), space.kind == SpaceDescriptor::Kind::Sphere ? Field::R : space.field);
        if (rows(g) != space.ambient()) fail(path, "absorber has the wrong size");
        if (node.params.at("bound").get<int>() < 1) fail(path, "absorber bound must be positive");
        const auto& w = node.params.at("witness");
        const auto sizes = std::set<std::size_t>{w.at("source_pieces").size(), w.at("target_pieces").size(),
                                                 w.at("elements").size()};
        if (sizes.size() != 1) fail(path, "witness piece counts differ");
        defer(path, "absorber disjointness up to the bound");
        break;
      }
      case Rule::Pullback:
      case Rule::EquidecompTransfer: {
        if (!arity(node, path, 1)) return;
        const Node& c = node.children[0];
        const MapSpec map = map_of(node);
        if (map.float_only()) fail(path, "map " + map.label() + " has no exact backend; use Intertwine");
        if (node.rule == Rule::EquidecompTransfer && map.id != equimaps::MapId::Duality)
          fail(path, "transfer needs an equivariant bijection, got " + map.label());
        if (!map.source().same_space(space)) fail(path, "map source " + map.source().str() + " is not " + space.str());
        if (!c.space || !map.target().same_space(*c.space))
          fail(path, "map target " + map.target().str() + " is not the premise space " + c.space_str());
        if (node.region != region::domain_of(map))
          fail(path, "region " + node.region + " is not the map domain " + region::domain_of(map));
        if (c.region != region::kWhole) fail(path, "premise must be about the whole target");
        if (c.group.m > map.acting_size())
          fail(path, "map is equivariant for a block of size " + std::to_string(map.acting_size()) + ", premise group is " + c.group.str());
        if (node.group != c.group.in_ambient(space.ambient()))
          fail(path, "group " + node.group.str() + " is not the premise group " + c.group.str() + " acting on " + space.str());
        defer(path, "equivariance of " + map.label());
        break;
      }
      case Rule::Intertwine: {
        if (!arity(node, path, 1)) return;
        const Node& c = node.children[0];
        const MapSpec map = map_of(node);
        if (map.id != equimaps::MapId::Stereographic) fail(path, "Intertwine needs the stereographic map");
        if (!map.source().same_space(space)) fail(path, "map source " + map.source().str() + " is not " + space.str());
        if (!c.space || !map.target().same_space(*c.space))
          fail(path, "map target " + map.target().str() + " is not the premise space " + c.space_str());
        if (!is_subgroup(c.group, natural_group(map.target())))
          fail(path, "premise group " + c.group.str() + " is not a rotation group of the target");
        check_pair(node, path);
        defer(path, "induced rotations, pair freeness and reassembly on " + space.str());
        break;
      }
      case Rule::DisjointUnion: {
        if (!arity(node, path, 2)) return;
        const std::size_t m = node.params.at("hyperplane").get<std::size_t>();
        std::set<std::string> regions;
        for (const auto& c : node.children) {
          same_space(node, c, path);
          regions.insert(c.region);
          if (c.group != node.group) fail(path, "branch group " + c.group.str() + " differs from " + node.group.str());
        }
        if (space.kind != SpaceDescriptor::Kind::Grassmann) fail(path, "hyperplane split needs a Grassmannian");
        if (regions != std::set<std::string>{region::off_hyperplane(m), region::in_hyperplane(m)})
          fail(path, "branches must be off-hyperplane:" + std::to_string(m) + " and in-hyperplane:" + std::to_string(m));
        if (node.region != region::kWhole) fail(path, "the split covers the whole space");
        if (node.group.m > m) fail(path, "group " + node.group.str() + " does not preserve the hyperplane");
        break;
      }
    }
  }

  CheckReport& report_;
};

}  // namespace

Json CheckReport::to_json() const {
  return Json{{"nodes", nodes}, {"violations", violations}, {"deferred", deferred}, {"passed", passed()}};
}

CheckReport check(const Node& root) {
  CheckReport report;
  Checker checker(report);
  checker.visit(root, "0");
  if (root.space && !is_subgroup(root.group, natural_group(*root.space)))
    report.violations.push_back("0: root group " + root.group.str() + " is not a subgroup of " +
                                natural_group(*root.space).str());
  return report;
}

const Node& node_at(const Node& root, const std::string& path) {
  if (path.empty() || path[0] != '0') throw std::out_of_range("bad node path '" + path + "'");
  const Node* n = &root;
  std::size_t pos = 1;
  while (pos < path.size()) {
    if (path[pos] != '.') throw std::out_of_range("bad node path '" + path + "'");
    const std::size_t end = path.find('.', pos + 1);
    const std::size_t i = std::stoul(path.substr(pos + 1, end - pos - 1));
    if (i >= n->children.size()) throw std::out_of_range("no node at '" + path + "'");
    n = &n->children[i];
    pos = end == std::string::npos ? path.size() : end;
  }
  return *n;
}

}  // namespace bt::paradox
