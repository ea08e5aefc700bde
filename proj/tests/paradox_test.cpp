#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "bt/freegroup/absorber.hpp"
#include "bt/freegroup/axes.hpp"
#include "bt/paradox/verify.hpp"

namespace bt::paradox {
namespace {

using freegroup::PairName;
using freegroup::PrefixClass;
using numeric::QSqrt2;
using spaces::parse_descriptor;
using Ray = spaces::SpherePoint<QSqrt2>;

Ray ray(long x, long y, long z) { return Ray(Matrix<QSqrt2>::column({QSqrt2(x), QSqrt2(y), QSqrt2(z)})); }

std::vector<Rule> spine(const Node& root) {
  std::vector<Rule> out;
  for (const Node* n = &root;; n = &n->children.front()) {
    out.push_back(n->rule);
    if (n->children.empty()) return out;
  }
}

const std::vector<std::string> kValid = {
    "sphere(2)",    "sphere(3)",    "sphere(5)",    "proj(R,3)",     "proj(R,5)",     "proj(C,2)",
    "proj(C,4)",    "proj(H,2)",    "proj(H,3)",    "grass(R,4,2)",  "grass(R,5,2)",  "grass(R,6,3)",
    "grass(R,4,3)", "grass(C,4,2)", "grass(H,4,2)", "grass(C,5,4)",  "flag(R;1,2,3)", "flag(C;1,2)",
    "flag(H;1,2)",  "flag(R;1,3,4)", "flag(R;2,3,5)", "flag(C;1,2,4)", "flag(R;4,5)",  "grass(R,3,1)"};

TEST(Derive, SphereBaseShape) {
  const Node root = derive(parse_descriptor("sphere(2)"));
  EXPECT_EQ(spine(root),
            (std::vector<Rule>{Rule::SubgroupLift, Rule::CountableAbsorb, Rule::FreeTransport, Rule::BaseF2}));
  EXPECT_EQ(root.group.str(), "SO(3)");
  EXPECT_EQ(root.children[0].params.at("bound"), 50);
}

TEST(Derive, FlagProjectsToFirstComponent) {
  const Node root = derive(parse_descriptor("flag(R;1,2,3)"));
  EXPECT_EQ(root.rule, Rule::Pullback);
  EXPECT_EQ(map_of(root).id, equimaps::MapId::FlagToGrass);
  EXPECT_EQ(root.children[0].space->ambient(), 3u);
  const auto leaves = spine(root);
  EXPECT_EQ(leaves.back(), Rule::BaseF2);
}

TEST(Derive, LargeGrassmannTransfersAlongDuality) {
  const Node root = derive(parse_descriptor("grass(R,4,3)"));
  EXPECT_EQ(root.rule, Rule::EquidecompTransfer);
  EXPECT_EQ(map_of(root).id, equimaps::MapId::Duality);
  const auto& child = *root.children[0].space;
  EXPECT_EQ(child.ambient(), 4u);
  EXPECT_TRUE(child.kind == spaces::SpaceDescriptor::Kind::Projective ||
              (child.kind == spaces::SpaceDescriptor::Kind::Grassmann && child.k == 1));
}

TEST(Derive, MiddleGrassmannSplitsOnAHyperplane) {
  const Node root = derive(parse_descriptor("grass(R,4,2)"));
  const Node& split = node_at(root, "0.0");
  ASSERT_EQ(split.rule, Rule::DisjointUnion);
  ASSERT_EQ(split.children.size(), 2u);
  EXPECT_NE(split.children[0].region, split.children[1].region);
}

TEST(Derive, RejectsInvalidDescriptors) {
  for (const char* bad : {"proj(R,2)", "sphere(1)", "flag(R;3)", "flag(R;2,2,4)", "grass(C,4,4)"})
    EXPECT_ANY_THROW(derive(parse_descriptor(bad))) << bad;
}

TEST(Check, PassesForEveryValidDescriptor) {
  for (const auto& text : kValid) {
    const Node root = derive(parse_descriptor(text));
    const auto r = check(root);
    EXPECT_TRUE(r.passed()) << text << ": " << (r.violations.empty() ? "" : r.violations.front());
    EXPECT_FALSE(r.deferred.empty()) << text;
  }
}

TEST(Check, CertificateRoundTrip) {
  for (const auto& text : kValid) {
    const Node root = derive(parse_descriptor(text));
    const Json j = certificate_to_json(root);
    EXPECT_EQ(certificate_to_json(certificate_from_json(Json::parse(j.dump()))), j) << text;
  }
}

TEST(Check, PullbackOntoTheWrongSpaceFails) {
  Node root = derive(parse_descriptor("flag(R;1,2,3)"));
  root.children[0] = derive(parse_descriptor("proj(R,4)"));
  EXPECT_FALSE(check(root).passed());
}

TEST(Check, BothBranchesInTheHyperplaneFails) {
  Node root = derive(parse_descriptor("grass(R,4,2)"));
  Node& split = root.children[0];
  ASSERT_EQ(split.rule, Rule::DisjointUnion);
  split.children[0].region = split.children[1].region;
  EXPECT_FALSE(check(root).passed());
}

TEST(Check, WrongGroupOnAFreeTransportFails) {
  Node root = derive(parse_descriptor("sphere(2)"));
  Node& ft = root.children[0].children[0];
  ASSERT_EQ(ft.rule, Rule::FreeTransport);
  ft.group = GroupTag::special(3);
  EXPECT_FALSE(check(root).passed());
}

// w·seed by multiplying out the word, independent of the fragment builder.
std::string word_key(const Word& w, const Ray& seed) {
  return Ray(Matrix<QSqrt2>(freegroup::evaluate(w, freegroup::so3_ab()) * seed.vector())).key();
}

TEST(Orbit, SmallBall) {
  const auto f = orbit_fragment(ray(1, 2, 3), standard_pair(PairName::SO3_AB), 2);
  EXPECT_EQ(f.size(), 17u);
  EXPECT_EQ(f.points().front().word, Word{});
  for (const auto& p : f.points()) EXPECT_EQ(key(p.point), word_key(p.word, ray(1, 2, 3)));
}

TEST(Orbit, FixedSeedNamesTheWord) {
  try {
    orbit_fragment(ray(1, 0, 0), standard_pair(PairName::SO3_AB), 1);
    FAIL() << "expected FixedSeedError";
  } catch (const FixedSeedError& e) {
    EXPECT_EQ(e.word.display(), "b");
  }
}

// Reassembly by brute force over words and matrix products: every point of
// the radius-(L-1) ball is hit exactly once by W(x)·seed ∪ x·W(x⁻¹)·seed.
bool reassembly_oracle(const Ray& seed, int L) {
  const auto ball = freegroup::enumerate_ball(L);
  std::map<std::string, int> inner;
  std::set<std::string> all;
  for (const auto& w : ball) {
    const auto k = word_key(w, seed);
    if (!all.insert(k).second) return false;
    if (static_cast<int>(w.size()) < L) inner[k] = 0;
  }
  for (Letter x : {Letter::a, Letter::b}) {
    auto count = inner;
    const auto own = freegroup::prefix_class_of(x);
    const auto other = freegroup::prefix_class_of(freegroup::inverse(x));
    for (const auto& w : ball) {
      const auto c = freegroup::classify_prefix(w);
      std::string k;
      if (c == own) k = word_key(w, seed);
      if (c == other) k = word_key(w.prepend(x), seed);
      if (k.empty()) continue;
      const auto it = count.find(k);
      if (it != count.end()) ++it->second;
    }
    for (const auto& [k, n] : count)
      if (n != 1) return false;
  }
  return true;
}

TEST(Orbit, DepthEightMatchesBruteForce) {
  const auto pair = standard_pair(PairName::SO3_AB);
  const auto f = orbit_fragment(ray(1, 2, 3), pair, 8);
  EXPECT_EQ(f.size(), 13121u);
  const auto r = check_reassembly(f, pair.image(Letter::a), pair.image(Letter::b));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.covered_checked, 2 * freegroup::ball_count(7));
  EXPECT_EQ(freegroup::ball_count(7), 4373u);
  EXPECT_EQ(r.piece_sizes[static_cast<std::size_t>(PrefixClass::Identity)], 1u);
  std::uint64_t total = 0;
  for (auto n : r.piece_sizes) total += n;
  EXPECT_EQ(total, 13121u);
  EXPECT_TRUE(reassembly_oracle(ray(1, 2, 3), 8));
}

TEST(Orbit, ReassemblyOnRandomSeeds) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coord(-9, 9);
  const auto pair = standard_pair(PairName::SO3_AB);
  int tried = 0;
  while (tried < 12) {
    const long x = coord(rng), y = coord(rng), z = coord(rng);
    if (x == 0 && y == 0 && z == 0) continue;
    const int L = 2 + static_cast<int>(rng() % 4);
    std::optional<Fragment> f;
    try {
      f = orbit_fragment(ray(x, y, z), pair, L);
    } catch (const FixedSeedError&) {
      EXPECT_FALSE(reassembly_oracle(ray(x, y, z), L));
      continue;
    }
    ++tried;
    const bool ok = check_reassembly(*f, pair.image(Letter::a), pair.image(Letter::b)).passed();
    EXPECT_TRUE(ok) << x << "," << y << "," << z << " L=" << L;
    EXPECT_EQ(ok, reassembly_oracle(ray(x, y, z), L));
  }
}

TEST(Orbit, WrongTranslateFailsReassembly) {
  const auto pair = standard_pair(PairName::SO3_AB);
  const auto f = orbit_fragment(ray(1, 2, 3), pair, 4);
  const auto r = check_reassembly(f, pair.image(Letter::b), pair.image(Letter::b));
  EXPECT_FALSE(r.passed());
  ASSERT_TRUE(r.failure_radius.has_value());
  EXPECT_EQ(*r.failure_radius, 0);
}

Analysis sphere_analysis(const Node& root, int depth) {
  Analysis::Options o;
  o.depth = depth;
  return Analysis(root, o, ray(1, 2, 3));
}

TEST(Classify, FollowsThePrefixRule) {
  const Node root = derive(parse_descriptor("sphere(2)"));
  const auto an = sphere_analysis(root, 4);
  const auto pair = standard_pair(PairName::SO3_AB);
  const Word ab = Word::parse("ab");
  const auto c = an.classify({apply_word(pair, ab, ray(1, 2, 3)), ab, -1, "0.0.0"});
  EXPECT_EQ(c.label, "W(a)");
  EXPECT_EQ(an.classify({ray(1, 2, 3), Word{}, -1, "0.0.0"}).label, "identity");
  const Word bad = Word::parse("B");
  EXPECT_THROW(an.classify({apply_word(pair, ab, ray(1, 2, 3)), bad, -1, "0.0.0"}), DomainError);
}

TEST(Classify, AbsorbedSetMatchesDirectIteration) {
  const Node root = derive(parse_descriptor("sphere(2)"));
  Analysis::Options o;
  o.depth = 3;
  o.absorb_bound = 12;
  const Analysis an(root, o, ray(1, 2, 3));
  const AbsorbedSet* set = an.absorbed("0.0");
  ASSERT_NE(set, nullptr);
  EXPECT_FALSE(set->report().collision.has_value());

  // gⁿ·d by repeated exact multiplication, first n per point.
  const auto g = freegroup::s2_absorber<QSqrt2>();
  std::map<std::string, int> first;
  for (const auto& d : set->exceptional()) {
    Ray p = std::get<Ray>(d);
    for (int n = 0; n <= 12; ++n) {
      first.emplace(p.key(), n);
      if (n >= 10) EXPECT_EQ(an.classify_at("0", p).label, "absorbed");
      p = Ray(Matrix<QSqrt2>(g * p.vector()));
    }
  }
  for (const auto& d : set->exceptional()) {
    Ray p = std::get<Ray>(d);
    for (int n = 0; n <= 12; ++n) {
      EXPECT_EQ(set->power_of(p), std::optional<int>(first.at(p.key())));
      p = Ray(Matrix<QSqrt2>(g * p.vector()));
    }
    EXPECT_FALSE(set->power_of(p).has_value()) << "power 13 is past the bound";
  }
  EXPECT_FALSE(set->power_of(ray(1, 2, 3)).has_value());
}

TEST(Classify, AbsorberAgreesWithTheRayCheck) {
  const auto d = freegroup::exceptional_set(freegroup::so3_ab(), 4).sphere_points();
  const auto g = freegroup::s2_absorber<QSqrt2>();
  std::vector<AnyPoint> pts;
  for (const auto& v : d) pts.push_back(Ray(v));
  const AbsorbedSet set(pts, g, 50, 0);
  EXPECT_FALSE(set.report().collision.has_value());
  EXPECT_TRUE(freegroup::absorber_check_rays(g, d, 50).passed());

  const AbsorbedSet still(pts, Matrix<QSqrt2>::identity(3), 50, 0);
  ASSERT_TRUE(still.report().collision.has_value());
  EXPECT_EQ(*still.report().collision, std::make_pair(0, 1));
}

const NodeReport* find_node(const VerificationReport& r, const std::string& path) {
  for (const auto& n : r.nodes)
    if (n.path == path) return &n;
  return nullptr;
}

TEST(Verify, SphereAtDepthOne) {
  VerifyOptions o;
  o.depth = 1;
  o.samples = 50;
  const Node root = derive(parse_descriptor("sphere(2)"));
  const auto r = verify(root, o);
  EXPECT_TRUE(r.passed()) << r.to_json().dump(1);
  const auto* ft = find_node(r, "0.0.0");
  ASSERT_NE(ft, nullptr);
  EXPECT_EQ(ft->stats.at("fragment_points"), 5);
}

TEST(Verify, SphereAtDepthEight) {
  VerifyOptions o;
  o.depth = 8;
  o.samples = 100;
  const Node root = derive(parse_descriptor("sphere(2)"));
  const auto r = verify(root, o);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(find_node(r, "0.0.0")->stats.at("fragment_points"), 13121);
}

TEST(Verify, SwappedTranslateFails) {
  Node root = derive(parse_descriptor("sphere(2)"));
  Node& ft = root.children[0].children[0];
  ft.params["translates"]["W(a^-1)"] = "b";
  VerifyOptions o;
  o.samples = 50;
  const auto r = verify(root, o);
  EXPECT_FALSE(r.passed());
  const auto* n = find_node(r, "0.0.0");
  EXPECT_EQ(n->status, "fail");
  EXPECT_EQ(n->stats.at("reassembly").at("failure_radius"), 0);
}

TEST(Verify, SmallBoundLeavesUnknowns) {
  VerifyOptions o;
  o.absorb_bound = 5;
  o.samples = 100;
  const auto r = verify(derive(parse_descriptor("sphere(2)")), o);
  EXPECT_GT(r.to_json().at("summary").at("unknown").get<std::uint64_t>(), 0u);
}

TEST(Verify, SameReportForAnyWorkerCount) {
  VerifyOptions o;
  o.depth = 4;
  o.samples = 120;
  for (const char* text : {"grass(R,4,2)", "proj(C,2)"}) {
    const Node root = derive(parse_descriptor(text));
    o.jobs = 1;
    const auto one = verify(root, o).to_json().dump();
    o.jobs = 4;
    EXPECT_EQ(verify(root, o).to_json().dump(), one) << text;
    EXPECT_EQ(verify(root, o).to_json().dump(), one) << text;
  }
}

TEST(Verify, DualityTransferIsCoherent) {
  const Node root = derive(parse_descriptor("grass(R,4,3)"));
  Analysis::Options o;
  o.depth = 4;
  const Analysis an(root, o);
  ASSERT_TRUE(an.seed("0").has_value());
  const auto sources = an.sources("0");
  ASSERT_FALSE(sources.empty());
  Rng rng(3);
  int compared = 0;
  for (int i = 0; i < 200; ++i) {
    const Source& s = sources[static_cast<std::size_t>(i) % sources.size()];
    const Word w = random_word(4, rng);
    const AnyPoint p = apply_word(s.pair, w, s.seed);
    const auto here = an.classify_at("0", p);
    const auto there = an.classify_at("0.0", apply_map(map_of(root), p));
    EXPECT_EQ(here.label, there.label);
    EXPECT_EQ(here.label, freegroup::to_string(freegroup::classify_prefix(w)));
    ++compared;
  }
  EXPECT_EQ(compared, 200);
}

ProvenancedPoint plain(long x) { return {ray(x, 1, 1), Word{}, -1, ""}; }

TEST(Equidecomp, IdentityWitnessPasses) {
  EquidecompWitness w;
  auto yes = [](const ProvenancedPoint&) { return Membership::Yes; };
  w.pieces.push_back({"all", yes, yes, [](const ProvenancedPoint& p) { return p; }});
  const std::vector<ProvenancedPoint> pts{plain(1), plain(2), plain(3)};
  EXPECT_TRUE(equidecomp_verify(w, pts, pts).passed());
}

TEST(Equidecomp, OverlappingPiecesFail) {
  EquidecompWitness w;
  auto yes = [](const ProvenancedPoint&) { return Membership::Yes; };
  auto id = [](const ProvenancedPoint& p) { return p; };
  w.pieces.push_back({"one", yes, yes, id});
  w.pieces.push_back({"two", yes, yes, id});
  const std::vector<ProvenancedPoint> pts{plain(1), plain(2)};
  EXPECT_FALSE(equidecomp_verify(w, pts, pts).passed());
}

TEST(Equidecomp, PullOutsideTheTargetPieceFails) {
  EquidecompWitness w;
  auto yes = [](const ProvenancedPoint&) { return Membership::Yes; };
  auto no = [](const ProvenancedPoint&) { return Membership::No; };
  w.pieces.push_back({"lost", yes, no, [](const ProvenancedPoint& p) { return p; }});
  const std::vector<ProvenancedPoint> pts{plain(1)};
  EXPECT_FALSE(equidecomp_verify(w, pts, {}).passed());
}

TEST(Seeds, ParsedSeedPoints) {
  const auto d = parse_descriptor("sphere(2)");
  EXPECT_EQ(key(parse_seed_point(d, "1,2,3")), ray(1, 2, 3).key());
  EXPECT_THROW(parse_seed_point(d, "1,2"), ParseError);
  EXPECT_THROW(parse_seed_point(parse_descriptor("grass(R,4,2)"), "1,2,3,4"), ConstraintError);
}

TEST(Seeds, CandidatesAreDistinctPointsOfTheSpace) {
  for (const char* text : {"sphere(3)", "proj(H,2)", "grass(C,4,2)", "flag(R;1,3,4)"}) {
    const auto d = parse_descriptor(text);
    std::set<std::string> keys;
    for (int i = 0; i < 4; ++i) keys.insert(key(seed_candidate(d, i)));
    EXPECT_EQ(keys.size(), 4u) << text;
  }
}

}  // namespace
}  // namespace bt::paradox
