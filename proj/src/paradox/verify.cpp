#include "bt/paradox/verify.hpp"

#include <algorithm>
#include <cmath>

#include "bt/equimaps/stereographic.hpp"
#include "bt/freegroup/axes.hpp"
#include "bt/freegroup/freeness.hpp"
#include "bt/parallel.hpp"
#include "bt/spaces/random.hpp"

namespace bt::paradox {

namespace {

constexpr std::size_t kMaxExamples = 5;

void note(std::vector<std::string>& out, const std::string& msg) {
  if (out.size() < kMaxExamples) out.push_back(msg);
}

std::string label_of(const Word& w) { return freegroup::to_string(freegroup::classify_prefix(w)); }

Field point_field(const SpaceDescriptor& d) { return d.kind == SpaceDescriptor::Kind::Sphere ? Field::R : d.field; }

template <class S>
Matrix<S> unit_vector(std::size_t n, std::size_t i, int sign = 1) {
  Matrix<S> v(n, 1);
  v[i] = S(sign);
  return v;
}

AnyPoint axis_line(Field f, std::size_t n) {
  switch (f) {
    case Field::R: return spaces::Subspace<RealScalar>::line(unit_vector<RealScalar>(n, n - 1));
    case Field::C: return spaces::Subspace<ComplexScalar>::line(unit_vector<ComplexScalar>(n, n - 1));
    case Field::H: return spaces::Subspace<QuatScalar>::line(unit_vector<QuatScalar>(n, n - 1));
  }
  throw ParseError("unknown field");
}

AnyMatrix inverse_of(const AnyMatrix& g) {
  return std::visit([](const auto& m) -> AnyMatrix { return m.conj_transpose(); }, g);
}

}  // namespace

// ---- absorbed sets -----------------------------------------------------

namespace {

constexpr double kCell = 1e-6;
constexpr double kNear = 1e-8;

std::uint64_t cell_hash(const std::int64_t* c) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (int j = 0; j < 3; ++j) h = (h ^ static_cast<std::uint64_t>(c[j])) * 0x100000001b3ULL + (h >> 29);
  return h;
}

}  // namespace

AbsorbedSet::AbsorbedSet(std::vector<AnyPoint> exceptional, const AnyMatrix& g, int bound, int extra)
    : d_(std::move(exceptional)), bound_(bound) {
  powers_.push_back(identity_like(g, rows(g)));
  for (int k = 1; k <= bound + extra; ++k) powers_.push_back(multiply(g, powers_.back()));
  report_.bound = bound;
  report_.set_size = d_.size();
  const std::size_t n = d_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto orbit = float_orbit(g, d_[i], bound);
    if (coords_.empty()) {
      stride_ = orbit.front().size();
      coords_.resize(stride_ * n * static_cast<std::size_t>(bound + 1));
    }
    for (int k = 0; k <= bound; ++k)
      std::copy(orbit[k].begin(), orbit[k].end(), coords_.begin() + (static_cast<std::size_t>(k) * n + i) * stride_);
  }
  const std::size_t total = stride_ == 0 ? 0 : coords_.size() / stride_;
  for (std::size_t id = 0; id < total; ++id) {
    std::int64_t c[3] = {0, 0, 0};
    for (std::size_t j = 0; j < std::min<std::size_t>(3, stride_); ++j)
      c[j] = static_cast<std::int64_t>(std::floor(coords_[id * stride_ + j] / kCell));
    cells_[cell_hash(c)].push_back(static_cast<std::uint32_t>(id));
  }
  for (std::size_t id = n; id < total; ++id) {
    ++report_.images_checked;
    const int k = static_cast<int>(id / n);
    const std::vector<double> v(coords_.begin() + id * stride_, coords_.begin() + (id + 1) * stride_);
    for (std::uint32_t other : near(v)) {
      const int ko = static_cast<int>(other / n);
      if (ko >= k) continue;
      const std::string here = key(image(id % n, k));
      if (here != key(image(other % n, ko))) {
        ++near_misses_;
        continue;
      }
      if (!report_.collision) {
        report_.collision = std::make_pair(0, k - ko);
        report_.collision_point = here;
      }
    }
  }
}

std::vector<std::uint32_t> AbsorbedSet::near(const std::vector<double>& v) const {
  std::vector<std::uint32_t> out;
  if (v.size() != stride_ || stride_ == 0) return out;
  std::int64_t base[3] = {0, 0, 0};
  const std::size_t used = std::min<std::size_t>(3, stride_);
  for (std::size_t j = 0; j < used; ++j) base[j] = static_cast<std::int64_t>(std::floor(v[j] / kCell));
  const int r0 = 1, r1 = used > 1 ? 1 : 0, r2 = used > 2 ? 1 : 0;
  for (int a = -r0; a <= r0; ++a)
    for (int b = -r1; b <= r1; ++b)
      for (int c = -r2; c <= r2; ++c) {
        const std::int64_t cell[3] = {base[0] + a, base[1] + b, base[2] + c};
        const auto it = cells_.find(cell_hash(cell));
        if (it == cells_.end()) continue;
        for (std::uint32_t id : it->second) {
          double dev = 0;
          for (std::size_t j = 0; j < stride_; ++j) dev = std::max(dev, std::abs(coords_[id * stride_ + j] - v[j]));
          if (dev <= kNear) out.push_back(id);
        }
      }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<int> AbsorbedSet::power_of(const AnyPoint& p) const {
  if (d_.empty()) return std::nullopt;
  std::vector<double> v;
  try {
    v = float_coordinates(p, powers_.front());
  } catch (const DimensionError&) {
    return std::nullopt;
  }
  const std::string kp = key(p);
  for (std::uint32_t id : near(v)) {
    const int k = static_cast<int>(id / d_.size());
    if (key(image(id % d_.size(), k)) == kp) return k;
  }
  return std::nullopt;
}

// ---- equidecomposition witnesses ---------------------------------------

Json EquidecompReport::to_json() const {
  return Json{{"checked", checked}, {"unknown", unknown}, {"failures", failures}, {"examples", examples}};
}

EquidecompReport equidecomp_verify(const EquidecompWitness& w, const std::vector<ProvenancedPoint>& source,
                                   const std::vector<ProvenancedPoint>& target) {
  EquidecompReport r;
  auto fail = [&r](const std::string& msg) {
    ++r.failures;
    note(r.examples, msg);
  };
  for (const auto& p : source) {
    std::size_t yes = 0, unknown = 0, piece = 0;
    for (std::size_t i = 0; i < w.pieces.size(); ++i) {
      const Membership m = w.pieces[i].in_source(p);
      if (m == Membership::Yes) {
        ++yes;
        piece = i;
      } else if (m == Membership::Unknown) {
        ++unknown;
      }
    }
    if (yes > 1) {
      fail("source point " + key(p.point) + " lies in " + std::to_string(yes) + " pieces");
      continue;
    }
    if (unknown > 0) {
      ++r.unknown;
      continue;
    }
    ++r.checked;
    if (yes == 0) {
      fail("source point " + key(p.point) + " lies in no piece");
      continue;
    }
    const WitnessPiece& wp = w.pieces[piece];
    const Membership back = wp.in_target(wp.pull(p));
    if (back == Membership::Unknown) {
      --r.checked;
      ++r.unknown;
    } else if (back == Membership::No) {
      fail("piece " + wp.name + ": image of " + key(p.point) + " misses the target piece");
    }
  }
  for (const auto& p : target) {
    std::size_t yes = 0, unknown = 0;
    for (const auto& piece : w.pieces) {
      const Membership m = piece.in_target(p);
      yes += m == Membership::Yes;
      unknown += m == Membership::Unknown;
    }
    if (yes > 1) {
      fail("target point " + key(p.point) + " lies in " + std::to_string(yes) + " pieces");
    } else if (unknown > 0) {
      ++r.unknown;
    } else if (yes == 0) {
      ++r.checked;
      fail("target point " + key(p.point) + " lies in no piece");
    } else {
      ++r.checked;
    }
  }
  return r;
}

// ---- exceptional sets ---------------------------------------------------

std::vector<AnyPoint> exceptional_points(const Node& node, int depth) {
  const std::string recipe = node.params.at("exceptional").get<std::string>();
  const SpaceDescriptor& d = node.space.value();
  std::vector<AnyPoint> out;
  if (recipe == "axes" || recipe == "axis-lines") {
    const auto name = freegroup::parse_pair_name(node.params.value("pair", "so3-ab"));
    if (name != freegroup::PairName::SO3_AB) throw ConstraintError("axis recipes need the so3-ab pair");
    const auto set = freegroup::exceptional_set(freegroup::so3_ab(), depth);
    if (recipe == "axes") {
      for (const auto& v : set.sphere_points()) out.emplace_back(spaces::SpherePoint<RealScalar>(v));
    } else {
      for (const auto& a : set.axes) out.emplace_back(spaces::Subspace<RealScalar>::line(a.ray));
    }
  } else if (recipe == "poles") {
    const std::size_t n = d.ambient();
    out.emplace_back(spaces::SpherePoint<RealScalar>(unit_vector<RealScalar>(n, n - 1, 1)));
    out.emplace_back(spaces::SpherePoint<RealScalar>(unit_vector<RealScalar>(n, n - 1, -1)));
  } else if (recipe == "axis") {
    out.push_back(axis_line(d.field, d.n));
  } else {
    throw ParseError("unknown exceptional-set recipe '" + recipe + "'");
  }
  return out;
}

// ---- analysis -----------------------------------------------------------

Analysis::Analysis(const Node& root, const Options& opts) : root_(&root), opts_(opts) {
  if (!root.space) throw DimensionError("certificate root has no space");
  auto seed_errors = [this] {
    for (const auto& [path, i] : info_)
      if (!i.error.empty() && i.node->rule != Rule::CountableAbsorb) return true;
    return false;
  };
  // Later candidates are tried only when a seed is exceptional somewhere
  // below the root; the last one is kept with its errors.
  const int attempts = std::max(opts_.seed_attempts, 1);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    const bool last = attempt + 1 == attempts;
    info_.clear();
    seed_attempt_ = attempt;
    try {
      plan(root, "0", seed_candidate(*root.space, attempt));
    } catch (const std::exception& e) {
      info_.clear();
      plan(root, "0", std::nullopt);
      info_["0"].error = std::string("no seed: ") + e.what();
      build();
      return;
    }
    if (seed_errors() && !last) continue;
    build();
    if (!seed_errors() || last) return;
  }
}

Analysis::Analysis(const Node& root, const Options& opts, const AnyPoint& seed) : root_(&root), opts_(opts) {
  plan(root, "0", seed);
  build();
}

std::vector<std::string> Analysis::paths() const {
  std::vector<std::string> out;
  std::vector<std::pair<const Node*, std::string>> stack{{root_, "0"}};
  while (!stack.empty()) {
    auto [n, p] = stack.back();
    stack.pop_back();
    out.push_back(p);
    for (std::size_t i = n->children.size(); i-- > 0;) stack.emplace_back(&n->children[i], p + "." + std::to_string(i));
  }
  return out;
}

const Analysis::Info& Analysis::info(const std::string& path) const {
  const auto it = info_.find(path);
  if (it == info_.end()) throw std::out_of_range("no node at '" + path + "'");
  return it->second;
}

const Fragment* Analysis::fragment(const std::string& path) const {
  const auto& i = info(path);
  return i.fragment ? &*i.fragment : nullptr;
}

const AbsorbedSet* Analysis::absorbed(const std::string& path) const {
  const auto& i = info(path);
  return i.absorbed ? &*i.absorbed : nullptr;
}

void Analysis::plan(const Node& node, const std::string& path, std::optional<AnyPoint> seed) {
  Info& me = info_[path];
  me.node = &node;
  me.seed = seed;
  auto child_path = [&path](std::size_t i) { return path + "." + std::to_string(i); };
  auto mapped = [&](const MapSpec& map) -> std::optional<AnyPoint> {
    if (!seed) return std::nullopt;
    try {
      return apply_map(map, *seed);
    } catch (const std::exception& e) {
      me.error = "seed outside the domain of " + map.label() + ": " + e.what();
      return std::nullopt;
    }
  };

  switch (node.rule) {
    case Rule::BaseF2: return;
    case Rule::FreeTransport:
      if (seed) me.sources.push_back({path, *seed, pair_of(node)});
      plan(node.children.at(0), child_path(0), std::nullopt);
      return;
    case Rule::Intertwine: {
      if (seed) me.sources.push_back({path, *seed, pair_of(node)});
      const auto down = mapped(map_of(node));
      plan(node.children.at(0), child_path(0), down);
      return;
    }
    case Rule::SubgroupLift:
    case Rule::CountableAbsorb:
      plan(node.children.at(0), child_path(0), seed);
      info_[path].sources = info_[child_path(0)].sources;
      return;
    case Rule::Pullback:
    case Rule::EquidecompTransfer: {
      const auto down = mapped(map_of(node));
      plan(node.children.at(0), child_path(0), down);
      Info& self = info_[path];
      if (!down) return;
      const std::string down_key = key(*down);
      for (const auto& s : info_[child_path(0)].sources)
        if (key(s.seed) == down_key) self.sources.push_back({s.base, *seed, s.pair.embed(node.space->ambient())});
      return;
    }
    case Rule::DisjointUnion: {
      const std::size_t m = node.params.at("hyperplane").get<std::size_t>();
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        const Node& c = node.children[i];
        std::optional<AnyPoint> s;
        if (c.region == region::in_hyperplane(m)) {
          s = hyperplane_seed(*node.space, m);
        } else {
          s = seed;
        }
        plan(c, child_path(i), s);
        const auto& kids = info_[child_path(i)].sources;
        info_[path].sources.insert(info_[path].sources.end(), kids.begin(), kids.end());
      }
      return;
    }
  }
}

void Analysis::build() {
  const int exc_depth = opts_.exceptional_depth > 0 ? opts_.exceptional_depth : std::min(opts_.depth, 6);
  std::vector<std::string> tasks;
  for (const auto& [path, i] : info_) {
    const Rule r = i.node->rule;
    if ((r == Rule::FreeTransport || r == Rule::Intertwine) && i.seed) tasks.push_back(path);
    if (r == Rule::CountableAbsorb) tasks.push_back(path);
  }
  parallel_for(tasks.size(), opts_.jobs, [&](std::size_t t) {
    Info& me = info_.at(tasks[t]);
    const Node& node = *me.node;
    try {
      if (node.rule != Rule::CountableAbsorb) {
        me.fragment = orbit_fragment(*me.seed, pair_of(node), opts_.depth, tasks[t]);
        return;
      }
      const int bound = opts_.absorb_bound > 0 ? opts_.absorb_bound : node.params.at("bound").get<int>();
      const AnyMatrix g = matrix_from_json(node.params.at("absorber"), point_field(*node.space));
      me.absorbed.emplace(exceptional_points(node, exc_depth), g, bound, opts_.extra_absorb);
    } catch (const FixedSeedError& e) {
      me.error = std::string("orbit fragment: ") + e.what();
    } catch (const std::exception& e) {
      me.error = e.what();
    }
  });
}

Classification Analysis::classify_at(const std::string& path, const AnyPoint& p) const {
  const Info& me = info(path);
  const Node& node = *me.node;
  auto child = [&](std::size_t i) { return path + "." + std::to_string(i); };
  switch (node.rule) {
    case Rule::BaseF2: return {"unknown", std::nullopt, path};
    case Rule::FreeTransport:
    case Rule::Intertwine: {
      if (!me.fragment) return {"unknown", std::nullopt, path};
      const auto w = me.fragment->find(p);
      if (!w) return {"unknown", std::nullopt, path};
      return {label_of(*w), w, path};
    }
    case Rule::CountableAbsorb:
      if (me.absorbed && me.absorbed->power_of(p)) return {"absorbed", std::nullopt, path};
      return classify_at(child(0), p);
    case Rule::SubgroupLift: return classify_at(child(0), p);
    case Rule::Pullback:
    case Rule::EquidecompTransfer: {
      AnyPoint image;
      try {
        image = apply_map(map_of(node), p);
      } catch (const GapCaseError&) {
        return {"gap", std::nullopt, path};
      } catch (const DomainError&) {
        return {"unknown", std::nullopt, path};
      }
      return classify_at(child(0), image);
    }
    case Rule::DisjointUnion: {
      const std::size_t m = node.params.at("hyperplane").get<std::size_t>();
      const bool inside = std::visit(
          [m](const auto& x) -> bool {
            using X = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<X, spaces::Subspace<typename X::Scalar>>) {
              return spaces::Subspace<typename X::Scalar>::coordinate(x.ambient(), m).contains(x);
            } else {
              throw DimensionError("hyperplane split needs a subspace");
            }
          },
          p);
      const std::string want = inside ? region::in_hyperplane(m) : region::off_hyperplane(m);
      for (std::size_t i = 0; i < node.children.size(); ++i)
        if (node.children[i].region == want) return classify_at(child(i), p);
      return {"unknown", std::nullopt, path};
    }
  }
  return {"unknown", std::nullopt, path};
}

Classification Analysis::classify(const ProvenancedPoint& p) const {
  Classification c = classify_at("0", p.point);
  if (p.absorber_power < 0 && c.word && *c.word != p.word)
    throw DomainError("provenance mismatch: point built as " + p.word.display() + "·seed is " + c.word->display() +
                      "·seed in the fragment at " + c.node);
  return c;
}

// ---- sampling -----------------------------------------------------------

Word random_word(int L, Rng& rng) {
  const std::uint64_t total = freegroup::ball_count(L);
  std::uint64_t r = rng() % total;
  int len = 0;
  while (r >= freegroup::sphere_count(len)) {
    r -= freegroup::sphere_count(len);
    ++len;
  }
  std::vector<Letter> letters;
  for (int i = 0; i < len; ++i) {
    Letter x;
    do {
      x = freegroup::kLetters[rng() % 4];
    } while (!letters.empty() && letters.back() == freegroup::inverse(x));
    letters.push_back(x);
  }
  return Word::reduce(letters);
}

namespace {

std::vector<ProvenancedPoint> sample_sources(const std::vector<Source>& sources, std::size_t count, int L, Rng& rng) {
  std::vector<ProvenancedPoint> out;
  if (sources.empty()) return out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Source& s = sources[i % sources.size()];
    const Word w = random_word(L, rng);
    out.push_back({apply_word(s.pair, w, s.seed), w, -1, s.base});
  }
  return out;
}

// ---- group membership ---------------------------------------------------

std::optional<std::string> membership_problem(const AnyMatrix& g, const GroupTag& tag) {
  if (rows(g) != tag.n) return "size " + std::to_string(rows(g)) + " in " + tag.str();
  if (field_of(g) != tag.field) return "wrong field for " + tag.str();
  if (!is_unitary(g)) return "not unitary";
  if (!is_block_embedded(g, tag.m)) return "moves coordinates outside the block of " + tag.str();
  if (tag.kind == GroupTag::Kind::Special) {
    const bool det_one = std::visit(
        [](const auto& m) -> bool {
          using S = typename std::decay_t<decltype(m)>::Scalar;
          if constexpr (numeric::ScalarOps<S>::commutative) {
            return numeric::determinant(m) == S(1);
          } else {
            return false;
          }
        },
        g);
    if (!det_one) return "determinant is not 1";
  }
  return std::nullopt;
}

template <class S>
freegroup::FreenessReport freeness_over(const ActingPair& p, int L) {
  const auto name = freegroup::parse_pair_name(p.label.substr(0, p.label.find('*')));
  const freegroup::GeneratorPair<S> g(name, std::get<Matrix<S>>(p.images[0]), std::get<Matrix<S>>(p.images[1]));
  return freegroup::check_freeness(g, L);
}

freegroup::FreenessReport freeness(const ActingPair& p, int L) {
  switch (p.images[0].index()) {
    case 0: return freeness_over<RealScalar>(p, L);
    case 1: return freeness_over<ComplexScalar>(p, L);
    default: return freeness_over<QuatScalar>(p, L);
  }
}

// ---- node checks --------------------------------------------------------

struct NodeRun {
  const Analysis& an;
  const VerifyOptions& opts;
  const std::string& path;
  const Node& node;
  NodeReport& rep;
  Rng rng;
  std::uint64_t checked = 0;

  void fail(const std::string& msg) {
    rep.failures.push_back(msg);
  }

  /// Fragment reassembly, freeness of the pair and classification of
  /// fragment samples: shared by FreeTransport and Intertwine.
  void free_orbit() {
    const Fragment* f = an.fragment(path);
    if (!f) {
      fail(an.error(path).empty() ? "no seed reached this node" : an.error(path));
      return;
    }
    const ActingPair& pair = f->pair();
    const auto t_a = pair.image(translate_of(node, Letter::a));
    const auto t_b = pair.image(translate_of(node, Letter::b));
    const ReassemblyReport r = check_reassembly(*f, t_a, t_b);
    rep.stats["fragment_points"] = f->size();
    rep.stats["reassembly"] = r.to_json();
    checked += r.covered_checked;
    if (!r.passed())
      fail("reassembly failed at radius " + std::to_string(*r.failure_radius) + ": " + r.examples.front());

    const auto fr = freeness(pair, opts.depth);
    rep.stats["words_enumerated"] = fr.words_checked;
    checked += fr.words_checked;
    if (!fr.passed()) fail("pair " + pair.label + " is not free: " + fr.counterexample->str() + " = I");

    std::uint64_t mismatches = 0;
    const auto samples = std::min<std::size_t>(opts.samples, f->size());
    for (std::size_t i = 0; i < samples; ++i) {
      const auto& p = f->points()[rng() % f->size()];
      const auto c = an.classify_at(path, p.point);
      if (c.label != label_of(p.word)) {
        ++mismatches;
        note(rep.failures, p.word.display() + "·seed classified " + c.label);
      }
    }
    rep.stats["samples"] = samples;
    rep.stats["classification_mismatches"] = mismatches;
    checked += samples;
  }

  void base_f2() {
    const auto r = freegroup::check_translate_identity(opts.depth);
    rep.stats["words_enumerated"] = r.words_checked;
    rep.stats["depth"] = r.depth;
    checked += r.words_checked;
    for (const auto& f : r.failures) fail(f);
  }

  void subgroup_lift() {
    std::uint64_t elements = 0;
    for (const auto& s : an.sources(path)) {
      for (const auto& g : s.pair.images) {
        ++elements;
        if (auto why = membership_problem(g, node.group)) fail(s.pair.label + " generator: " + *why);
      }
    }
    const auto& kid = node.children.at(0);
    if (kid.rule == Rule::CountableAbsorb) {
      ++elements;
      const AnyMatrix g = matrix_from_json(kid.params.at("absorber"), point_field(*kid.space));
      if (auto why = membership_problem(g, node.group)) fail("absorber: " + *why);
    }
    rep.stats["elements_checked"] = elements;
    checked += elements;
  }

  void countable_absorb() {
    const AbsorbedSet* set = an.absorbed(path);
    if (!set) {
      fail(an.error(path));
      return;
    }
    const auto& ar = set->report();
    rep.stats["exceptional_size"] = ar.set_size;
    rep.stats["bound"] = ar.bound;
    rep.stats["images_checked"] = ar.images_checked;
    rep.stats["near_misses"] = set->near_misses();
    checked += ar.images_checked;
    if (ar.collision)
      fail("g^" + std::to_string(ar.collision->first) + "(D) meets g^" + std::to_string(ar.collision->second) +
           "(D)");
    const AnyMatrix g = matrix_from_json(node.params.at("absorber"), point_field(*node.space));
    const AnyMatrix g_inv = inverse_of(g);
    if (!is_unitary(g)) fail("absorber is not unitary");

    const int M = ar.bound;
    auto in_absorbed = [set, M](const ProvenancedPoint& p, int from) {
      if (const auto k = set->power_of(p.point)) return *k >= from ? Membership::Yes : Membership::No;
      return p.absorber_power > M ? Membership::Unknown : Membership::No;
    };
    auto in_rest = [set, M](const ProvenancedPoint& p) {
      if (set->power_of(p.point)) return Membership::No;
      return p.absorber_power > M ? Membership::Unknown : Membership::Yes;
    };
    EquidecompWitness w;
    w.pieces.push_back({"absorbed", [=](const ProvenancedPoint& p) { return in_absorbed(p, 1); },
                        [=](const ProvenancedPoint& p) { return in_absorbed(p, 0); },
                        [g_inv](const ProvenancedPoint& p) {
                          ProvenancedPoint q = p;
                          q.point = act(g_inv, p.point);
                          if (q.absorber_power > 0) --q.absorber_power;
                          return q;
                        }});
    w.pieces.push_back({"rest", in_rest, in_rest, [](const ProvenancedPoint& p) { return p; }});

    // Absorber-orbit samples gᵏ·d with k up to the bound plus the extra levels.
    const int top = M + an.options().extra_absorb;
    auto orbit_sample = [&](int min_k) {
      const std::size_t i = rng() % set->exceptional().size();
      const int k = min_k + static_cast<int>(rng() % static_cast<std::uint64_t>(top - min_k + 1));
      return ProvenancedPoint{set->image(i, k), Word{}, k, path};
    };
    const std::size_t half = std::max<std::size_t>(opts.samples / 2, 1);
    std::vector<ProvenancedPoint> source, target;
    if (!set->exceptional().empty()) {
      for (std::size_t i = 0; i < half; ++i) source.push_back(orbit_sample(1));
      for (std::size_t i = 0; i < half; ++i) target.push_back(orbit_sample(0));
    }
    const auto free_points = sample_sources(an.sources(path), half, opts.depth, rng);
    source.insert(source.end(), free_points.begin(), free_points.end());
    target.insert(target.end(), free_points.begin(), free_points.end());
    const auto er = equidecomp_verify(w, source, target);
    rep.stats["witness"] = er.to_json();
    rep.stats["unknown"] = er.unknown;
    checked += er.checked;
    for (const auto& e : er.examples) fail("witness: " + e);

    std::uint64_t mismatches = 0;
    for (const auto& p : target) {
      const auto c = an.classify_at(path, p.point);
      std::string expected;
      if (p.absorber_power >= 0) {
        if (p.absorber_power > M) continue;
        expected = "absorbed";
      } else {
        expected = label_of(p.word);
      }
      if (c.label != expected) {
        ++mismatches;
        note(rep.failures, "sample expected " + expected + ", classified " + c.label);
      }
    }
    rep.stats["classification_mismatches"] = mismatches;
    rep.stats["samples"] = source.size() + target.size();
  }

  void pullback() {
    const MapSpec map = map_of(node);
    const auto st = equimaps::selftest(map, opts.samples, derive_seed(opts.seed, path + "/selftest"), opts.mode, opts.tol);
    rep.stats["selftest"] = st.to_json();
    checked += st.checked;
    if (!st.passed()) fail("selftest of " + map.label() + " failed");

    const auto& sources = an.sources(path);
    if (sources.empty()) {
      fail(an.error(path).empty() ? "no provenanced samples reach this node" : an.error(path));
      return;
    }
    const std::string child = path + ".0";
    std::uint64_t coherent = 0, mismatches = 0;
    for (const auto& x : sample_sources(sources, opts.samples, opts.depth, rng)) {
      const std::string expected = label_of(x.word);
      AnyPoint image;
      try {
        image = apply_map(map, x.point);
      } catch (const std::exception& e) {
        ++mismatches;
        note(rep.failures, x.word.display() + "·seed is outside the domain: " + e.what());
        continue;
      }
      const auto below = an.classify_at(child, image);
      const auto here = an.classify_at(path, x.point);
      if (below.label == expected && here.label == expected) {
        ++coherent;
      } else {
        ++mismatches;
        note(rep.failures, x.word.display() + "·seed: provenance " + expected + ", here " + here.label + ", image " +
                               below.label);
      }
    }
    rep.stats["coherence"] = Json{{"samples", coherent + mismatches}, {"coherent", coherent}, {"mismatches", mismatches}};
    checked += coherent;
  }

  template <class S>
  void split_over(std::size_t m) {
    const auto& space = *node.space;
    const std::size_t n = space.n, k = space.k;
    const auto h = spaces::Subspace<S>::coordinate(n, m);
    std::uint64_t in = 0, off = 0, gaps = 0;
    for (std::size_t i = 0; i < opts.samples; ++i) {
      spaces::Subspace<S> v;
      const auto kind = rng() % 8;
      if (kind == 0) {
        v = spaces::act(spaces::block_embed(spaces::random_unitary<S>(m, rng), n), spaces::Subspace<S>::coordinate(n, k));
      } else if (kind == 1 && k >= 3) {
        Matrix<S> basis(n, k);
        const Matrix<S> u = spaces::random_unitary<S>(n, rng);
        const Matrix<S> w = spaces::block_embed(spaces::random_unitary<S>(m, rng), n);
        for (std::size_t r = 0; r < n; ++r) {
          for (std::size_t c = 0; c < 2; ++c) basis(r, c) = w(r, c);
          for (std::size_t c = 2; c < k; ++c) basis(r, c) = u(r, c);
        }
        if (numeric::rank(basis) != k) continue;
        v = spaces::Subspace<S>::from_basis(basis);
      } else {
        v = spaces::random_subspace<S>(n, k, rng);
      }
      const bool is_in = h.contains(v);
      const std::size_t meet = spaces::intersect(v, h).dim();
      const bool is_off = meet < k;
      if (is_in == is_off) fail("sample lies in " + std::string(is_in ? "both branches" : "neither branch"));
      in += is_in;
      off += is_off;
      if (is_off && meet > 1) ++gaps;
    }
    rep.stats["in_hyperplane"] = in;
    rep.stats["off_hyperplane"] = off;
    rep.stats["gap_cases"] = gaps;
    checked += in + off;
  }

  void disjoint_union() {
    const std::size_t m = node.params.at("hyperplane").get<std::size_t>();
    switch (node.space->field) {
      case Field::R: split_over<RealScalar>(m); break;
      case Field::C: split_over<ComplexScalar>(m); break;
      case Field::H: split_over<QuatScalar>(m); break;
    }
    // Orbit points of each branch stay in that branch.
    std::uint64_t invariant = 0;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      const std::string cp = path + "." + std::to_string(i);
      const bool want_in = node.children[i].region == region::in_hyperplane(m);
      const auto pts = sample_sources(an.sources(cp), opts.samples / 2, opts.depth, rng);
      for (const auto& p : pts) {
        const bool is_in = std::visit(
            [m](const auto& x) -> bool {
              using X = std::decay_t<decltype(x)>;
              if constexpr (std::is_same_v<X, spaces::Subspace<typename X::Scalar>>) {
                return spaces::Subspace<typename X::Scalar>::coordinate(x.ambient(), m).contains(x);
              } else {
                return false;
              }
            },
            p.point);
        if (is_in != want_in) {
          note(rep.failures, p.word.display() + "·seed left its branch " + node.children[i].region);
        } else {
          ++invariant;
        }
      }
    }
    rep.stats["branch_invariance_checked"] = invariant;
    checked += invariant;
  }

  template <class E>
  void rotations() {
    using F = numeric::FloatOf<E>;
    const Fragment* f = an.fragment(path);
    if (!f) return;
    const ActingPair& pair = f->pair();
    std::array<Matrix<F>, 4> fl;
    std::array<Matrix<double>, 4> rot;
    double dev = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      fl[i] = numeric::to_float(std::get<Matrix<E>>(pair.images[i]));
      try {
        rot[i] = equimaps::induced_rotation(fl[i], opts.tol);
      } catch (const std::exception& e) {
        fail(std::string("induced rotation: ") + e.what());
        return;
      }
      const double det = numeric::determinant(rot[i]);
      dev = std::max(dev, std::abs(det - 1.0));
      if (std::abs(det - 1.0) > opts.tol) fail("induced rotation has determinant " + std::to_string(det));
    }
    std::uint64_t intertwined = 0;
    for (std::size_t s = 0; s < std::min<std::size_t>(opts.samples, f->size()); ++s) {
      const auto& p = std::get<spaces::Subspace<E>>(f->points()[rng() % f->size()].point);
      const auto x = spaces::Subspace<F>::from_projector(numeric::to_float(p.projector()), 1);
      for (std::size_t i = 0; i < 4; ++i) {
        const Matrix<double> lhs = equimaps::stereographic_vector(spaces::act(fl[i], x));
        const Matrix<double> rhs = rot[i] * equimaps::stereographic_vector(x);
        const double d = numeric::max_abs_diff(lhs, rhs);
        dev = std::max(dev, d);
        if (d > opts.tol) note(rep.failures, "stereographic image not intertwined, deviation " + std::to_string(d));
        ++intertwined;
      }
    }
    std::uint64_t homs = 0;
    auto eval = [&](const Word& w) {
      Matrix<F> out = Matrix<F>::identity(2);
      for (std::size_t i = 0; i < w.size(); ++i) out = out * fl[static_cast<std::size_t>(w[i])];
      return out;
    };
    for (std::size_t s = 0; s < std::max<std::size_t>(opts.samples / 5, 1); ++s) {
      const Matrix<F> u = eval(random_word(3, rng));
      const Matrix<F> v = eval(random_word(3, rng));
      try {
        const auto ru = equimaps::induced_rotation(u, 1e-8);
        const auto rv = equimaps::induced_rotation(v, 1e-8);
        const auto ruv = equimaps::induced_rotation(Matrix<F>(u * v), 1e-8);
        const double d = numeric::max_abs_diff(ruv, Matrix<double>(ru * rv));
        dev = std::max(dev, d);
        if (d > 1e-8) note(rep.failures, "induced rotation is not multiplicative, deviation " + std::to_string(d));
      } catch (const std::exception& e) {
        note(rep.failures, e.what());
      }
      ++homs;
    }
    rep.stats["backend"] = "float";
    rep.stats["intertwining_checks"] = intertwined;
    rep.stats["homomorphism_checks"] = homs;
    rep.stats["max_deviation"] = dev;
    checked += intertwined + homs;
  }

  void intertwine() {
    free_orbit();
    if (!an.fragment(path)) return;
    if (node.space->field == Field::C) {
      rotations<ComplexScalar>();
    } else {
      rotations<QuatScalar>();
    }
  }

  void run() {
    switch (node.rule) {
      case Rule::BaseF2: base_f2(); break;
      case Rule::FreeTransport: free_orbit(); break;
      case Rule::SubgroupLift: subgroup_lift(); break;
      case Rule::CountableAbsorb: countable_absorb(); break;
      case Rule::Pullback:
      case Rule::EquidecompTransfer: pullback(); break;
      case Rule::DisjointUnion: disjoint_union(); break;
      case Rule::Intertwine: intertwine(); break;
    }
    rep.stats["checked"] = checked;
    if (!rep.failures.empty()) {
      rep.status = "fail";
    } else {
      rep.status = checked > 0 ? "pass" : "unknown";
    }
  }
};

}  // namespace

// ---- reports ------------------------------------------------------------

Json VerifyOptions::to_json() const {
  return Json{{"depth", depth},
              {"samples", samples},
              {"seed", seed},
              {"mode", equimaps::to_string(mode)},
              {"tol", tol},
              {"absorb_bound", absorb_bound},
              {"exceptional_depth", exceptional_depth > 0 ? exceptional_depth : std::min(depth, 6)}};
}

Json NodeReport::to_json() const {
  return Json{{"path", path},   {"rule", rule},   {"space", space},       {"group", group},
              {"status", status}, {"stats", stats}, {"failures", failures}};
}

bool VerificationReport::passed() const {
  return !nodes.empty() &&
         std::all_of(nodes.begin(), nodes.end(), [](const NodeReport& n) { return n.status == "pass"; });
}

Json VerificationReport::to_json() const {
  Json list = Json::array();
  std::uint64_t unknown = 0, gaps = 0, words = 0, checks = 0, failed = 0;
  double dev = 0.0;
  for (const auto& n : nodes) {
    list.push_back(n.to_json());
    unknown += n.stats.value("unknown", std::uint64_t{0});
    gaps += n.stats.value("gap_cases", std::uint64_t{0});
    words += n.stats.value("words_enumerated", std::uint64_t{0});
    checks += n.stats.value("checked", std::uint64_t{0});
    dev = std::max(dev, n.stats.value("max_deviation", 0.0));
    failed += n.status != "pass";
  }
  return Json{{"schema", "paradox-report/1"},
              {"kind", "verify"},
              {"space", space},
              {"config", options.to_json()},
              {"nodes", std::move(list)},
              {"summary",
               {{"nodes", nodes.size()},
                {"failed_nodes", failed},
                {"checks", checks},
                {"words_enumerated", words},
                {"unknown", unknown},
                {"gap_cases", gaps},
                {"max_deviation", dev},
                {"seed_candidate", seed_candidate}}},
              {"passed", passed()}};
}

VerificationReport verify(const Node& root, const VerifyOptions& opts) {
  if (opts.depth < 1) throw std::invalid_argument("verify: depth must be at least 1");
  Analysis::Options ao;
  ao.depth = opts.depth;
  ao.exceptional_depth = opts.exceptional_depth;
  ao.absorb_bound = opts.absorb_bound;
  ao.jobs = opts.jobs;
  const Analysis an(root, ao);

  VerificationReport report;
  report.space = root.space_str();
  report.options = opts;
  report.seed_candidate = an.seed_attempt();
  const auto paths = an.paths();
  report.nodes.resize(paths.size());
  parallel_for(paths.size(), opts.jobs, [&](std::size_t i) {
    const std::string& path = paths[i];
    const Node& node = node_at(root, path);
    NodeReport& rep = report.nodes[i];
    rep.path = path;
    rep.rule = to_string(node.rule);
    rep.space = node.space_str();
    rep.group = node.group.str();
    NodeRun run{an, opts, path, node, rep, Rng(derive_seed(opts.seed, path)), 0};
    try {
      run.run();
    } catch (const std::exception& e) {
      rep.failures.push_back(std::string("error: ") + e.what());
      rep.status = "fail";
    }
  });
  return report;
}

}  // namespace bt::paradox
