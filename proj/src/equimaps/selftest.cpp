#include "bt/equimaps/selftest.hpp"

#include "bt/equimaps/maps.hpp"
#include "bt/equimaps/stereographic.hpp"
#include "bt/error.hpp"
#include "bt/parallel.hpp"
#include "bt/random.hpp"
#include "bt/spaces/random.hpp"

namespace bt::equimaps {

std::string to_string(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

Mode parse_mode(const std::string& text) {
  if (text == "exact") return Mode::Exact;
  if (text == "float") return Mode::Float;
  throw ParseError("unknown mode '" + text + "' (expected exact or float)");
}

namespace {

struct MapName {
  MapId id;
  const char* name;
};
constexpr MapName kMapNames[] = {
    {MapId::SphereDrop, "sphere_drop"},
    {MapId::ProjDrop, "proj_drop"},
    {MapId::GrassSlice, "grass_slice"},
    {MapId::HyperplaneRestrict, "hyperplane_restrict"},
    {MapId::Duality, "duality"},
    {MapId::FlagToGrass, "flag_to_grass"},
    {MapId::AntipodalProject, "antipodal_project"},
    {MapId::Stereographic, "stereographic"},
};

}  // namespace

std::string to_string(MapId id) {
  for (const auto& m : kMapNames)
    if (m.id == id) return m.name;
  return "?";
}

MapId parse_map_id(const std::string& text) {
  for (const auto& m : kMapNames)
    if (text == m.name) return m.id;
  throw ParseError("unknown map '" + text + "'");
}

MapSpec MapSpec::sphere_drop(std::size_t n) {
  MapSpec s;
  s.id = MapId::SphereDrop;
  s.n = n;
  return s;
}
MapSpec MapSpec::proj_drop(Field f, std::size_t n) {
  MapSpec s;
  s.id = MapId::ProjDrop;
  s.field = f;
  s.n = n;
  return s;
}
MapSpec MapSpec::grass_slice(Field f, std::size_t n, std::size_t k) {
  MapSpec s;
  s.id = MapId::GrassSlice;
  s.field = f;
  s.n = n;
  s.k = k;
  s.m = n + 1 - k;
  return s;
}
MapSpec MapSpec::hyperplane_restrict(Field f, std::size_t n, std::size_t k) {
  MapSpec s = grass_slice(f, n, k);
  s.id = MapId::HyperplaneRestrict;
  return s;
}
MapSpec MapSpec::duality(Field f, std::size_t n, std::size_t k) {
  MapSpec s;
  s.id = MapId::Duality;
  s.field = f;
  s.n = n;
  s.k = k;
  return s;
}
MapSpec MapSpec::flag_to_grass(Field f, std::vector<std::size_t> dims, std::size_t index) {
  MapSpec s;
  s.id = MapId::FlagToGrass;
  s.field = f;
  s.n = dims.back();
  s.dims = std::move(dims);
  s.index = index;
  return s;
}
MapSpec MapSpec::antipodal_project(std::size_t n) {
  MapSpec s;
  s.id = MapId::AntipodalProject;
  s.n = n;
  return s;
}
MapSpec MapSpec::stereographic(Field f) {
  if (f == Field::R) throw ConstraintError("stereographic: K must be C or H");
  MapSpec s;
  s.id = MapId::Stereographic;
  s.field = f;
  s.n = 2;
  return s;
}

SpaceDescriptor MapSpec::source() const {
  switch (id) {
    case MapId::SphereDrop:
    case MapId::AntipodalProject: return SpaceDescriptor::sphere(n);
    case MapId::ProjDrop:
    case MapId::Stereographic: return SpaceDescriptor::projective(field, n);
    case MapId::GrassSlice:
    case MapId::HyperplaneRestrict:
    case MapId::Duality: return SpaceDescriptor::grassmann(field, n, k);
    case MapId::FlagToGrass: return SpaceDescriptor::flag(field, dims);
  }
  return {};
}

SpaceDescriptor MapSpec::target() const {
  switch (id) {
    case MapId::SphereDrop: return SpaceDescriptor::sphere(n - 1);
    case MapId::AntipodalProject: return SpaceDescriptor::projective(Field::R, n + 1);
    case MapId::ProjDrop: return SpaceDescriptor::projective(field, n - 1);
    case MapId::Stereographic: return SpaceDescriptor::sphere(field == Field::C ? 2 : 4);
    case MapId::GrassSlice: return SpaceDescriptor::projective(field, m);
    case MapId::HyperplaneRestrict: return SpaceDescriptor::grassmann(field, m, k);
    case MapId::Duality: return SpaceDescriptor::grassmann(field, n, n - k);
    case MapId::FlagToGrass: return SpaceDescriptor::grassmann(field, n, dims.at(index - 1));
  }
  return {};
}

std::size_t MapSpec::acting_size() const {
  switch (id) {
    case MapId::SphereDrop: return n;
    case MapId::ProjDrop: return n - 1;
    case MapId::GrassSlice:
    case MapId::HyperplaneRestrict: return m;
    case MapId::AntipodalProject: return n + 1;
    default: return n;
  }
}

std::string MapSpec::label() const {
  std::string out = to_string(id) + ":" + source().str() + "->" + target().str();
  if (id == MapId::FlagToGrass) out += "@" + std::to_string(index);
  return out;
}

Json MapSpec::to_json() const {
  Json j;
  j["name"] = to_string(id);
  j["field"] = std::string(1, spaces::to_char(field));
  j["n"] = n;
  j["k"] = k;
  j["m"] = m;
  j["index"] = index;
  j["dims"] = dims;
  return j;
}

MapSpec MapSpec::from_json(const Json& j) {
  MapSpec s;
  s.id = parse_map_id(j.at("name").get<std::string>());
  s.field = spaces::field_from_string(j.at("field").get<std::string>());
  s.n = j.at("n").get<std::size_t>();
  s.k = j.at("k").get<std::size_t>();
  s.m = j.at("m").get<std::size_t>();
  s.index = j.at("index").get<std::size_t>();
  s.dims = j.at("dims").get<std::vector<std::size_t>>();
  return s;
}

Json SelftestReport::to_json() const {
  Json j;
  j["map"] = map;
  j["backend"] = backend;
  j["samples"] = samples;
  j["checked"] = checked;
  j["filtered"] = filtered;
  j["gap_cases"] = gap_cases;
  j["failures"] = failures;
  j["max_deviation"] = max_deviation;
  j["examples"] = examples;
  j["passed"] = passed();
  return j;
}

namespace {

using numeric::Matrix;
using spaces::FlagPoint;
using spaces::SpherePoint;
using spaces::Subspace;

template <class T>
const Matrix<T>& canonical(const SpherePoint<T>& p) {
  return p.vector();
}
template <class T>
const Matrix<T>& canonical(const Subspace<T>& p) {
  return p.projector();
}

template <class S>
Matrix<S> unit(std::size_t n, std::size_t i) {
  Matrix<S> v(n, 1);
  v[i] = S(1);
  return v;
}

// The shared sampling loop. `draw` yields source points (possibly outside
// the domain), `apply` is the map, `target_action` turns an acting-block
// element h into the matrix acting on the target.
template <class S, class T, class Draw, class Apply, class TargetAction>
void run_checks(SelftestReport& report, std::size_t samples, Rng& rng, double tol, std::size_t acting,
                std::size_t source_ambient, Draw&& draw, Apply&& apply, TargetAction&& target_action) {
  constexpr bool exact = numeric::ScalarOps<T>::exact;
  report.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto x = draw(rng);
    const Matrix<S> h = spaces::random_unitary<S>(acting, rng);
    const Matrix<S> g = spaces::block_embed(h, source_ambient);
    try {
      (void)apply(x);
    } catch (const GapCaseError&) {
      ++report.gap_cases;
      ++report.filtered;
      continue;
    } catch (const DomainError&) {
      ++report.filtered;
      continue;
    }
    ++report.checked;
    std::string problem;
    double deviation = 0.0;
    try {
      const auto lhs = apply(spaces::act(g, x));
      const auto rhs = spaces::act(Matrix<T>(target_action(h)), apply(x));
      deviation = numeric::max_abs_diff(canonical(lhs), canonical(rhs));
      const bool ok = exact ? canonical(lhs) == canonical(rhs) : deviation <= tol;
      if (!ok) problem = "f(g·x) != g·f(x), deviation " + std::to_string(deviation);
    } catch (const std::exception& e) {
      problem = std::string("g·x left the domain: ") + e.what();
    }
    report.max_deviation = std::max(report.max_deviation, deviation);
    if (!problem.empty()) {
      ++report.failures;
      if (report.examples.size() < 3) report.examples.push_back("sample " + std::to_string(s) + ": " + problem);
    }
  }
}

// Fixed target rotation used by the corrupted control.
template <class T>
Matrix<T> corruption(std::size_t n) {
  Rng rng(20240501);
  return spaces::random_unitary<T>(n, rng);
}

template <class S, class Draw, class Apply>
void run_block_map(SelftestReport& report, const MapSpec& spec, std::size_t samples, Rng& rng, double tol,
                   bool corrupt, std::size_t source_ambient, std::size_t target_ambient, Draw&& draw,
                   Apply&& apply) {
  const auto act_target = [&](const Matrix<S>& h) { return spaces::block_embed(h, target_ambient); };
  if (!corrupt) {
    run_checks<S, S>(report, samples, rng, tol, spec.acting_size(), source_ambient, draw, apply, act_target);
    return;
  }
  const Matrix<S> c = corruption<S>(target_ambient);
  auto bad = [&](const auto& x) { return spaces::act(c, apply(x)); };
  run_checks<S, S>(report, samples, rng, tol, spec.acting_size(), source_ambient, draw, bad, act_target);
}

template <class S>
void selftest_sphere(SelftestReport& report, const MapSpec& spec, std::size_t samples, Rng& rng, double tol,
                     bool corrupt) {
  const std::size_t n = spec.n;
  if (spec.id == MapId::SphereDrop) {
    auto draw = [n](Rng& r) {
      if (r() % 16 == 0) return SpherePoint<S>(Matrix<S>(unit<S>(n + 1, n).right_scaled(S(r() % 2 ? 1 : -1))));
      return spaces::random_sphere_point<S>(n + 1, r);
    };
    auto apply = [](const SpherePoint<S>& x) { return sphere_drop(x); };
    run_block_map<S>(report, spec, samples, rng, tol, corrupt, n + 1, n, draw, apply);
  } else {
    auto draw = [n](Rng& r) { return spaces::random_sphere_point<S>(n + 1, r); };
    auto apply = [](const SpherePoint<S>& x) { return spaces::antipodal_project(x); };
    run_block_map<S>(report, spec, samples, rng, tol, corrupt, n + 1, n + 1, draw, apply);
  }
}

template <class S>
void selftest_typed(SelftestReport& report, const MapSpec& spec, std::size_t samples, Rng& rng, double tol,
                    bool corrupt) {
  const std::size_t n = spec.n;
  const auto draw_in_block = [](std::size_t amb, std::size_t m, std::size_t k, Rng& r) {
    return spaces::act(spaces::block_embed(spaces::random_unitary<S>(m, r), amb), Subspace<S>::coordinate(amb, k));
  };
  switch (spec.id) {
    case MapId::SphereDrop:
    case MapId::AntipodalProject:
      if constexpr (numeric::ScalarOps<S>::real) {
        selftest_sphere<S>(report, spec, samples, rng, tol, corrupt);
        return;
      } else {
        throw ConstraintError(to_string(spec.id) + " acts on real spheres only");
      }
    case MapId::ProjDrop: {
      auto draw = [n](Rng& r) {
        if (r() % 16 == 0) return Subspace<S>::line(unit<S>(n, n - 1));
        return spaces::random_line<S>(n, r);
      };
      auto apply = [](const Subspace<S>& x) { return proj_drop(x); };
      run_block_map<S>(report, spec, samples, rng, tol, corrupt, n, n - 1, draw, apply);
      return;
    }
    case MapId::GrassSlice: {
      const std::size_t k = spec.k, m = spec.m;
      auto draw = [=](Rng& r) {
        const auto roll = r() % 16;
        if (roll == 0) return draw_in_block(n, m, k, r);
        if (roll == 1 && k >= 3) {
          // Two directions inside H and the rest generic: dim(V ∩ H) = 2.
          Matrix<S> basis(n, k);
          basis(0, 0) = S(1);
          basis(1, 1) = S(1);
          for (std::size_t c = 2; c < k; ++c) {
            const auto v = spaces::random_vector<S>(n, r);
            for (std::size_t i = 0; i < n; ++i) basis(i, c) = v[i];
            basis(m + (c - 2) % (n - m), c) = S(5);
          }
          const auto g = spaces::block_embed(spaces::random_unitary<S>(m, r), n);
          return spaces::act(g, Subspace<S>::from_basis(numeric::column_space(basis)));
        }
        return spaces::random_subspace<S>(n, k, r);
      };
      auto apply = [m](const Subspace<S>& v) { return grass_slice(v, m); };
      run_block_map<S>(report, spec, samples, rng, tol, corrupt, n, m, draw, apply);
      return;
    }
    case MapId::HyperplaneRestrict: {
      const std::size_t k = spec.k, m = spec.m;
      auto draw = [=](Rng& r) {
        if (r() % 16 == 0) return spaces::random_subspace<S>(n, k, r);
        return draw_in_block(n, m, k, r);
      };
      auto apply = [m](const Subspace<S>& v) { return hyperplane_restrict(v, m); };
      run_block_map<S>(report, spec, samples, rng, tol, corrupt, n, m, draw, apply);
      return;
    }
    case MapId::Duality: {
      const std::size_t k = spec.k;
      auto draw = [=](Rng& r) { return spaces::random_subspace<S>(n, k, r); };
      auto apply = [](const Subspace<S>& v) { return duality(v); };
      run_block_map<S>(report, spec, samples, rng, tol, corrupt, n, n, draw, apply);
      return;
    }
    case MapId::FlagToGrass: {
      auto draw = [&spec](Rng& r) { return spaces::random_flag<S>(spec.n, spec.dims, r); };
      auto apply = [&spec](const FlagPoint<S>& f) { return flag_to_grass(f, spec.index); };
      run_block_map<S>(report, spec, samples, rng, tol, corrupt, n, n, draw, apply);
      return;
    }
    case MapId::Stereographic: {
      if constexpr (numeric::ScalarOps<S>::real) {
        throw ConstraintError("stereographic needs K = C or H");
      } else {
        using T = RealOf<S>;
        auto draw = [](Rng& r) {
          const auto roll = r() % 16;
          if (roll == 0) return Subspace<S>::line(unit<S>(2, 0));
          if (roll == 1) return Subspace<S>::line(unit<S>(2, 1));
          return spaces::random_line<S>(2, r);
        };
        auto apply = [](const Subspace<S>& l) { return stereographic(l); };
        auto act_target = [tol](const Matrix<S>& h) { return induced_rotation(h, std::max(tol, 1e-9)); };
        const std::size_t d = real_dimension<S>();
        if (!corrupt) {
          run_checks<S, T>(report, samples, rng, tol, 2, 2, draw, apply, act_target);
        } else {
          const Matrix<T> c = corruption<T>(d + 1);
          auto bad = [&](const Subspace<S>& l) { return spaces::act(c, stereographic(l)); };
          run_checks<S, T>(report, samples, rng, tol, 2, 2, draw, bad, act_target);
        }
      }
      return;
    }
  }
}

template <spaces::Field K>
void dispatch_field(SelftestReport& report, const MapSpec& spec, std::size_t samples, Rng& rng, double tol,
                    bool corrupt, bool exact) {
  if (exact) {
    selftest_typed<typename spaces::FieldScalars<K>::Exact>(report, spec, samples, rng, tol, corrupt);
  } else {
    selftest_typed<typename spaces::FieldScalars<K>::Float>(report, spec, samples, rng, tol, corrupt);
  }
}

}  // namespace

SelftestReport selftest(const MapSpec& spec, std::size_t samples, std::uint64_t seed, Mode mode, double tol,
                        bool corrupt) {
  SelftestReport report;
  report.map = spec.label() + (corrupt ? " (corrupted)" : "");
  const bool exact = mode == Mode::Exact && !spec.float_only();
  report.backend = exact ? "exact" : "float";
  Rng rng(seed);
  switch (spec.field) {
    case Field::R: dispatch_field<Field::R>(report, spec, samples, rng, tol, corrupt, exact); break;
    case Field::C: dispatch_field<Field::C>(report, spec, samples, rng, tol, corrupt, exact); break;
    case Field::H: dispatch_field<Field::H>(report, spec, samples, rng, tol, corrupt, exact); break;
  }
  return report;
}

std::vector<MapSpec> catalog() {
  using F = Field;
  return {
      MapSpec::sphere_drop(3),
      MapSpec::sphere_drop(4),
      MapSpec::antipodal_project(2),
      MapSpec::proj_drop(F::R, 4),
      MapSpec::proj_drop(F::C, 3),
      MapSpec::proj_drop(F::H, 3),
      MapSpec::grass_slice(F::R, 4, 2),
      MapSpec::grass_slice(F::C, 4, 2),
      MapSpec::grass_slice(F::H, 4, 2),
      MapSpec::grass_slice(F::R, 5, 3),
      MapSpec::hyperplane_restrict(F::R, 4, 2),
      MapSpec::hyperplane_restrict(F::C, 4, 2),
      MapSpec::duality(F::R, 4, 2),
      MapSpec::duality(F::C, 3, 1),
      MapSpec::duality(F::H, 3, 2),
      MapSpec::flag_to_grass(F::R, {1, 2, 3}, 1),
      MapSpec::flag_to_grass(F::R, {1, 3, 4}, 1),
      MapSpec::flag_to_grass(F::C, {1, 2}, 1),
      MapSpec::flag_to_grass(F::H, {1, 2}, 1),
      MapSpec::stereographic(F::C),
      MapSpec::stereographic(F::H),
  };
}

std::uint64_t CatalogReport::total_checks() const {
  std::uint64_t total = 0;
  for (const auto& r : maps) total += r.checked;
  return total;
}

bool CatalogReport::passed() const {
  for (const auto& r : maps)
    if (!r.passed()) return false;
  return negative_control.failures > 0;
}

Json CatalogReport::to_json() const {
  Json j;
  j["schema"] = "paradox-report/1";
  j["kind"] = "maps-selftest";
  j["maps"] = Json::array();
  for (const auto& r : maps) j["maps"].push_back(r.to_json());
  j["negative_control"] = negative_control.to_json();
  j["negative_control_detected"] = negative_control.failures > 0;
  j["total_checks"] = total_checks();
  j["passed"] = passed();
  return j;
}

CatalogReport run_catalog(std::size_t samples, std::uint64_t seed, const std::vector<Mode>& modes, double tol,
                          unsigned jobs) {
  struct Task {
    MapSpec spec;
    Mode mode;
  };
  std::vector<Task> tasks;
  for (const auto& spec : catalog()) {
    if (spec.float_only()) {
      tasks.push_back({spec, Mode::Float});
      continue;
    }
    for (Mode m : modes) tasks.push_back({spec, m});
  }
  CatalogReport out;
  out.maps.resize(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    const auto& t = tasks[i];
    out.maps[i] = selftest(t.spec, samples, derive_seed(seed, t.spec.label() + "/" + to_string(t.mode)), t.mode, tol);
  });
  out.negative_control =
      selftest(MapSpec::duality(Field::R, 4, 2), std::max<std::size_t>(samples / 10, 20),
               derive_seed(seed, "negative-control"), Mode::Exact, tol, true);
  return out;
}

}  // namespace bt::equimaps
