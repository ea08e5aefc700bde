#include "bt/cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "bt/equimaps/selftest.hpp"
#include "bt/freegroup/absorber.hpp"
#include "bt/freegroup/axes.hpp"
#include "bt/freegroup/freeness.hpp"
#include "bt/numeric/scalar_json.hpp"
#include "bt/paradox/verify.hpp"

namespace bt::cli {

namespace {

using freegroup::Letter;
using freegroup::Word;
using numeric::Json;
using numeric::Matrix;
using paradox::Node;

// Bad files and unwritable paths are usage errors, not verification failures.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void emit(const Json& j, const std::string& path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw IoError("cannot write " + path);
}

int verdict(bool passed) { return passed ? kPass : kFail; }

Json word_json(const Word& w) { return w.str(); }

template <class S>
Json vector_json(const Matrix<S>& v) {
  Json j = Json::array();
  for (std::size_t i = 0; i < v.rows(); ++i) j.push_back(numeric::ScalarJson<S>::write(v[i]));
  return j;
}

Json freeness_json(const freegroup::FreenessReport& r) {
  return Json{{"schema", "paradox-report/1"},
              {"kind", "freeness"},
              {"pair", r.pair},
              {"max_len", r.max_len},
              {"words_checked", r.words_checked},
              {"counterexample", r.counterexample ? Json(r.counterexample->str()) : Json(nullptr)},
              {"passed", r.passed()}};
}

freegroup::FreenessReport run_freeness(freegroup::PairName pair, int max_len, unsigned jobs) {
  switch (pair) {
    case freegroup::PairName::SO3_AB: return freegroup::check_freeness(freegroup::so3_ab(), max_len, jobs);
    case freegroup::PairName::SU2_SQRT5: return freegroup::check_freeness(freegroup::su2_sqrt5(), max_len, jobs);
    case freegroup::PairName::SP1_SQRT5: return freegroup::check_freeness(freegroup::sp1_sqrt5(), max_len, jobs);
  }
  throw ParseError("unknown pair");
}

freegroup::PairName pair_for(const spaces::SpaceDescriptor& d) {
  if (d.kind == spaces::SpaceDescriptor::Kind::Sphere) return freegroup::PairName::SO3_AB;
  switch (d.field) {
    case spaces::Field::R: return freegroup::PairName::SO3_AB;
    case spaces::Field::C: return freegroup::PairName::SU2_SQRT5;
    case spaces::Field::H: return freegroup::PairName::SP1_SQRT5;
  }
  throw ParseError("unknown field");
}

struct Common {
  std::string output;
  unsigned jobs = 1;
};

void add_jobs(CLI::App* app, Common& c) {
  app->add_option("--jobs", c.jobs, "Worker threads (0 = hardware concurrency)")->capture_default_str();
}

unsigned resolve_jobs(unsigned jobs) {
  if (jobs > 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite certificates and checks for paradoxical decompositions of spheres, projective spaces, "
               "Grassmannians and flag manifolds",
               "paradox"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Common common;
  std::function<int()> action;

  // derive
  std::string space_text;
  paradox::DeriveOptions dopts;
  auto* derive_cmd = app.add_subcommand("derive", "Build the certificate for a space");
  derive_cmd->add_option("space", space_text, "Space, e.g. sphere(2), proj(C,3), grass(R,4,2), flag(R;1,2,3)")
      ->required();
  derive_cmd->add_option("-o,--output", common.output, "Certificate path (default: stdout)");
  derive_cmd->add_option("--bound", dopts.absorb_bound, "Absorber bound M")->capture_default_str()->check(
      CLI::PositiveNumber);
  derive_cmd->add_option("--flag-component", dopts.flag_component, "Flag component to project onto")
      ->capture_default_str();
  derive_cmd->callback([&] {
    action = [&] {
      const Node root = paradox::derive(spaces::parse_descriptor(space_text), dopts);
      emit(paradox::certificate_to_json(root), common.output, out);
      return kPass;
    };
  });

  // check
  std::string cert_path;
  auto* check_cmd = app.add_subcommand("check", "Structural check of a certificate");
  check_cmd->add_option("certificate", cert_path, "Certificate JSON")->required();
  check_cmd->add_option("-o,--output", common.output, "Report path (default: stdout)");
  check_cmd->callback([&] {
    action = [&] {
      const Node root = paradox::certificate_from_json(read_json(cert_path));
      const auto r = paradox::check(root);
      Json j = r.to_json();
      j["schema"] = "paradox-report/1";
      j["kind"] = "check";
      j["space"] = root.space_str();
      emit(j, common.output, out);
      return verdict(r.passed());
    };
  });

  // verify
  paradox::VerifyOptions vopts;
  std::string mode_text = "exact";
  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate, then verify it on finite fragments");
  verify_cmd->add_option("certificate", cert_path, "Certificate JSON")->required();
  verify_cmd->add_option("--depth", vopts.depth, "Word length L")->capture_default_str()->check(CLI::Range(1, 12));
  verify_cmd->add_option("--samples", vopts.samples, "Random samples per node")->capture_default_str();
  verify_cmd->add_option("--seed", vopts.seed, "RNG seed")->capture_default_str();
  verify_cmd->add_option("--mode", mode_text, "Selftest backend for maps")
      ->capture_default_str()
      ->check(CLI::IsMember({"exact", "float"}));
  verify_cmd->add_option("--tol", vopts.tol, "Float tolerance")->capture_default_str()->check(
      CLI::PositiveNumber);
  verify_cmd->add_option("--bound", vopts.absorb_bound, "Override the absorber bound M (0: from the certificate)")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--exceptional-depth", vopts.exceptional_depth,
                         "Word length for exceptional sets (0: min(depth, 6))")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("-o,--output", common.output, "Report path (default: stdout)");
  add_jobs(verify_cmd, common);
  verify_cmd->callback([&] {
    action = [&]() -> int {
      const Node root = paradox::certificate_from_json(read_json(cert_path));
      vopts.mode = equimaps::parse_mode(mode_text);
      vopts.jobs = resolve_jobs(common.jobs);
      const auto structural = paradox::check(root);
      if (!structural.passed()) {
        Json j{{"schema", "paradox-report/1"},
               {"kind", "verify"},
               {"space", root.space_str()},
               {"check", structural.to_json()},
               {"passed", false}};
        emit(j, common.output, out);
        for (const auto& v : structural.violations) err << "structural: " << v << "\n";
        return kFail;
      }
      const auto report = paradox::verify(root, vopts);
      Json j = report.to_json();
      j["check"] = structural.to_json();
      emit(j, common.output, out);
      for (const auto& n : report.nodes)
        for (const auto& f : n.failures) err << n.path << " " << n.rule << ": " << f << "\n";
      return verdict(report.passed());
    };
  });

  // freeness
  std::string pair_text = "so3-ab";
  int max_len = 6;
  auto* freeness_cmd = app.add_subcommand("freeness", "No nonidentity reduced word evaluates to I");
  freeness_cmd->add_option("--pair", pair_text, "so3-ab, su2-sqrt5 or sp1-sqrt5")->capture_default_str();
  freeness_cmd->add_option("--max-len", max_len, "Longest word")->capture_default_str()->check(CLI::PositiveNumber);
  freeness_cmd->add_option("-o,--output", common.output, "Report path (default: stdout)");
  add_jobs(freeness_cmd, common);
  freeness_cmd->callback([&] {
    action = [&] {
      const auto r = run_freeness(freegroup::parse_pair_name(pair_text), max_len, resolve_jobs(common.jobs));
      emit(freeness_json(r), common.output, out);
      return verdict(r.passed());
    };
  });

  // axes
  auto* axes_cmd = app.add_subcommand("axes", "Rotation axes of the SO(3) pair up to a word length");
  axes_cmd->add_option("--max-len", max_len, "Longest word")->capture_default_str()->check(CLI::PositiveNumber);
  axes_cmd->add_option("-o,--output", common.output, "Output path (default: stdout)");
  axes_cmd->callback([&] {
    action = [&] {
      const auto pair = freegroup::so3_ab();
      const auto set = freegroup::exceptional_set(pair, max_len);
      Json list = Json::array();
      bool fixed = true;
      for (const auto& a : set.axes) {
        fixed = fixed && freegroup::evaluate(a.word, pair) * a.ray == a.ray;
        list.push_back(Json{{"word", word_json(a.word)}, {"ray", vector_json(a.ray)}});
      }
      emit(Json{{"schema", "paradox-axes/1"},
                {"pair", pair.label()},
                {"max_len", max_len},
                {"count", set.size()},
                {"axes", std::move(list)},
                {"passed", fixed}},
           common.output, out);
      return verdict(fixed);
    };
  });

  // absorber
  int bound = 50;
  bool identity = false;
  auto* absorber_cmd = app.add_subcommand("absorber", "g^m(D) and g^n(D) are disjoint for 0 <= m < n <= M");
  absorber_cmd->add_option("--max-len", max_len, "Word length for the exceptional set D")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  absorber_cmd->add_option("--bound", bound, "M")->capture_default_str()->check(CLI::PositiveNumber);
  absorber_cmd->add_flag("--identity", identity, "Use g = I (a negative control)");
  absorber_cmd->add_option("-o,--output", common.output, "Report path (default: stdout)");
  absorber_cmd->callback([&] {
    action = [&] {
      using Ray = spaces::SpherePoint<numeric::QSqrt2>;
      const auto g = identity ? numeric::Matrix<numeric::QSqrt2>::identity(3) : freegroup::s2_absorber<numeric::QSqrt2>();
      std::vector<paradox::AnyPoint> d;
      for (const auto& v : freegroup::exceptional_set(freegroup::so3_ab(), max_len).sphere_points())
        d.push_back(Ray(v));
      const paradox::AbsorbedSet set(std::move(d), g, bound, 0);
      const auto& r = set.report();
      emit(Json{{"schema", "paradox-report/1"},
                {"kind", "absorber"},
                {"absorber", paradox::matrix_json(g)},
                {"max_len", max_len},
                {"bound", r.bound},
                {"set_size", r.set_size},
                {"images_checked", r.images_checked},
                {"near_misses", set.near_misses()},
                {"collision", r.collision ? Json{r.collision->first, r.collision->second} : Json(nullptr)},
                {"passed", r.passed()}},
           common.output, out);
      return verdict(r.passed());
    };
  });

  // orbit
  std::string seed_text;
  int depth = 2;
  auto* orbit_cmd = app.add_subcommand("orbit", "Orbit fragment {w·seed : |w| <= L} with provenance words");
  orbit_cmd->add_option("space", space_text, "Space descriptor")->required();
  orbit_cmd->add_option("--seed-point", seed_text, "Comma separated coordinates (spheres and lines)");
  orbit_cmd->add_option("--depth", depth, "Word length L")->capture_default_str()->check(CLI::Range(0, 10));
  orbit_cmd->add_option("-o,--output", common.output, "Output path (default: stdout)");
  orbit_cmd->callback([&] {
    action = [&]() -> int {
      const auto d = spaces::parse_descriptor(space_text);
      const auto seed = seed_text.empty() ? paradox::default_seed(d) : paradox::parse_seed_point(d, seed_text);
      const auto pair = paradox::standard_pair(pair_for(d)).embed(d.ambient());
      paradox::Fragment f;
      try {
        f = paradox::orbit_fragment(seed, pair, depth);
      } catch (const paradox::FixedSeedError& e) {
        emit(Json{{"schema", "paradox-orbit/1"},
                  {"space", d.str()},
                  {"pair", pair.label},
                  {"depth", depth},
                  {"fixing_word", e.word.str()},
                  {"passed", false}},
             common.output, out);
        err << e.what() << "\n";
        return kFail;
      }
      Json points = Json::array();
      for (const auto& p : f.points())
        points.push_back(Json{{"word", word_json(p.word)}, {"point", paradox::point_to_json(p.point)}});
      Json j{{"schema", "paradox-orbit/1"},
             {"space", d.str()},
             {"pair", pair.label},
             {"depth", depth},
             {"seed", paradox::point_to_json(seed)},
             {"count", f.size()},
             {"points", std::move(points)}};
      bool ok = true;
      if (depth >= 1) {
        const auto r = paradox::check_reassembly(f, pair.image(Letter::a), pair.image(Letter::b));
        j["reassembly"] = r.to_json();
        ok = r.passed();
      }
      j["passed"] = ok;
      emit(j, common.output, out);
      return verdict(ok);
    };
  });

  // maps selftest
  std::size_t samples = 500;
  std::uint64_t seed = 42;
  std::string modes_text = "both";
  double tol = 1e-9;
  auto* maps_cmd = app.add_subcommand("maps", "The catalog of equivariant maps");
  maps_cmd->require_subcommand(1);
  auto* selftest_cmd = maps_cmd->add_subcommand("selftest", "Randomized equivariance checks for every catalog map");
  selftest_cmd->add_option("--samples", samples, "Samples per map and backend")->capture_default_str();
  selftest_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  selftest_cmd->add_option("--mode", modes_text, "exact, float or both")
      ->capture_default_str()
      ->check(CLI::IsMember({"exact", "float", "both"}));
  selftest_cmd->add_option("--tol", tol, "Float tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  selftest_cmd->add_option("-o,--output", common.output, "Report path (default: stdout)");
  add_jobs(selftest_cmd, common);
  selftest_cmd->callback([&] {
    action = [&] {
      std::vector<equimaps::Mode> modes;
      if (modes_text != "float") modes.push_back(equimaps::Mode::Exact);
      if (modes_text != "exact") modes.push_back(equimaps::Mode::Float);
      const auto r = equimaps::run_catalog(samples, seed, modes, tol, resolve_jobs(common.jobs));
      emit(r.to_json(), common.output, out);
      for (const auto& m : r.maps)
        for (const auto& e : m.examples) err << m.map << ": " << e << "\n";
      return verdict(r.passed());
    };
  });

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "paradox: " << e.what() << "\n";
    return kUsage;
  }

  try {
    return action ? action() : kUsage;
  } catch (const ConstraintError& e) {
    err << "paradox: constraint violated: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "paradox: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "paradox: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    err << "paradox: malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "paradox: " << e.what() << "\n";
    return kFail;
  }
}

}  // namespace bt::cli
