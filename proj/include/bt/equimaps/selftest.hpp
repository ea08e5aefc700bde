#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bt/numeric/scalar_json.hpp"
#include "bt/spaces/descriptor.hpp"

namespace bt::equimaps {

using numeric::Json;
using spaces::Field;
using spaces::SpaceDescriptor;

enum class Mode { Exact, Float };
std::string to_string(Mode m);
Mode parse_mode(const std::string& text);

enum class MapId {
  SphereDrop,
  ProjDrop,
  GrassSlice,
  HyperplaneRestrict,
  Duality,
  FlagToGrass,
  AntipodalProject,
  Stereographic,
};

std::string to_string(MapId id);
MapId parse_map_id(const std::string& text);

/// A catalog map together with the dimensions it is used at.
///
/// - SphereDrop: sphere(n) → sphere(n-1), acting group SO(n)*.
/// - ProjDrop: proj(K,n) → proj(K,n-1), acting group G(n-1,K)*.
/// - GrassSlice: grass(K,n,k) → proj(K,m) with m = n+1-k, acting G(m,K)*.
/// - HyperplaneRestrict: the subset of grass(K,n,k) inside span{e₁..e_m}
///   → grass(K,m,k), acting G(m,K)*.
/// - Duality: grass(K,n,k) → grass(K,n,n-k), acting G(n,K).
/// - FlagToGrass: flag(K;dims) → grass(K,n,d_index), acting G(n,K).
/// - AntipodalProject: sphere(n) → proj(R,n+1), acting SO(n+1).
/// - Stereographic: proj(K,2) → sphere(2 or 4), acting G(2,K) on the source
///   and through induced_rotation on the target.
struct MapSpec {
  MapId id = MapId::Duality;
  Field field = Field::R;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  std::size_t index = 1;
  std::vector<std::size_t> dims;

  static MapSpec sphere_drop(std::size_t n);
  static MapSpec proj_drop(Field f, std::size_t n);
  static MapSpec grass_slice(Field f, std::size_t n, std::size_t k);
  static MapSpec hyperplane_restrict(Field f, std::size_t n, std::size_t k);
  static MapSpec duality(Field f, std::size_t n, std::size_t k);
  static MapSpec flag_to_grass(Field f, std::vector<std::size_t> dims, std::size_t index);
  static MapSpec antipodal_project(std::size_t n);
  static MapSpec stereographic(Field f);

  SpaceDescriptor source() const;
  SpaceDescriptor target() const;
  /// Size of the acting block.
  std::size_t acting_size() const;
  /// True for maps only available in floating point.
  bool float_only() const { return id == MapId::Stereographic; }
  std::string label() const;

  Json to_json() const;
  static MapSpec from_json(const Json& j);
};

struct SelftestReport {
  std::string map;
  std::string backend;  ///< "exact" or "float"
  std::uint64_t samples = 0;
  std::uint64_t checked = 0;
  std::uint64_t filtered = 0;   ///< samples outside the domain
  std::uint64_t gap_cases = 0;  ///< grass_slice inputs with dim(V ∩ H) > 1
  std::uint64_t failures = 0;
  double max_deviation = 0.0;
  std::vector<std::string> examples;  ///< first few failures
  bool passed() const { return failures == 0 && checked > 0; }
  Json to_json() const;
};

/// Draws `samples` random source points (some outside the domain on purpose)
/// and random acting-group elements g, and compares f(g·x) with g·f(x).
/// Exact backends must agree exactly; float ones within `tol`. With
/// `corrupt`, f is composed with a fixed target rotation that does not
/// commute with the acting group, and the report is expected to fail.
SelftestReport selftest(const MapSpec& spec, std::size_t samples, std::uint64_t seed, Mode mode,
                        double tol = 1e-9, bool corrupt = false);

/// Every catalog map at representative dimensions, over each field it
/// supports.
std::vector<MapSpec> catalog();

struct CatalogReport {
  std::vector<SelftestReport> maps;
  SelftestReport negative_control;
  std::uint64_t total_checks() const;
  /// All maps pass and the corrupted control fails.
  bool passed() const;
  Json to_json() const;
};

/// selftest for each catalog entry in each requested mode; float-only maps
/// run in float regardless. Results do not depend on `jobs`.
CatalogReport run_catalog(std::size_t samples, std::uint64_t seed, const std::vector<Mode>& modes,
                          double tol = 1e-9, unsigned jobs = 1);

}  // namespace bt::equimaps
