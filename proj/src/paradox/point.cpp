#include "bt/paradox/point.hpp"

#include <cmath>
#include <sstream>

#include "bt/equimaps/maps.hpp"
#include "bt/equimaps/stereographic.hpp"
#include "bt/numeric/rational.hpp"

namespace bt::paradox {

namespace {

template <class S>
Json subspace_json(const spaces::Subspace<S>& v) {
  return Json{{"dim", v.dim()}, {"projector", numeric::matrix_to_json(v.projector())}};
}

template <class S>
S twist(int t) {
  using numeric::ratio;
  if constexpr (std::is_same_v<S, ComplexScalar>) {
    return S(numeric::from_rational<numeric::QSqrt5>(ratio(1, 1)), numeric::from_rational<numeric::QSqrt5>(ratio(t, 2)));
  } else if constexpr (std::is_same_v<S, QuatScalar>) {
    auto q = [](long p, long r) { return numeric::from_rational<numeric::QSqrt5>(ratio(p, r)); };
    return S(q(1, 1), q(t, 2), q(t + 1, 3), q(1, t + 1));
  } else {
    return S(1);
  }
}

template <class S>
Matrix<S> cayley_reference(std::size_t n, int shift = 0) {
  Matrix<S> x(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const long p = static_cast<long>(i + 2 * j + 1) + shift * static_cast<long>(i + 1);
      S v = numeric::from_rational<S>(numeric::ratio(p, 3 + 2 * shift));
      // Shifted transforms get non-real entries, so that they move real
      // lines off the real locus.
      if (shift > 0) v = v * twist<S>(static_cast<int>(i + j) + shift);
      x(i, j) = v;
      x(j, i) = -numeric::ScalarOps<S>::conj(v);
    }
  return numeric::cayley_unitary(x);
}

template <class S>
Matrix<S> counting_vector(std::size_t n) {
  Matrix<S> v(n, 1);
  for (std::size_t i = 0; i < n; ++i) v[i] = S(static_cast<long>(i + 1));
  return v;
}

/// A ℚ(√5) vector with rational entries, moved to ℚ(√2).
Matrix<RealScalar> to_real_backend(const Matrix<numeric::QSqrt5>& v) {
  Matrix<RealScalar> out(v.rows(), v.cols());
  for (std::size_t i = 0; i < v.data().size(); ++i) {
    if (sgn(v.data()[i].radical_part()) != 0)
      throw DomainError("stereographic image has irrational coordinates; no exact sphere point");
    out(i / v.cols(), i % v.cols()) = RealScalar(v.data()[i].rational_part());
  }
  return out;
}

template <class S>
AnyPoint apply_to_subspace(const MapSpec& spec, const spaces::Subspace<S>& v) {
  using equimaps::MapId;
  switch (spec.id) {
    case MapId::ProjDrop: return equimaps::proj_drop(v);
    case MapId::GrassSlice: return equimaps::grass_slice(v, spec.m);
    case MapId::HyperplaneRestrict: return equimaps::hyperplane_restrict(v, spec.m);
    case MapId::Duality: return equimaps::duality(v);
    case MapId::Stereographic:
      if constexpr (std::is_same_v<S, RealScalar>) {
        break;
      } else {
        return spaces::SpherePoint<RealScalar>(to_real_backend(equimaps::stereographic_vector(v)));
      }
    default: break;
  }
  throw DimensionError("map " + equimaps::to_string(spec.id) + " does not take a subspace over this field");
}

}  // namespace

std::string key(const AnyPoint& p) {
  return std::visit([](const auto& x) { return x.key(); }, p);
}

AnyPoint act(const AnyMatrix& g, const AnyPoint& p) {
  return std::visit(
      [](const auto& m, const auto& x) -> AnyPoint {
        using M = std::decay_t<decltype(m)>;
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<typename M::Scalar, typename X::Scalar>) {
          return spaces::act(m, x);
        } else {
          throw DimensionError("group element and point use different fields");
        }
      },
      g, p);
}

AnyPoint apply_map(const MapSpec& spec, const AnyPoint& p) {
  using equimaps::MapId;
  return std::visit(
      [&](const auto& x) -> AnyPoint {
        using X = std::decay_t<decltype(x)>;
        using S = typename X::Scalar;
        if constexpr (std::is_same_v<X, spaces::SpherePoint<S>>) {
          if (spec.id == MapId::SphereDrop) return equimaps::sphere_drop(x);
          if (spec.id == MapId::AntipodalProject) return spaces::antipodal_project(x);
        } else if constexpr (std::is_same_v<X, spaces::FlagPoint<S>>) {
          if (spec.id == MapId::FlagToGrass) return equimaps::flag_to_grass(x, spec.index);
        } else {
          return apply_to_subspace(spec, x);
        }
        throw DimensionError("map " + equimaps::to_string(spec.id) + " does not take this kind of point");
      },
      p);
}

Json point_to_json(const AnyPoint& p) {
  return std::visit(
      [](const auto& x) -> Json {
        using X = std::decay_t<decltype(x)>;
        using S = typename X::Scalar;
        if constexpr (std::is_same_v<X, spaces::SpherePoint<S>>) {
          return Json{{"type", "sphere"}, {"ray", numeric::matrix_to_json(x.vector())}};
        } else if constexpr (std::is_same_v<X, spaces::FlagPoint<S>>) {
          Json comps = Json::array();
          for (const auto& c : x.components()) comps.push_back(subspace_json(c));
          return Json{{"type", "flag"}, {"components", std::move(comps)}};
        } else {
          Json j = subspace_json(x);
          j["type"] = "subspace";
          return j;
        }
      },
      p);
}

std::size_t rows(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return x.rows(); }, m);
}

AnyMatrix identity_like(const AnyMatrix& m, std::size_t n) {
  return std::visit([n](const auto& x) -> AnyMatrix { return std::decay_t<decltype(x)>::identity(n); }, m);
}

AnyMatrix embed(const AnyMatrix& m, std::size_t n) {
  return std::visit([n](const auto& x) -> AnyMatrix { return spaces::block_embed(x, n); }, m);
}

bool is_unitary(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return numeric::is_unitary(x); }, m);
}

AnyMatrix multiply(const AnyMatrix& a, const AnyMatrix& b) {
  return std::visit(
      [](const auto& x, const auto& y) -> AnyMatrix {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, std::decay_t<decltype(y)>>) {
          return X(x * y);
        } else {
          throw DimensionError("matrices use different fields");
        }
      },
      a, b);
}

namespace {

template <class F>
void append_components(const Matrix<F>& m, std::vector<double>& out) {
  for (const auto& x : m.data())
    for (double c : numeric::ScalarOps<F>::components(x)) out.push_back(c);
}

}  // namespace

std::vector<std::vector<double>> float_orbit(const AnyMatrix& g, const AnyPoint& p, int count) {
  return std::visit(
      [count](const auto& m, const auto& x) {
        using S = typename std::decay_t<decltype(m)>::Scalar;
        using X = std::decay_t<decltype(x)>;
        using F = numeric::FloatOf<S>;
        std::vector<std::vector<double>> out;
        if constexpr (!std::is_same_v<S, typename X::Scalar>) {
          throw DimensionError("group element and point use different fields");
        } else {
          const Matrix<F> gf = numeric::to_float(m);
          const Matrix<F> gf_t = gf.conj_transpose();
          std::vector<Matrix<F>> cur;
          if constexpr (std::is_same_v<X, spaces::SpherePoint<S>>) {
            Matrix<F> v = numeric::to_float(x.vector());
            double norm = 0;
            for (const auto& c : v.data()) norm += c * c;
            cur.push_back(v.right_scaled(1.0 / std::sqrt(norm)));
          } else if constexpr (std::is_same_v<X, spaces::Subspace<S>>) {
            cur.push_back(numeric::to_float(x.projector()));
          } else {
            for (const auto& c : x.components()) cur.push_back(numeric::to_float(c.projector()));
          }
          const bool vector = std::is_same_v<X, spaces::SpherePoint<S>>;
          for (int k = 0; k <= count; ++k) {
            if (k > 0)
              for (auto& c : cur) c = vector ? Matrix<F>(gf * c) : Matrix<F>(gf * c * gf_t);
            std::vector<double> coords;
            for (const auto& c : cur) append_components(c, coords);
            out.push_back(std::move(coords));
          }
        }
        return out;
      },
      g, p);
}

bool is_block_embedded(const AnyMatrix& m, std::size_t block) {
  return std::visit(
      [block](const auto& x) {
        using S = typename std::decay_t<decltype(x)>::Scalar;
        if (!x.is_square() || block > x.rows()) return false;
        for (std::size_t r = 0; r < x.rows(); ++r)
          for (std::size_t c = 0; c < x.cols(); ++c) {
            if (r < block && c < block) continue;
            const S expected = r == c ? S(1) : S(0);
            if (!(x(r, c) == expected)) return false;
          }
        return true;
      },
      m);
}

Field field_of(const AnyMatrix& m) {
  switch (m.index()) {
    case 0: return Field::R;
    case 1: return Field::C;
    default: return Field::H;
  }
}

Json matrix_json(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return numeric::matrix_to_json(x); }, m);
}

AnyMatrix matrix_from_json(const Json& j, Field f) {
  switch (f) {
    case Field::R: return numeric::matrix_from_json<RealScalar>(j);
    case Field::C: return numeric::matrix_from_json<ComplexScalar>(j);
    case Field::H: return numeric::matrix_from_json<QuatScalar>(j);
  }
  throw ParseError("unknown field");
}

ActingPair ActingPair::embed(std::size_t n) const {
  ActingPair out = *this;
  for (auto& m : out.images) m = paradox::embed(m, n);
  if (n != native_dim) {
    const auto star = label.find('*');
    out.label = label.substr(0, star) + "*" + std::to_string(n);
  }
  return out;
}

ActingPair ActingPair::from_generators(std::string label, const AnyMatrix& a, const AnyMatrix& b) {
  ActingPair out;
  out.label = std::move(label);
  out.native_dim = rows(a);
  auto ct = [](const AnyMatrix& m) {
    return std::visit([](const auto& x) -> AnyMatrix { return x.conj_transpose(); }, m);
  };
  out.images = {a, b, ct(a), ct(b)};
  return out;
}

Field pair_field(freegroup::PairName name) {
  switch (name) {
    case freegroup::PairName::SO3_AB: return Field::R;
    case freegroup::PairName::SU2_SQRT5: return Field::C;
    case freegroup::PairName::SP1_SQRT5: return Field::H;
  }
  return Field::R;
}

ActingPair standard_pair(freegroup::PairName name) {
  const std::string label = freegroup::to_string(name);
  switch (name) {
    case freegroup::PairName::SO3_AB: {
      const auto p = freegroup::so3_ab();
      return ActingPair::from_generators(label, p.a(), p.b());
    }
    case freegroup::PairName::SU2_SQRT5: {
      const auto p = freegroup::su2_sqrt5();
      auto conv = [](const numeric::GaussSqrt5& z) { return z.to_field(); };
      return ActingPair::from_generators(label, numeric::convert<ComplexScalar>(p.a(), conv),
                                         numeric::convert<ComplexScalar>(p.b(), conv));
    }
    case freegroup::PairName::SP1_SQRT5: {
      const auto p = freegroup::sp1_sqrt5();
      return ActingPair::from_generators(label, p.a(), p.b());
    }
  }
  throw ParseError("unknown pair");
}

AnyPoint apply_word(const ActingPair& pair, const Word& w, const AnyPoint& p) {
  AnyPoint out = p;
  for (std::size_t i = w.size(); i-- > 0;) out = act(pair.image(w[i]), out);
  return out;
}

AnyMatrix reference_rotation(Field f, std::size_t n) {
  switch (f) {
    case Field::R: return cayley_reference<RealScalar>(n);
    case Field::C: return cayley_reference<ComplexScalar>(n);
    case Field::H: return cayley_reference<QuatScalar>(n);
  }
  throw ParseError("unknown field");
}

namespace {

template <class S>
AnyPoint seed_over(const SpaceDescriptor& d) {
  using Kind = SpaceDescriptor::Kind;
  switch (d.kind) {
    case Kind::Projective: return spaces::Subspace<S>::line(counting_vector<S>(d.n));
    case Kind::Grassmann:
      if (d.k == 1) return spaces::Subspace<S>::line(counting_vector<S>(d.n));
      return spaces::act(cayley_reference<S>(d.n), spaces::Subspace<S>::coordinate(d.n, d.k));
    case Kind::Flag: return spaces::FlagPoint<S>::from_basis(cayley_reference<S>(d.n), d.dims);
    case Kind::Sphere: break;
  }
  throw DimensionError("no seed for " + d.str());
}

template <class S>
AnyPoint hyperplane_seed_over(const SpaceDescriptor& d, std::size_t m) {
  const Matrix<S> g = spaces::block_embed(cayley_reference<S>(m), d.n);
  return spaces::act(g, spaces::Subspace<S>::coordinate(d.n, d.k));
}

}  // namespace

AnyPoint default_seed(const SpaceDescriptor& d) {
  if (d.kind == SpaceDescriptor::Kind::Sphere) return spaces::SpherePoint<RealScalar>(counting_vector<RealScalar>(d.n + 1));
  switch (d.field) {
    case Field::R: return seed_over<RealScalar>(d);
    case Field::C: return seed_over<ComplexScalar>(d);
    case Field::H: return seed_over<QuatScalar>(d);
  }
  throw ParseError("unknown field");
}

AnyPoint seed_candidate(const SpaceDescriptor& d, int attempt) {
  const AnyPoint base = default_seed(d);
  if (attempt == 0) return base;
  const std::size_t n = d.ambient();
  const Field f = d.kind == SpaceDescriptor::Kind::Sphere ? Field::R : d.field;
  switch (f) {
    case Field::R: return act(cayley_reference<RealScalar>(n, attempt), base);
    case Field::C: return act(cayley_reference<ComplexScalar>(n, attempt), base);
    case Field::H: return act(cayley_reference<QuatScalar>(n, attempt), base);
  }
  throw ParseError("unknown field");
}

AnyPoint hyperplane_seed(const SpaceDescriptor& d, std::size_t m) {
  if (d.kind != SpaceDescriptor::Kind::Grassmann || m > d.n || d.k > m)
    throw DimensionError("hyperplane seed needs grass(K,n,k) with k <= m <= n");
  switch (d.field) {
    case Field::R: return hyperplane_seed_over<RealScalar>(d, m);
    case Field::C: return hyperplane_seed_over<ComplexScalar>(d, m);
    case Field::H: return hyperplane_seed_over<QuatScalar>(d, m);
  }
  throw ParseError("unknown field");
}

AnyPoint parse_seed_point(const SpaceDescriptor& d, const std::string& text) {
  std::vector<numeric::Rational> entries;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) entries.push_back(numeric::parse_rational(item));
  if (entries.size() != d.ambient())
    throw ParseError("seed point needs " + std::to_string(d.ambient()) + " coordinates, got " +
                     std::to_string(entries.size()));
  auto vec = [&entries]<class S>(S*) {
    Matrix<S> v(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) v[i] = numeric::from_rational<S>(entries[i]);
    return v;
  };
  using Kind = SpaceDescriptor::Kind;
  if (d.kind == Kind::Sphere) return spaces::SpherePoint<RealScalar>(vec(static_cast<RealScalar*>(nullptr)));
  const bool line = d.kind == Kind::Projective || (d.kind == Kind::Grassmann && d.k == 1);
  if (!line) throw ConstraintError("seed points can only be given for spheres and projective spaces");
  switch (d.field) {
    case Field::R: return spaces::Subspace<RealScalar>::line(vec(static_cast<RealScalar*>(nullptr)));
    case Field::C: return spaces::Subspace<ComplexScalar>::line(vec(static_cast<ComplexScalar*>(nullptr)));
    case Field::H: return spaces::Subspace<QuatScalar>::line(vec(static_cast<QuatScalar*>(nullptr)));
  }
  throw ParseError("unknown field");
}

}  // namespace bt::paradox
