#include <gtest/gtest.h>

#include <cmath>

#include "bt/equimaps/maps.hpp"
#include "bt/equimaps/selftest.hpp"
#include "bt/equimaps/stereographic.hpp"
#include "bt/freegroup/pair.hpp"
#include "bt/spaces/random.hpp"

namespace bt::equimaps {
namespace {

using numeric::Complex;
using numeric::QSqrt2;
using numeric::QSqrt5;
using numeric::Quaternion;
using numeric::Rational;
using CQ = Complex<QSqrt5>;
using HQ = Quaternion<QSqrt5>;
using CD = Complex<double>;
using HD = Quaternion<double>;

template <class S>
Matrix<S> col(std::initializer_list<S> xs) {
  return Matrix<S>::column(std::vector<S>(xs));
}
template <class S>
Matrix<S> unit(std::size_t n, std::size_t i) {
  Matrix<S> v(n, 1);
  v[i] = S(1);
  return v;
}
template <class S>
Subspace<S> span(std::initializer_list<Matrix<S>> vs) {
  const std::size_t n = vs.begin()->rows();
  Matrix<S> b(n, vs.size());
  std::size_t c = 0;
  for (const auto& v : vs) {
    for (std::size_t i = 0; i < n; ++i) b(i, c) = v[i];
    ++c;
  }
  return Subspace<S>::from_basis(b);
}

TEST(SphereDrop, Examples) {
  const QSqrt2 z(0);
  const SpherePoint<QSqrt2> x(col<QSqrt2>({QSqrt2(Rational(3, 5)), z, QSqrt2(Rational(4, 5))}));
  EXPECT_EQ(sphere_drop(x).vector(), col<QSqrt2>({QSqrt2(1), z}));
  EXPECT_THROW(sphere_drop(SpherePoint<QSqrt2>(unit<QSqrt2>(3, 2))), DomainError);
  EXPECT_THROW(sphere_drop(SpherePoint<QSqrt2>(Matrix<QSqrt2>(-unit<QSqrt2>(3, 2)))), DomainError);
}

TEST(SphereDrop, ScaleInvariantAndEquivariant) {
  Rng rng(1);
  for (int t = 0; t < 30; ++t) {
    const auto v = spaces::random_vector<QSqrt2>(4, rng);
    if (v.block(0, 0, 3, 1).is_zero()) continue;
    const QSqrt2 lambda(Rational(1 + static_cast<int>(rng() % 7), 3));
    EXPECT_EQ(sphere_drop(SpherePoint<QSqrt2>(v)), sphere_drop(SpherePoint<QSqrt2>(v.right_scaled(lambda))));
    const auto h = spaces::random_unitary<QSqrt2>(3, rng);
    const SpherePoint<QSqrt2> x(v);
    EXPECT_EQ(sphere_drop(spaces::act(spaces::block_embed(h, 4), x)), spaces::act(h, sphere_drop(x)));
  }
}

TEST(ProjDrop, Examples) {
  EXPECT_THROW(proj_drop(Subspace<CQ>::line(unit<CQ>(3, 2))), DomainError);
  const auto v = col<CQ>({CQ(2), CQ::unit_i(), CQ(0)});
  EXPECT_EQ(proj_drop(Subspace<CQ>::line(v)), Subspace<CQ>::line(col<CQ>({CQ(2), CQ::unit_i()})));
  const auto w = col<CQ>({CQ(1), CQ::unit_i(), CQ(1)});
  EXPECT_EQ(proj_drop(Subspace<CQ>::line(w)), Subspace<CQ>::line(col<CQ>({CQ(1), CQ::unit_i()})));
}

TEST(GrassSlice, Examples) {
  using S = QSqrt2;
  const auto e = [](std::size_t i, std::size_t n) { return unit<S>(n, i); };
  const auto v = span<S>({e(0, 4), Matrix<S>(e(1, 4) + e(3, 4))});
  EXPECT_EQ(grass_slice(v, 3), Subspace<S>::line(e(0, 3)));
  EXPECT_THROW(grass_slice(span<S>({e(0, 4), e(1, 4)}), 3), DomainError);
  try {
    grass_slice(span<S>({e(0, 4), e(1, 4)}), 3);
  } catch (const GapCaseError&) {
    ADD_FAILURE() << "a subspace of H is not a gap case";
  } catch (const DomainError&) {
  }
  // n0 = 5, k = 3, m = 3: V ∩ H = span{e1, e2}.
  const auto gap = span<S>({e(0, 5), e(1, 5), e(3, 5)});
  EXPECT_THROW(grass_slice(gap, 3), GapCaseError);
}

template <class S>
void check_slice_containment(std::size_t n, std::size_t k, Rng& rng) {
  const std::size_t m = n + 1 - k;
  for (int t = 0; t < 15; ++t) {
    const auto v = spaces::random_subspace<S>(n, k, rng);
    const auto line = grass_slice(v, m);
    // Embed the output back in Kⁿ.
    const auto out = Subspace<S>::from_projector(spaces::block_embed(line.projector(), n), 1);
    Matrix<S> pad = spaces::block_embed(line.projector(), n);
    for (std::size_t i = m; i < n; ++i) pad(i, i) = S(0);
    const auto back = Subspace<S>::from_projector(pad, 1);
    EXPECT_TRUE(v.contains(back));
    EXPECT_TRUE(Subspace<S>::coordinate(n, m).contains(back));
    (void)out;
  }
}

TEST(GrassSlice, OutputLiesInVAndH) {
  Rng rng(2);
  check_slice_containment<QSqrt2>(4, 2, rng);
  check_slice_containment<CQ>(4, 2, rng);
  check_slice_containment<HQ>(4, 2, rng);
  check_slice_containment<QSqrt2>(5, 3, rng);
}

TEST(HyperplaneRestrict, Identification) {
  using S = CQ;
  const auto v = span<S>({unit<S>(4, 0), Matrix<S>(unit<S>(4, 1) + unit<S>(4, 2))});
  const auto r = hyperplane_restrict(v, 3);
  EXPECT_EQ(r, span<S>({unit<S>(3, 0), Matrix<S>(unit<S>(3, 1) + unit<S>(3, 2))}));
  EXPECT_THROW(hyperplane_restrict(span<S>({unit<S>(4, 3)}), 3), DomainError);
}

TEST(Duality, Examples) {
  using S = QSqrt2;
  EXPECT_EQ(duality(Subspace<S>::coordinate(3, 2)), Subspace<S>::line(unit<S>(3, 2)));
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto v = spaces::random_subspace<HQ>(3, 1 + rng() % 2, rng);
    EXPECT_EQ(duality(duality(v)), v);
    EXPECT_EQ(duality(v).dim(), 3 - v.dim());
    const auto g = spaces::random_unitary<HQ>(3, rng);
    EXPECT_EQ(duality(spaces::act(g, v)), spaces::act(g, duality(v)));
  }
}

TEST(Stereographic, Examples) {
  const auto line = [](CQ x, CQ y) { return Subspace<CQ>::line(col<CQ>({x, y})); };
  const QSqrt5 z(0), o(1);
  EXPECT_EQ(stereographic(line(CQ(0), CQ(1))).vector(), col<QSqrt5>({z, z, QSqrt5(-1)}));
  EXPECT_EQ(stereographic(line(CQ(1), CQ(1))).vector(), col<QSqrt5>({o, z, z}));
  EXPECT_EQ(stereographic(line(CQ(1), CQ(0))).vector(), col<QSqrt5>({z, z, o}));
  EXPECT_EQ(stereographic_vector(Subspace<HQ>::line(col<HQ>({HQ::unit_j(), HQ(1)}))),
            col<QSqrt5>({z, z, o, z, z}));
  // Chart formula at q = 2i: (2q, |q|² - 1)/(|q|² + 1) = (0, 4/5, 3/5).
  EXPECT_EQ(stereographic_vector(line(CQ(QSqrt5(0), QSqrt5(2)), CQ(1))),
            col<QSqrt5>({z, QSqrt5(Rational(4, 5)), QSqrt5(Rational(3, 5))}));
}

TEST(Stereographic, InverseChartRoundTrip) {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto l = spaces::random_line<CD>(2, rng);
    EXPECT_TRUE(inverse_stereographic<CD>(stereographic(l).vector()).approx_equals(l, 1e-9));
    const auto h = spaces::random_line<HD>(2, rng);
    EXPECT_TRUE(inverse_stereographic<HD>(stereographic(h).vector()).approx_equals(h, 1e-9));
  }
  const auto north = inverse_stereographic<CD>(Matrix<double>::column({0, 0, 1}));
  EXPECT_TRUE(north.approx_equals(Subspace<CD>::line(Matrix<CD>::column({CD(1), CD(0)})), 1e-12));
}

Matrix<CD> su2_b_float() { return numeric::to_float(freegroup::su2_sqrt5().b()); }

TEST(InducedRotation, Examples) {
  EXPECT_LE(numeric::max_abs_diff(induced_rotation(Matrix<CD>::identity(2)), Matrix<double>::identity(3)), 1e-12);
  const auto r = induced_rotation(su2_b_float());
  EXPECT_TRUE(numeric::is_unitary(r, 1e-9));
  EXPECT_NEAR(r(0, 0) + r(1, 1) + r(2, 2), -0.2, 1e-9);
  const CD lambda(0.6, 0.8);
  const Matrix<CD> scalar{{lambda, CD(0)}, {CD(0), lambda}};
  EXPECT_LE(numeric::max_abs_diff(induced_rotation(scalar), Matrix<double>::identity(3)), 1e-12);
}

TEST(InducedRotation, ExactTraceForSu2Generator) {
  const auto ub = numeric::convert<CQ>(freegroup::su2_sqrt5().b(), [](const auto& x) { return x.to_field(); });
  const auto r = induced_rotation(ub);
  EXPECT_EQ(r(0, 0) + r(1, 1) + r(2, 2), QSqrt5(Rational(-1, 5)));
  EXPECT_TRUE(numeric::is_unitary(r));
}

TEST(InducedRotation, TraceFormulaOracle) {
  // For u ∈ U(2) the rotation angle θ satisfies 1 + 2cos θ = |tr u|²/|det u| - 1.
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const auto u = spaces::random_unitary<CD>(2, rng);
    const auto r = induced_rotation(u);
    const CD tr = u(0, 0) + u(1, 1);
    const CD det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    const double expected = tr.norm_sq() / std::sqrt(det.norm_sq()) - 1.0;
    EXPECT_NEAR(r(0, 0) + r(1, 1) + r(2, 2), expected, 1e-9);
  }
}

TEST(InducedRotation, Homomorphism) {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto g = spaces::random_unitary<CD>(2, rng), h = spaces::random_unitary<CD>(2, rng);
    EXPECT_LE(numeric::max_abs_diff(induced_rotation(Matrix<CD>(g * h)),
                                    Matrix<double>(induced_rotation(g) * induced_rotation(h))),
              1e-8);
  }
  for (int t = 0; t < 50; ++t) {
    const auto g = spaces::random_unitary<HD>(2, rng), h = spaces::random_unitary<HD>(2, rng);
    const auto rg = induced_rotation(g);
    EXPECT_TRUE(numeric::is_unitary(rg, 1e-9));
    EXPECT_LE(numeric::max_abs_diff(induced_rotation(Matrix<HD>(g * h)), Matrix<double>(rg * induced_rotation(h))),
              1e-8);
  }
}

TEST(InducedRotation, RejectsNonIsometry) {
  const Matrix<CD> stretch{{CD(2), CD(0)}, {CD(0), CD(1)}};
  EXPECT_THROW(induced_rotation(stretch), InconsistentSolveError);
}

TEST(Selftest, DualityExactIsPerfect) {
  const auto r = selftest(MapSpec::duality(Field::R, 4, 2), 1000, 1, Mode::Exact);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.checked, 1000u);
  EXPECT_EQ(r.max_deviation, 0.0);
  EXPECT_EQ(r.backend, "exact");
}

TEST(Selftest, SphereDropFiltersPoles) {
  const auto r = selftest(MapSpec::sphere_drop(3), 200, 3, Mode::Exact);
  EXPECT_TRUE(r.passed());
  EXPECT_GT(r.filtered, 0u);
  EXPECT_EQ(r.checked + r.filtered, 200u);
}

TEST(Selftest, GapCasesAreCounted) {
  const auto r = selftest(MapSpec::grass_slice(Field::R, 5, 3), 200, 4, Mode::Exact);
  EXPECT_TRUE(r.passed());
  EXPECT_GT(r.gap_cases, 0u);
}

TEST(Selftest, CorruptedMapFails) {
  const auto r = selftest(MapSpec::duality(Field::R, 4, 2), 50, 5, Mode::Exact, 1e-9, true);
  EXPECT_FALSE(r.passed());
  EXPECT_GT(r.failures, 0u);
  const auto s = selftest(MapSpec::stereographic(Field::C), 50, 5, Mode::Float, 1e-9, true);
  EXPECT_FALSE(s.passed());
}

TEST(Selftest, StereographicRunsInFloat) {
  const auto r = selftest(MapSpec::stereographic(Field::H), 100, 6, Mode::Exact);
  EXPECT_EQ(r.backend, "float");
  EXPECT_TRUE(r.passed());
  EXPECT_LE(r.max_deviation, 1e-9);
}

TEST(Selftest, CatalogPassesInBothModes) {
  const auto report = run_catalog(20, 9, {Mode::Exact, Mode::Float}, 1e-9, 2);
  for (const auto& r : report.maps) EXPECT_TRUE(r.passed()) << r.map << " " << r.backend << " "
                                                            << (r.examples.empty() ? "" : r.examples[0]);
  EXPECT_TRUE(report.passed());
  const auto again = run_catalog(20, 9, {Mode::Exact, Mode::Float}, 1e-9, 1);
  EXPECT_EQ(report.to_json().dump(), again.to_json().dump());
}

TEST(MapSpec, JsonRoundTrip) {
  for (const auto& spec : catalog()) {
    const auto back = MapSpec::from_json(spec.to_json());
    EXPECT_EQ(back.label(), spec.label());
  }
}

}  // namespace
}  // namespace bt::equimaps
