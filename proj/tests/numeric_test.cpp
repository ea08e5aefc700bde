#include <gtest/gtest.h>

#include <random>

#include "bt/numeric/linalg.hpp"
#include "test_support.hpp"

using namespace bt::numeric;
using bt::testing::naive_multiply;
using bt::testing::random_matrix;
using bt::testing::random_scalar;

namespace {

const QSqrt2 kThird(Rational(1, 3));
const QSqrt2 kTwoRootTwoThirds(Rational(0), Rational(2, 3));

Matrix<QSqrt2> matrix_a() {
  return {{kThird, -kTwoRootTwoThirds, 0}, {kTwoRootTwoThirds, kThird, 0}, {0, 0, 1}};
}

using C = Complex<QSqrt5>;
using H = Quaternion<QSqrt5>;

}  // namespace

TEST(QuadraticTest, ExactSign) {
  EXPECT_EQ(QSqrt2(Rational(3), Rational(-2)).sign(), 1);   // 3 - 2√2 > 0
  EXPECT_EQ(QSqrt2(Rational(-3), Rational(2)).sign(), -1);
  EXPECT_EQ(QSqrt2(Rational(1), Rational(-1)).sign(), -1);  // 1 - √2
  EXPECT_EQ(QSqrt2(Rational(0), Rational(0)).sign(), 0);
  EXPECT_EQ(QSqrt5(Rational(-2), Rational(1)).sign(), 1);   // √5 - 2
}

TEST(QuadraticTest, InverseTimesSelfIsOne) {
  const QSqrt2 x(Rational(1, 3), Rational(-2, 7));
  EXPECT_EQ(x * x.inverse(), QSqrt2(1));
  EXPECT_THROW(QSqrt2(0).inverse(), std::domain_error);
}

TEST(RingAxiomsTest, RandomSamplesEveryBackend) {
  std::mt19937_64 rng(7);
  auto check = [&]<class S>(S /*tag*/) {
    for (int t = 0; t < 50; ++t) {
      const S x = random_scalar<S>(rng), y = random_scalar<S>(rng), z = random_scalar<S>(rng);
      EXPECT_EQ((x + y) + z, x + (y + z));
      EXPECT_EQ((x * y) * z, x * (y * z));
      EXPECT_EQ(x * (y + z), x * y + x * z);
      EXPECT_EQ((x + y) * z, x * z + y * z);
      EXPECT_EQ(x + S(0), x);
      EXPECT_EQ(x * S(1), x);
      EXPECT_EQ(x - x, S(0));
      EXPECT_EQ(conj(conj(x)), x);
      EXPECT_EQ(conj(S(x * y)), S(conj(y) * conj(x)));
      if (!is_zero(x)) {
        if constexpr (ScalarOps<S>::field) {
          EXPECT_EQ(x * inverse(x), S(1));
          EXPECT_EQ(inverse(x) * x, S(1));
        }
      }
    }
  };
  check(Rational());
  check(QSqrt2());
  check(QSqrt5());
  check(C());
  check(H());
  check(GaussSqrt5());
}

TEST(QuaternionTest, NoncommutativeUnits) {
  const H i = H::unit_i(), j = H::unit_j(), k = H::unit_k();
  EXPECT_EQ(i * j, k);
  EXPECT_EQ(j * i, -k);
  EXPECT_EQ(i * i, H(-1));
  EXPECT_EQ(i * j * k, H(-1));
}

TEST(QuaternionTest, NormIsMultiplicative) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const H p = random_scalar<H>(rng), q = random_scalar<H>(rng);
    EXPECT_EQ((p * q).norm_sq(), p.norm_sq() * q.norm_sq());
  }
}

TEST(GaussSqrt5Test, CanonicalizationPreservesValue) {
  const GaussSqrt5 reducible(5, 10, 0, 25, 1);
  const GaussSqrt5 reduced(1, 2, 0, 5, 0);
  EXPECT_EQ(reducible, reduced);
  EXPECT_EQ(reducible.k(), 0u);
  EXPECT_EQ(reducible.to_field(), reduced.to_field());

  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const GaussSqrt5 x = random_scalar<GaussSqrt5>(rng);
    const GaussSqrt5 scaled(x.a() * 5, x.b() * 5, x.c() * 5, x.d() * 5, x.k() + 1);
    EXPECT_EQ(scaled, x);
    EXPECT_EQ(scaled.to_field(), x.to_field());
  }
}

TEST(GaussSqrt5Test, InverseRootFiveSquaredIsOneFifth) {
  const GaussSqrt5 r = GaussSqrt5::inv_sqrt5();
  EXPECT_EQ(r * r, GaussSqrt5(1, 0, 0, 0, 1));
  EXPECT_EQ((r * r * GaussSqrt5(5)), GaussSqrt5(1));
}

TEST(GaussSqrt5Test, ArithmeticAgreesWithFieldEmbedding) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const GaussSqrt5 x = random_scalar<GaussSqrt5>(rng), y = random_scalar<GaussSqrt5>(rng);
    EXPECT_EQ((x * y).to_field(), x.to_field() * y.to_field());
    EXPECT_EQ((x + y).to_field(), x.to_field() + y.to_field());
    EXPECT_EQ(x.conj().to_field(), x.to_field().conj());
  }
}

TEST(InnerProductTest, Examples) {
  EXPECT_EQ(inner_product(Matrix<Rational>::column({1, 0}), Matrix<Rational>::column({0, 1})), Rational(0));
  const C i = C::unit_i();
  EXPECT_EQ(inner_product(Matrix<C>::column({1, i}), Matrix<C>::column({i, 1})), C(0));
  const auto a1 = matrix_a().col(0);
  EXPECT_EQ(inner_product(a1, a1), QSqrt2(1));
}

TEST(InnerProductTest, SesquilinearAndConjugateSymmetric) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    const auto x = random_matrix<H>(rng, 3, 1), y = random_matrix<H>(rng, 3, 1);
    const H q = random_scalar<H>(rng);
    EXPECT_EQ(inner_product(y, x), conj(inner_product(x, y)));
    EXPECT_EQ(inner_product(x, y.right_scaled(q)), inner_product(x, y) * q);
    EXPECT_EQ(inner_product(x.right_scaled(q), y), conj(q) * inner_product(x, y));
  }
}

TEST(InnerProductTest, DimensionMismatchThrows) {
  EXPECT_THROW(inner_product(Matrix<Rational>::column({1, 0}), Matrix<Rational>::column({1, 0, 0})),
               bt::DimensionError);
}

TEST(DistanceTest, Examples) {
  const auto e1 = Matrix<QSqrt2>::column({1, 0, 0});
  EXPECT_EQ(dist_sq(e1, e1), QSqrt2(0));
  EXPECT_EQ(dist_sq(e1, Matrix<QSqrt2>::column({-1, 0, 0})), QSqrt2(4));
  // (1 - 1/3)² + (2√2/3)² = 4/9 + 8/9
  EXPECT_EQ(dist_sq(e1, matrix_a() * e1), QSqrt2(Rational(4, 3)));
  EXPECT_NEAR(dist(e1, matrix_a() * e1), std::sqrt(4.0 / 3.0), 1e-15);
}

TEST(MatrixTest, OrthogonalityOfA) {
  const auto a = matrix_a();
  EXPECT_EQ(naive_multiply(a.conj_transpose(), a), Matrix<QSqrt2>::identity(3));
  EXPECT_EQ(a.conj_transpose() * a, Matrix<QSqrt2>::identity(3));
}

TEST(MatrixTest, ProductAgreesWithNaiveOverQuaternions) {
  std::mt19937_64 rng(23);
  const auto x = random_matrix<H>(rng, 3, 4), y = random_matrix<H>(rng, 4, 2);
  EXPECT_EQ(x * y, naive_multiply(x, y));
}

TEST(MatrixTest, ConjTransposeIsInvolution) {
  std::mt19937_64 rng(29);
  const auto m = random_matrix<H>(rng, 2, 3);
  EXPECT_EQ(m.conj_transpose().conj_transpose(), m);
  EXPECT_EQ(Matrix<H>::identity(2) * m, m);
}

TEST(MatrixTest, QuaternionInverseBothSides) {
  std::mt19937_64 rng(31);
  const auto m = random_matrix<H>(rng, 3, 3);
  const auto inv = inverse(m);
  EXPECT_EQ(m * inv, Matrix<H>::identity(3));
  EXPECT_EQ(inv * m, Matrix<H>::identity(3));
}

TEST(MatrixTest, SingularAndShapeErrors) {
  const Matrix<Rational> singular{{1, 2}, {2, 4}};
  EXPECT_THROW(inverse(singular), bt::SingularMatrixError);
  EXPECT_THROW(Matrix<Rational>(2, 3) * Matrix<Rational>(2, 3), bt::DimensionError);
}

TEST(KernelTest, Examples) {
  EXPECT_EQ(kernel(Matrix<Rational>(3, 3)).cols(), 3u);
  EXPECT_EQ(kernel(Matrix<Rational>::identity(3)).cols(), 0u);
  const auto k = kernel(matrix_a() - Matrix<QSqrt2>::identity(3));
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_EQ(k, Matrix<QSqrt2>::column({0, 0, 1}));
}

TEST(KernelTest, KernelIsAnnihilatedOverQuaternions) {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 10; ++t) {
    const auto m = random_matrix<H>(rng, 2, 4);
    const auto k = kernel(m);
    EXPECT_EQ(k.cols(), 2u);
    EXPECT_TRUE((m * k).is_zero());
  }
}

TEST(KernelTest, KernelOrthogonalToRowSpaceCommutative) {
  std::mt19937_64 rng(41);
  const auto m = random_matrix<QSqrt2>(rng, 2, 5);
  const auto k = kernel(m);
  ASSERT_EQ(k.cols(), 3u);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 3; ++c) EXPECT_TRUE(is_zero(inner_product(m.block(r, 0, 1, 5).conj_transpose(), k.col(c))));
  EXPECT_EQ(column_space(m).cols(), 2u);
}

TEST(ProjectorTest, Examples) {
  const Matrix<C> e12{{1, 0}, {0, 1}, {0, 0}};
  Matrix<C> expected(3, 3);
  expected(0, 0) = 1;
  expected(1, 1) = 1;
  EXPECT_EQ(projector_of_basis(e12), expected);

  const auto half = projector_of_basis(Matrix<Rational>::column({1, 1}));
  EXPECT_EQ(half, (Matrix<Rational>{{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}}));

  EXPECT_THROW(projector_of_basis(Matrix<Rational>{{1, 2}, {2, 4}}), bt::SingularMatrixError);
}

TEST(ProjectorTest, PropertiesAndBasisIndependence) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 20; ++t) {
    const auto b = random_matrix<H>(rng, 4, 2);
    const auto p = projector_of_basis(b);
    EXPECT_EQ(p * p, p);
    EXPECT_EQ(p.conj_transpose(), p);
    EXPECT_EQ(p * b, b);
    // any invertible change of basis B ↦ BM keeps the span
    const auto m = random_matrix<H>(rng, 2, 2);
    if (rank(m) == 2) EXPECT_EQ(projector_of_basis(b * m), p);
    const H q = random_scalar<H>(rng);
    if (!is_zero(q)) EXPECT_EQ(projector_of_basis(b.right_scaled(q)), p);
  }
}

TEST(CayleyTest, Examples) {
  EXPECT_EQ(cayley_unitary(Matrix<Rational>(3, 3)), Matrix<Rational>::identity(3));
  // I+X = [[1,1],[-1,1]], (I+X)⁻¹ = ½[[1,-1],[1,1]], I-X = [[1,-1],[1,1]]
  const Matrix<Rational> x{{0, 1}, {-1, 0}};
  const auto u = cayley_unitary(x);
  EXPECT_EQ(u, (Matrix<Rational>{{0, -1}, {1, 0}}));
  EXPECT_EQ(naive_multiply(u.conj_transpose(), u), Matrix<Rational>::identity(2));
  EXPECT_THROW(cayley_unitary(Matrix<Rational>{{1, 0}, {0, 0}}), bt::DimensionError);
}

TEST(CayleyTest, QuaternionicUnitary) {
  const H i = H::unit_i(), j = H::unit_j(), k = H::unit_k();
  // X* = -X: diagonal purely imaginary, off-diagonal x₁₂ = -conj(x₂₁)
  const H off = H(1) + j * H(2);
  Matrix<H> x{{i, off}, {-conj(off), k * H(3)}};
  ASSERT_TRUE(is_anti_hermitian(x));
  const auto u = cayley_unitary(x);
  EXPECT_EQ(naive_multiply(u.conj_transpose(), u), Matrix<H>::identity(2));
  EXPECT_TRUE(is_unitary(u));
}

TEST(IsometryTest, DistanceInvariantUnderUnitary) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 20; ++t) {
    auto x = random_matrix<C>(rng, 3, 3);
    x = x - x.conj_transpose();
    const auto g = cayley_unitary(x);
    const auto p = random_matrix<C>(rng, 3, 1), q = random_matrix<C>(rng, 3, 1);
    EXPECT_EQ(dist_sq(g * p, g * q), dist_sq(p, q));
  }
}
