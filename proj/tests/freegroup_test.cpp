#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "bt/freegroup/absorber.hpp"
#include "bt/freegroup/axes.hpp"
#include "bt/freegroup/freeness.hpp"
#include "test_support.hpp"

namespace bt::freegroup {
namespace {

using numeric::Rational;
using testing::naive_multiply;

// Cancellation in a random order, one adjacent pair at a time.
std::vector<Letter> reduce_randomly(std::vector<Letter> seq, std::mt19937_64& rng) {
  for (;;) {
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
      if (seq[i + 1] == inverse(seq[i])) spots.push_back(i);
    if (spots.empty()) return seq;
    const std::size_t i = spots[rng() % spots.size()];
    seq.erase(seq.begin() + static_cast<long>(i), seq.begin() + static_cast<long>(i) + 2);
  }
}

bool is_reduced(const std::vector<Letter>& seq) {
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (seq[i + 1] == inverse(seq[i])) return false;
  return true;
}

// All reduced sequences of length ≤ L, by filtering every sequence over 4 letters.
std::set<std::string> brute_force_ball(int L) {
  std::set<std::string> out{""};
  std::vector<std::vector<Letter>> level{{}};
  for (int n = 1; n <= L; ++n) {
    std::vector<std::vector<Letter>> next;
    for (const auto& s : level)
      for (Letter x : kLetters) {
        auto t = s;
        t.push_back(x);
        next.push_back(t);
      }
    level = next;
    for (const auto& s : level)
      if (is_reduced(s)) {
        std::string str;
        for (Letter x : s) str.push_back(to_char(x));
        out.insert(str);
      }
  }
  return out;
}

TEST(Word, ReduceExamples) {
  EXPECT_EQ(Word::parse("abBA").str(), "");
  EXPECT_EQ(Word::parse("abBa").str(), "aa");
  EXPECT_EQ(Word::parse("Aaa").str(), "a");
  EXPECT_TRUE(Word::parse("e").empty());
  EXPECT_THROW(Word::parse("abc"), ParseError);
}

TEST(Word, ReduceIsConfluentAndIdempotent) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Letter> seq(rng() % 20);
    for (auto& x : seq) x = kLetters[rng() % 2 == 0 ? rng() % 4 : (trial % 2)];
    for (std::size_t i = 0; i + 1 < seq.size(); i += 3)
      if (rng() % 2) seq[i + 1] = inverse(seq[i]);
    const Word w = Word::reduce(seq);
    EXPECT_EQ(w.letters(), reduce_randomly(seq, rng));
    EXPECT_EQ(Word::reduce(w.letters()), w);
    EXPECT_TRUE(is_reduced(w.letters()));
  }
}

TEST(Word, InverseAndProduct) {
  const Word w = Word::parse("abAAB");
  EXPECT_EQ(w.inverse().str(), "baaBA");
  EXPECT_TRUE((w * w.inverse()).empty());
  EXPECT_EQ((Word::parse("ab") * Word::parse("Ba")).str(), "aa");
  EXPECT_EQ(w.prepend(Letter::a_inv).str(), "bAAB");
  EXPECT_EQ(w.prepend(Letter::b).str(), "babAAB");
}

TEST(Word, ShortlexOrder) {
  EXPECT_LT(Word::parse("B"), Word::parse("aa"));
  EXPECT_LT(Word::parse("ab"), Word::parse("aA") * Word::parse("ab") * Word::parse("A"));  // "ab" vs "abA"
  EXPECT_LT(Word::parse("ba"), Word::parse("bA"));
  EXPECT_LT(Word(), Word::parse("a"));
}

TEST(Ball, SmallBallIsExact) {
  const auto ball = enumerate_ball(1);
  std::vector<std::string> strs;
  for (const auto& w : ball) strs.push_back(w.str());
  EXPECT_EQ(strs, (std::vector<std::string>{"", "a", "b", "A", "B"}));
}

TEST(Ball, MatchesBruteForce) {
  for (int L = 0; L <= 5; ++L) {
    const auto ball = enumerate_ball(L);
    std::set<std::string> got;
    for (const auto& w : ball) got.insert(w.str());
    EXPECT_EQ(got.size(), ball.size()) << "duplicates at L=" << L;
    EXPECT_EQ(got, brute_force_ball(L));
    EXPECT_TRUE(std::is_sorted(ball.begin(), ball.end()));
  }
}

TEST(Ball, Counts) {
  EXPECT_EQ(enumerate_ball(3).size() - 1, 52u);
  EXPECT_EQ(enumerate_ball(6).size() - 1, 1456u);
  EXPECT_EQ(enumerate_ball(10).size() - 1, 118096u);
  for (int L = 0; L <= 10; ++L) EXPECT_EQ(ball_count(L), enumerate_ball(L).size());
}

TEST(Prefix, Classify) {
  EXPECT_EQ(classify_prefix(Word::parse("Ab")), PrefixClass::Wa_inv);
  EXPECT_EQ(classify_prefix(Word::parse("baa")), PrefixClass::Wb);
  EXPECT_EQ(classify_prefix(Word{}), PrefixClass::Identity);
}

TEST(Prefix, ClassesHaveEqualSize) {
  for (int L = 1; L <= 7; ++L) {
    std::map<PrefixClass, std::uint64_t> sizes;
    for (const auto& w : enumerate_ball(L)) ++sizes[classify_prefix(w)];
    std::uint64_t p = 1;
    for (int i = 0; i < L; ++i) p *= 3;
    EXPECT_EQ(sizes[PrefixClass::Identity], 1u);
    for (auto c : {PrefixClass::Wa, PrefixClass::Wa_inv, PrefixClass::Wb, PrefixClass::Wb_inv})
      EXPECT_EQ(sizes[c], (p - 1) / 2) << to_string(c) << " L=" << L;
  }
}

TEST(TranslateIdentity, Passes) {
  for (int L = 1; L <= 8; ++L) {
    const auto r = check_translate_identity(L);
    EXPECT_TRUE(r.passed()) << (r.failures.empty() ? "" : r.failures.front());
    EXPECT_EQ(r.words_checked, ball_count(L));
  }
}

TEST(TranslateIdentity, ExampleCoverings) {
  // ε = a·A, b = a·(Ab): both covered by the translated class.
  EXPECT_TRUE(Word::parse("A").prepend(Letter::a).empty());
  EXPECT_EQ(Word::parse("Ab").prepend(Letter::a).str(), "b");
  EXPECT_EQ(classify_prefix(Word::parse("Ab")), PrefixClass::Wa_inv);
}

Matrix<QSqrt2> matrix_a() {
  const QSqrt2 c(Rational(1, 3)), s(Rational(0), Rational(2, 3)), z(0), o(1);
  return {{c, -s, z}, {s, c, z}, {z, z, o}};
}
Matrix<QSqrt2> matrix_b() {
  const QSqrt2 c(Rational(1, 3)), s(Rational(0), Rational(2, 3)), z(0), o(1);
  return {{o, z, z}, {z, c, -s}, {z, s, c}};
}

TEST(Evaluate, Examples) {
  const auto pair = so3_ab();
  EXPECT_EQ(evaluate(Word::parse("a"), pair), matrix_a());
  EXPECT_EQ(evaluate(Word::parse("b"), pair), matrix_b());
  EXPECT_EQ(evaluate(Word::reduce(std::vector<Letter>{Letter::a, Letter::a_inv}), pair),
            Matrix<QSqrt2>::identity(3));
  EXPECT_EQ(evaluate(Word::parse("ab"), pair), naive_multiply(matrix_a(), matrix_b()));
  EXPECT_EQ(evaluate(Word::parse("A"), pair), numeric::inverse(matrix_a()));
}

TEST(Evaluate, Homomorphism) {
  std::mt19937_64 rng(3);
  const auto pair = so3_ab();
  const auto ball = enumerate_ball(4);
  for (int trial = 0; trial < 100; ++trial) {
    const Word& u = ball[rng() % ball.size()];
    const Word& v = ball[rng() % ball.size()];
    EXPECT_EQ(evaluate(u * v, pair), naive_multiply(evaluate(u, pair), evaluate(v, pair)));
  }
  const auto su2 = su2_sqrt5();
  for (int trial = 0; trial < 50; ++trial) {
    const Word& u = ball[rng() % ball.size()];
    const Word& v = ball[rng() % ball.size()];
    EXPECT_EQ(evaluate(u * v, su2), naive_multiply(evaluate(u, su2), evaluate(v, su2)));
  }
}

TEST(Evaluate, EntriesHaveDenominatorPowerOfThree) {
  const auto pair = so3_ab();
  for (const auto& w : enumerate_ball(5)) {
    numeric::Integer p3 = 1;
    for (std::size_t i = 0; i < w.size(); ++i) p3 *= 3;
    const auto m = evaluate(w, pair);
    for (const auto& x : m.data()) {
      const Rational ra = x.rational_part() * p3, rb = x.radical_part() * p3;
      EXPECT_EQ(ra.get_den(), 1) << w.str();
      EXPECT_EQ(rb.get_den(), 1) << w.str();
    }
  }
}

TEST(Pairs, AreUnitary) {
  EXPECT_TRUE(numeric::is_unitary(so3_ab().a()));
  EXPECT_TRUE(numeric::is_unitary(so3_ab().b()));
  EXPECT_TRUE(numeric::is_unitary(su2_sqrt5().a()));
  EXPECT_TRUE(numeric::is_unitary(su2_sqrt5().b()));
  EXPECT_TRUE(numeric::is_unitary(sp1_sqrt5().a()));
  EXPECT_TRUE(numeric::is_unitary(sp1_sqrt5().b()));
  EXPECT_EQ(so3_ab().embed(5).label(), "so3-ab*5");
  EXPECT_EQ(so3_ab().embed(5).native_dim(), 3u);
}

TEST(Pairs, Su2MatchesQuaternionEmbedding) {
  // α + βj ↦ [[α, -β̄], [β, ᾱ]] applied to (1+2i)/√5 and (1+2j)/√5.
  const auto pair = su2_sqrt5();
  const auto to_field = [](const Matrix<GaussSqrt5>& m) {
    return numeric::convert<numeric::Complex<QSqrt5>>(m, [](const GaussSqrt5& x) { return x.to_field(); });
  };
  using C = numeric::Complex<QSqrt5>;
  const QSqrt5 r(Rational(0), Rational(1, 5)), r2(Rational(0), Rational(2, 5));
  const Matrix<C> ua{{C(r, r2), C(0)}, {C(0), C(r, QSqrt5(-r2))}};
  const Matrix<C> ub{{C(r), C(QSqrt5(-r2))}, {C(r2), C(r)}};
  EXPECT_EQ(to_field(pair.a()), ua);
  EXPECT_EQ(to_field(pair.b()), ub);
}

TEST(Freeness, So3Depth6) {
  const auto r = check_freeness(so3_ab(), 6);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.words_checked, 1456u);
}

TEST(Freeness, Depth1) {
  const auto r = check_freeness(so3_ab(), 1);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.words_checked, 4u);
}

TEST(Freeness, IdentityPairFailsAtA) {
  const GeneratorPair<QSqrt2> trivial(PairName::SO3_AB, Matrix<QSqrt2>::identity(3), Matrix<QSqrt2>::identity(3));
  const auto r = check_freeness(trivial, 1);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.counterexample->str(), "a");
}

TEST(Freeness, CommutingPairFailsAtCommutatorLength) {
  // a and b commute: the least relation is the commutator, of length 4.
  const auto a = so3_ab().a();
  const GeneratorPair<QSqrt2> abelian(PairName::SO3_AB, a, a * a);
  const auto r = check_freeness(abelian, 4, 3);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.counterexample->str(), "aaB");
}

TEST(Freeness, OtherPairsAndJobsAgree) {
  EXPECT_TRUE(check_freeness(su2_sqrt5(), 6).passed());
  EXPECT_TRUE(check_freeness(sp1_sqrt5(), 5).passed());
  const auto one = check_freeness(so3_ab().embed(4), 5, 1);
  const auto four = check_freeness(so3_ab().embed(4), 5, 4);
  EXPECT_EQ(one.words_checked, four.words_checked);
  EXPECT_TRUE(four.passed());
}

// Axis of a rotation from its antisymmetric part; valid when the angle is not π.
Matrix<QSqrt2> cross_axis(const Matrix<QSqrt2>& r) {
  return Matrix<QSqrt2>::column({r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1)});
}

TEST(Axes, Examples) {
  const auto pair = so3_ab();
  const QSqrt2 z(0), o(1);
  EXPECT_EQ(axis_of(Word::parse("a"), pair), Matrix<QSqrt2>::column({z, z, o}));
  EXPECT_EQ(axis_of(Word::parse("b"), pair), Matrix<QSqrt2>::column({o, z, z}));
  const auto ab = evaluate(Word::parse("ab"), pair);
  auto expected = numeric::normalize_signed_ray(cross_axis(ab));
  if (expected[0].sign() < 0) expected = -expected;
  EXPECT_EQ(axis_of(Word::parse("ab"), pair), expected);
  EXPECT_THROW(axis_of(Word{}, pair), KernelDimensionError);
}

TEST(Axes, CrossProductOracleAndInverse) {
  const auto pair = so3_ab();
  for (const auto& w : enumerate_ball(4)) {
    if (w.empty()) continue;
    const auto r = evaluate(w, pair);
    const auto axis = axis_of(w, pair);
    EXPECT_EQ(r * axis, axis) << w.str();
    const auto c = cross_axis(r);
    if (!c.is_zero()) {
      auto oracle = numeric::normalize_signed_ray(c);
      if (axis == oracle || axis == Matrix<QSqrt2>(-oracle)) {
        SUCCEED();
      } else {
        ADD_FAILURE() << "axis mismatch for " << w.str();
      }
    }
    EXPECT_EQ(axis_of(w.inverse(), pair), axis);
  }
}

TEST(Axes, ExceptionalSet) {
  const auto pair = so3_ab();
  const auto d1 = exceptional_set(pair, 1);
  ASSERT_EQ(d1.size(), 2u);
  std::set<std::string> keys;
  for (const auto& a : d1.axes) keys.insert(numeric::key(a.ray));
  const QSqrt2 z(0), o(1);
  EXPECT_TRUE(keys.count(numeric::key(Matrix<QSqrt2>::column({z, z, o}))));
  EXPECT_TRUE(keys.count(numeric::key(Matrix<QSqrt2>::column({o, z, z}))));
  const auto d4 = exceptional_set(pair, 4);
  EXPECT_LE(d4.size(), 2 * (81u - 1));
  for (const auto& a : d4.axes) EXPECT_EQ(evaluate(a.word, pair) * a.ray, a.ray);
  EXPECT_EQ(d4.sphere_points().size(), 2 * d4.size());
}

// Pairwise comparison of the orbit pieces g^m(D), 0 ≤ m ≤ M.
bool absorber_oracle(const Matrix<QSqrt2>& g, const std::vector<Matrix<QSqrt2>>& d, int bound) {
  std::vector<std::vector<std::string>> layers;
  std::vector<Matrix<QSqrt2>> cur = d;
  for (int m = 0; m <= bound; ++m) {
    std::vector<std::string> keys;
    for (auto& p : cur) keys.push_back(numeric::key(numeric::normalize_signed_ray(p)));
    layers.push_back(keys);
    for (auto& p : cur) p = g * p;
  }
  for (int m = 0; m <= bound; ++m)
    for (int n = m + 1; n <= bound; ++n)
      for (const auto& x : layers[m])
        for (const auto& y : layers[n])
          if (x == y) return false;
  return true;
}

TEST(Absorber, IdentityFailsAtFirstPower) {
  const auto d = exceptional_set(so3_ab(), 1).sphere_points();
  const auto r = absorber_check_rays(Matrix<QSqrt2>::identity(3), d, 50);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(*r.collision, std::make_pair(0, 1));
}

TEST(Absorber, EmptySetPasses) {
  EXPECT_TRUE(absorber_check_rays(s2_absorber<QSqrt2>(), {}, 50).passed());
}

TEST(Absorber, DefaultRotationAgreesWithPairwiseOracle) {
  const auto g = s2_absorber<QSqrt2>();
  EXPECT_TRUE(numeric::is_unitary(g));
  const QSqrt2 o(1);
  const auto axis = Matrix<QSqrt2>::column({QSqrt2(5), QSqrt2(0), QSqrt2(2)});
  EXPECT_EQ(g * axis, axis);
  const auto d1 = exceptional_set(so3_ab(), 1).sphere_points();
  EXPECT_TRUE(absorber_check_rays(g, d1, 50).passed());
  EXPECT_TRUE(absorber_oracle(g, d1, 50));
  const auto d2 = exceptional_set(so3_ab(), 2).sphere_points();
  EXPECT_EQ(absorber_check_rays(g, d2, 20).passed(), absorber_oracle(g, d2, 20));
  // A rotation of order 4 about the z-axis collides at k = 4 on a generic point.
  const QSqrt2 z(0);
  const Matrix<QSqrt2> quarter{{z, QSqrt2(-1), z}, {o, z, z}, {z, z, o}};
  const std::vector<Matrix<QSqrt2>> d{Matrix<QSqrt2>::column({o, QSqrt2(2), QSqrt2(3)})};
  const auto r = absorber_check_rays(quarter, d, 10);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.collision->second, 4);
  EXPECT_FALSE(absorber_oracle(quarter, d, 10));
}

TEST(Absorber, PlaneRotationIsOrthogonal) {
  const auto g = plane_rotation<Rational>(4, 0, 3);
  EXPECT_TRUE(numeric::is_unitary(g));
  EXPECT_EQ(g(3, 0), Rational(4, 5));
}

}  // namespace
}  // namespace bt::freegroup
