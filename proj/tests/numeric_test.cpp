#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "orbi/numeric/linalg.hpp"

using namespace orbi;
using namespace orbi::numeric;

namespace {

template <Scalar S>
Matrix<S> rot90() {
  Matrix<S> m(2, 2);
  m << S(0), S(-1), S(1), S(0);
  return m;
}

template <Scalar S>
Matrix<S> rows(std::initializer_list<std::initializer_list<int>> data) {
  Matrix<S> m(static_cast<Index>(data.size()), static_cast<Index>(data.begin()->size()));
  Index i = 0;
  for (const auto& row : data) {
    Index j = 0;
    for (int v : row) m(i, j++) = S(v);
    ++i;
  }
  return m;
}

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  return Rational(num(rng), den(rng));
}

}  // namespace

TEST(Scalar, RationalIsCanonical) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(2, 4).str(), "1/2");
  EXPECT_EQ(Rational::parse("-6/8"), Rational(-3, 4));
  EXPECT_EQ(Rational::parse("0.25"), Rational(1, 4));
  EXPECT_EQ(Rational::parse("-1.5"), Rational(-3, 2));
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_THROW(Rational::parse("abc"), Error);
  EXPECT_THROW(Rational::parse("1/0"), Error);
}

TEST(Scalar, GoldenRatioIsExact) {
  const QSqrt5 tau = QSqrt5::golden();
  // tau^2 = tau + 1 and tau^-1 = tau - 1.
  EXPECT_EQ(tau * tau, tau + QSqrt5(1));
  EXPECT_EQ(QSqrt5(1) / tau, tau - QSqrt5(1));
  EXPECT_NEAR(tau.to_double(), (1.0 + std::sqrt(5.0)) / 2.0, 1e-15);
}

TEST(Scalar, QSqrt5OrderingMatchesReals) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    QSqrt5 x(random_rational(rng), random_rational(rng));
    QSqrt5 y(random_rational(rng), random_rational(rng));
    const double dx = x.to_double();
    const double dy = y.to_double();
    if (std::abs(dx - dy) < 1e-12) continue;
    EXPECT_EQ(x < y, dx < dy) << x << " vs " << y;
    EXPECT_EQ(x.sign(), (dx > 0) - (dx < 0));
  }
}

TEST(Scalar, FieldSquareRoot) {
  const QSqrt5 tau = QSqrt5::golden();
  EXPECT_EQ(sqrt_exact(tau * tau), tau);
  EXPECT_EQ(sqrt_exact(QSqrt5(5)), QSqrt5::sqrt5());
  EXPECT_EQ(sqrt_exact(QSqrt5(Rational(9, 4))), QSqrt5(Rational(3, 2)));
  const QSqrt5 half_tau_inv = (tau - QSqrt5(1)) / QSqrt5(2);
  EXPECT_EQ(sqrt_exact(half_tau_inv * half_tau_inv), half_tau_inv);
  EXPECT_FALSE(sqrt_exact(QSqrt5(2)).has_value());
  EXPECT_FALSE(sqrt_exact(QSqrt5(3)).has_value());
  EXPECT_FALSE(sqrt_exact(QSqrt5(-1)).has_value());
  EXPECT_FALSE(sqrt_exact(Rational(2)).has_value());
  EXPECT_EQ(sqrt_exact(Rational(16, 9)), Rational(4, 3));
}

TEST(Scalar, SquareRootRoundTripsOnRandomSquares) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    QSqrt5 x(random_rational(rng), random_rational(rng));
    if (x.sign() < 0) x = -x;
    const auto r = sqrt_exact(x * x);
    ASSERT_TRUE(r.has_value()) << x;
    EXPECT_EQ(*r, x);
  }
}

TEST(Scalar, Conversions) {
  EXPECT_EQ(convert<QSqrt5>(Rational(1, 3)), QSqrt5(Rational(1, 3)));
  EXPECT_EQ(convert<Rational>(QSqrt5(Rational(1, 3))), Rational(1, 3));
  EXPECT_THROW(convert<Rational>(QSqrt5::golden()), Error);
  EXPECT_NEAR(convert<double>(QSqrt5::sqrt5()), std::sqrt(5.0), 1e-15);
}

// --- kernel -----------------------------------------------------------------

TEST(Kernel, IdentityMinusIdentityIsWholeSpace) {
  const auto k = kernel<Rational>(identity<Rational>(2) - identity<Rational>(2));
  EXPECT_EQ(k, Subspace<Rational>::whole(2));
  EXPECT_EQ(k.dim(), 2);
}

TEST(Kernel, RotationFixesOnlyOrigin) {
  const auto k = kernel<Rational>(rot90<Rational>() - identity<Rational>(2));
  EXPECT_EQ(k.dim(), 0);
}

TEST(Kernel, BlockRotationFixesComplementPlane) {
  const Matrix<Rational> g = embed<Rational>(rot90<Rational>(), 4, 0);
  const auto k = kernel<Rational>(g - identity<Rational>(4));
  EXPECT_EQ(k.dim(), 2);
  EXPECT_EQ(k, Subspace<Rational>::span(rows<Rational>({{0, 0, 1, 0}, {0, 0, 0, 1}})));
}

TEST(Kernel, FloatAgreesWithExact) {
  const Matrix<double> g = embed<double>(rot90<double>(), 4, 1);
  EXPECT_EQ(kernel<double>(g - identity<double>(4)).dim(), 2);
}

TEST(Kernel, AmbiguousPivotIsReported) {
  ScopedTolerance eps(1e-8);
  Matrix<double> m(2, 2);
  m << 1.0, 0.0, 0.0, 2e-8;
  try {
    (void)kernel<double>(m);
    FAIL() << "expected AmbiguousRank";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AmbiguousRank);
  }
  m(1, 1) = 1e-12;
  EXPECT_EQ(kernel<double>(m).dim(), 1);
  m(1, 1) = 1e-6;
  EXPECT_EQ(kernel<double>(m).dim(), 0);
}

// --- complements and intersections ------------------------------------------

TEST(Complement, Examples) {
  const auto e12 = Subspace<Rational>::span(rows<Rational>({{1, 0, 0, 0}, {0, 1, 0, 0}}));
  const auto e34 = Subspace<Rational>::span(rows<Rational>({{0, 0, 1, 0}, {0, 0, 0, 1}}));
  EXPECT_EQ(orthogonal_complement(e12), e34);
  EXPECT_EQ(orthogonal_complement(Subspace<Rational>::zero(5)), Subspace<Rational>::whole(5));
  const auto diag = Subspace<Rational>::span(rows<Rational>({{1, 1}}));
  EXPECT_EQ(orthogonal_complement(diag), Subspace<Rational>::span(rows<Rational>({{1, -1}})));
}

TEST(Intersect, Examples) {
  const auto e12 = Subspace<Rational>::span(rows<Rational>({{1, 0, 0}, {0, 1, 0}}));
  const auto e23 = Subspace<Rational>::span(rows<Rational>({{0, 1, 0}, {0, 0, 1}}));
  const auto e1 = Subspace<Rational>::span(rows<Rational>({{1, 0, 0}}));
  const auto e2 = Subspace<Rational>::span(rows<Rational>({{0, 1, 0}}));
  EXPECT_EQ(intersect(e12, e12), e12);
  EXPECT_EQ(intersect(e12, e23), e2);
  EXPECT_EQ(intersect(e1, e2).dim(), 0);
}

// --- principal angle --------------------------------------------------------

TEST(PrincipalAngle, Examples) {
  const auto e1 = Subspace<Rational>::span(rows<Rational>({{1, 0}}));
  const auto e2 = Subspace<Rational>::span(rows<Rational>({{0, 1}}));
  const auto diag = Subspace<Rational>::span(rows<Rational>({{1, 1}}));
  EXPECT_EQ(principal_angle(e1, e1), 0.0);
  EXPECT_NEAR(principal_angle(e1, e2), std::numbers::pi / 2, 1e-12);
  // Oracle: acos(<e1, (e1+e2)/|e1+e2|>) = acos(1/sqrt 2).
  EXPECT_NEAR(principal_angle(e1, diag), std::acos(1.0 / std::sqrt(2.0)), 1e-12);
  EXPECT_THROW((void)principal_angle(e1, Subspace<Rational>::zero(2)), Error);
}

TEST(PrincipalAngle, MatchesBruteForceMinimum) {
  // Oracle: minimise the angle over a fine grid of unit vectors of a 2-plane
  // against a line.
  const auto plane = Subspace<double>::span(rows<double>({{1, 0, 0}, {0, 1, 0}}));
  Matrix<double> line_m(1, 3);
  line_m << 1.0, 2.0, 3.0;
  const auto line = Subspace<double>::span(line_m);
  Eigen::Vector3d l(1, 2, 3);
  l.normalize();
  double best = 10.0;
  for (int k = 0; k < 200000; ++k) {
    const double t = 2 * std::numbers::pi * k / 200000.0;
    Eigen::Vector3d v(std::cos(t), std::sin(t), 0);
    best = std::min(best, std::acos(std::clamp(std::abs(v.dot(l)), 0.0, 1.0)));
  }
  EXPECT_NEAR(principal_angle(plane, line), best, 1e-9);
}

// --- affine span ------------------------------------------------------------

TEST(AffineSpan, Examples) {
  std::vector<Vector<Rational>> one{unit_vector<Rational>(3, 1)};
  EXPECT_EQ(affine_span_dim(one), 0);
  std::vector<Vector<Rational>> tri{Vector<Rational>::Constant(3, Rational(0)), unit_vector<Rational>(3, 0),
                                    unit_vector<Rational>(3, 1)};
  EXPECT_EQ(affine_span_dim(tri), 2);
}

TEST(Determinant, SignedPermutation) {
  Matrix<Rational> m = rows<Rational>({{0, 1, 0}, {1, 0, 0}, {0, 0, -1}});
  EXPECT_EQ(determinant<Rational>(m), Rational(1));
  EXPECT_EQ(determinant<Rational>(rows<Rational>({{-1, 0}, {0, 1}})), Rational(-1));
}

// --- properties -------------------------------------------------------------

class SubspaceProperties : public ::testing::Test {
 protected:
  std::mt19937 rng{2024};

  Matrix<Rational> random_matrix(Index r, Index c) {
    Matrix<Rational> m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = random_rational(rng);
    return m;
  }
};

TEST_F(SubspaceProperties, DoubleComplementIsIdentity) {
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = dim(rng);
    const Index k = std::uniform_int_distribution<Index>(0, n)(rng);
    const auto s = Subspace<Rational>::span(random_matrix(k, n));
    const auto c = orthogonal_complement(s);
    EXPECT_EQ(s.dim() + c.dim(), n);
    EXPECT_EQ(intersect(s, c).dim(), 0);
    EXPECT_EQ(orthogonal_complement(c), s);
  }
}

TEST_F(SubspaceProperties, RankNullity) {
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = std::uniform_int_distribution<Index>(1, 6)(rng);
    const Index r = std::uniform_int_distribution<Index>(0, n)(rng);
    // Rank-r square matrix as a product of n x r and r x n factors.
    const Matrix<Rational> m = mul<Rational>(random_matrix(n, r), random_matrix(r, n));
    EXPECT_EQ(kernel<Rational>(m).dim() + rank<Rational>(m), n);
  }
}

TEST_F(SubspaceProperties, CanonicalFormIgnoresSpanningSet) {
  const Matrix<Rational> base = random_matrix(3, 6);
  const auto reference = Subspace<Rational>::span(base);
  ASSERT_EQ(reference.dim(), 3);
  for (int trial = 0; trial < 100; ++trial) {
    const Index extra = std::uniform_int_distribution<Index>(3, 6)(rng);
    Matrix<Rational> mix = random_matrix(extra, 3);
    while (rank<Rational>(mix) < 3) mix = random_matrix(extra, 3);
    const auto s = Subspace<Rational>::span(Matrix<Rational>(mul<Rational>(mix, base)));
    EXPECT_EQ(s, reference);
    EXPECT_EQ(s.hash(), reference.hash());
  }
}

TEST_F(SubspaceProperties, IntersectionDimensionBound) {
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = std::uniform_int_distribution<Index>(1, 6)(rng);
    const auto a = Subspace<Rational>::span(random_matrix(std::uniform_int_distribution<Index>(0, n)(rng), n));
    const auto b = Subspace<Rational>::span(random_matrix(std::uniform_int_distribution<Index>(0, n)(rng), n));
    const auto i = intersect(a, b);
    EXPECT_GE(i.dim(), a.dim() + b.dim() - n);
    EXPECT_TRUE(a.contains(i));
    EXPECT_TRUE(b.contains(i));
  }
}

TEST(RationalProperties, AgreesWithGmpAcrossPromotion) {
  std::mt19937_64 rng(21);
  const auto pick = [&]() -> std::pair<Rational, mpq_class> {
    const int magnitude = static_cast<int>(rng() % 3);
    long n = static_cast<long>(rng() >> (magnitude == 0 ? 1 : magnitude == 1 ? 33 : 58));
    if (rng() & 1U) n = -n;
    long d = static_cast<long>((rng() >> (magnitude == 2 ? 1 : 40)) | 1U);
    mpq_class q{mpz_class(n), mpz_class(d)};
    q.canonicalize();
    return {Rational(n, d), q};
  };
  for (int t = 0; t < 3000; ++t) {
    auto [a, qa] = pick();
    auto [b, qb] = pick();
    for (int step = 0; step < 4; ++step) {
      switch (rng() % 4) {
        case 0: a += b; qa += qb; break;
        case 1: a -= b; qa -= qb; break;
        case 2: a *= b; qa *= qb; break;
        default:
          if (!b.is_zero()) {
            a /= b;
            qa /= qb;
          }
      }
      ASSERT_EQ(a.value(), qa);
      ASSERT_EQ(a.str(), qa.get_str());
      ASSERT_EQ(a, Rational(qa));
      ASSERT_EQ(a.hash(), Rational(qa).hash());
      ASSERT_EQ(a < b, qa < qb);
    }
  }
}

TEST(RationalProperties, DemotesAfterCancellation) {
  Rational big(1L << 62);
  big *= Rational(1L << 62);
  EXPECT_FALSE(big.is_small());
  big /= Rational(1L << 62);
  EXPECT_TRUE(big.is_small());
  EXPECT_EQ(big, Rational(1L << 62));
  EXPECT_EQ(-Rational(INT64_MIN), Rational(mpq_class(mpz_class("9223372036854775808"))));
}
