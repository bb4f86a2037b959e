#include <gtest/gtest.h>

#include <array>
#include <set>

#include "orbi/catalog/catalog.hpp"
#include "orbi/group/matrix_group.hpp"

namespace {

using namespace orbi;
using numeric::QSqrt5;
using numeric::Rational;
using numeric::Index;
using numeric::Matrix;

group::MatrixGroup<QSqrt5> exact(const std::string& id) {
  const auto set = catalog::build(id);
  return group::MatrixGroup<QSqrt5>::generate(catalog::generators_as<QSqrt5>(set), set.dimension);
}

group::MatrixGroup<double> approx(const std::string& id) {
  const auto set = catalog::build(id);
  return group::MatrixGroup<double>::generate(catalog::generators_as<double>(set), set.dimension);
}

std::size_t order_of(const std::string& id) {
  if (auto g = catalog::build_abstract(id)) return g->order();
  const auto set = catalog::build(id);
  return set.field == numeric::Field::Float64 ? approx(id).order() : exact(id).order();
}

// Count of 2x2 matrices over F_p with determinant 1, by direct enumeration.
std::size_t count_sl2(std::uint64_t p) {
  std::size_t n = 0;
  for (std::uint64_t a = 0; a < p; ++a)
    for (std::uint64_t b = 0; b < p; ++b)
      for (std::uint64_t c = 0; c < p; ++c)
        for (std::uint64_t d = 0; d < p; ++d)
          if ((a * d + p * p - b * c) % p == 1) ++n;
  return n;
}

TEST(Build, Orders) {
  EXPECT_EQ(exact("poincare").order(), 120U);
  EXPECT_EQ(exact("binary_I").order(), 120U);
  EXPECT_EQ(exact("binary_T").order(), 24U);
  EXPECT_EQ(approx("binary_O").order(), 48U);
  EXPECT_EQ(exact("klein_four").order(), 4U);
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) EXPECT_EQ(catalog::sl2(p).order(), count_sl2(p));
  EXPECT_EQ(catalog::build_abstract("sl2_5")->order(), 120U);
}

TEST(Build, CyclicHalfTurn) {
  const auto g = exact("cyclic:2");
  ASSERT_EQ(g.order(), 2U);
  Matrix<QSqrt5> minus = numeric::identity<QSqrt5>(2) * QSqrt5(-1);
  EXPECT_TRUE(g.find(minus).has_value());
}

TEST(Build, FieldsAreNarrowest) {
  EXPECT_EQ(catalog::build("binary_T").field, numeric::Field::Rational);
  EXPECT_EQ(catalog::build("poincare").field, numeric::Field::QSqrt5);
  EXPECT_EQ(catalog::build("cyclic:5").field, numeric::Field::Float64);
  EXPECT_EQ(catalog::build("axis_rotation:5").field, numeric::Field::QSqrt5);
  EXPECT_EQ(catalog::build("sum(poincare,cyclic:3)").field, numeric::Field::Float64);
  EXPECT_EQ(catalog::build("sum(binary_T,trivial:2)").field, numeric::Field::Rational);
}

TEST(Build, AxisRotationsHaveTheirOrder) {
  for (std::uint64_t k : {2, 3, 4, 5}) {
    const auto g = exact("axis_rotation:" + std::to_string(k));
    EXPECT_EQ(g.order(), k);
    for (group::Element a = 1; a < g.order(); ++a) EXPECT_EQ(g.fixed_space(a).dim(), 1);
  }
}

TEST(Build, BadParameters) {
  for (const char* id : {"nope", "cyclic:1", "cyclic:3:2:1,1", "axis_rotation:7", "sum(poincare,poincare,poincare,poincare)",
                         "sl2:4", "sl2:17", "conj(poincare)", "sum(poincare", "trivial:0"}) {
    try {
      if (!catalog::build_abstract(id)) catalog::build(id);
      ADD_FAILURE() << id;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::BadParameter) << id;
    }
  }
}

TEST(Build, ListParametersInsideCombinators) {
  EXPECT_EQ(exact("sum(ps_product:2,4,cyclic:4)").order(), 32U);
  EXPECT_EQ(exact("sum(ps_product:2,4,cyclic:4)").dimension(), 6);
  EXPECT_EQ(approx("conj(ps_product:3,5,1)").order(), 15U);
  EXPECT_EQ(exact("conj(cyclic:4:4:3,4,2)").order(), 4U);
}

TEST(Build, Deterministic) {
  for (const char* id : {"poincare", "conj(poincare,17)", "conj(cyclic:5,2)", "sum(binary_T,cyclic:4)"}) {
    const auto a = catalog::build(id);
    const auto b = catalog::build(id);
    ASSERT_EQ(a.approx.size(), b.approx.size());
    for (std::size_t i = 0; i < a.approx.size(); ++i) EXPECT_TRUE(a.approx[i] == b.approx[i]) << id;
    for (std::size_t i = 0; i < a.exact.size(); ++i) EXPECT_TRUE(numeric::equal<QSqrt5>(a.exact[i], b.exact[i])) << id;
  }
  const auto g1 = exact("poincare");
  const auto g2 = exact("poincare");
  for (group::Element e = 0; e < g1.order(); ++e) EXPECT_TRUE(numeric::equal<QSqrt5>(g1.element(e), g2.element(e)));
}

TEST(Build, ConjugationIsOrthogonalAndKeepsOrder) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto e = catalog::build("conj(poincare," + std::to_string(seed) + ")");
    EXPECT_EQ(e.field, numeric::Field::QSqrt5);
    EXPECT_EQ(group::MatrixGroup<QSqrt5>::generate(catalog::generators_as<QSqrt5>(e), 4).order(), 120U);
    EXPECT_EQ(approx("conj(cyclic:5," + std::to_string(seed) + ")").order(), 5U);
  }
}

TEST(Build, PaddingToDimension) {
  const auto s = catalog::build_in_dimension("poincare", 5);
  EXPECT_EQ(s.dimension, 5);
  const auto g = group::MatrixGroup<QSqrt5>::generate(catalog::generators_as<QSqrt5>(s), 5);
  EXPECT_EQ(g.order(), 120U);
  try {
    catalog::build_in_dimension("poincare", 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadParameter);
  }
}

TEST(Icosians, CountsAndUnitNorm) {
  const auto ico = catalog::icosians();
  ASSERT_EQ(ico.size(), 120U);
  std::set<std::string> distinct;
  for (const auto& q : ico) {
    EXPECT_EQ(q.norm2(), QSqrt5(1));
    distinct.insert(q.str());
  }
  EXPECT_EQ(distinct.size(), 120U);
  // Elements of the Poincare group with real part in {+-1, +-1/2, 0} and
  // rational coordinates are the Hurwitz units.
  const auto g = exact("poincare");
  std::size_t hurwitz = 0, golden = 0;
  for (const auto& m : g.elements()) {
    bool rational = true;
    for (Index i = 0; i < 4; ++i) rational = rational && m(i, 0).is_rational();
    (rational ? hurwitz : golden) += 1;
  }
  EXPECT_EQ(hurwitz, 24U);
  EXPECT_EQ(golden, 96U);
}

TEST(Icosians, PoincareIsLeftMultiplicationByIcosians) {
  const auto g = exact("poincare");
  for (const auto& q : catalog::icosians()) EXPECT_TRUE(g.find(quaternion::left_matrix(q)).has_value());
}

TEST(Fingerprints, OrdersMatchRecomputation) {
  for (const auto& f : catalog::list()) {
    EXPECT_EQ(order_of(f.id), f.order) << f.id;
  }
}

TEST(Fingerprints, PerfectAndPeriodicMatchRecomputation) {
  for (const auto& f : catalog::list()) {
    group::FiniteGroup abs;
    if (auto a = catalog::build_abstract(f.id)) {
      abs = *a;
    } else if (catalog::build(f.id).field == numeric::Field::Float64) {
      abs = approx(f.id).abstract();
    } else {
      abs = exact(f.id).abstract();
    }
    EXPECT_EQ(group::is_perfect(abs), f.perfect) << f.id;
    EXPECT_EQ(group::has_periodic_cohomology(abs), f.periodic) << f.id;
  }
}

TEST(Emission, RoundTripThroughDouble) {
  const auto s = catalog::build("poincare");
  ASSERT_EQ(s.exact.size(), s.approx.size());
  for (std::size_t i = 0; i < s.exact.size(); ++i)
    EXPECT_TRUE(numeric::to_double<QSqrt5>(s.exact[i]).isApprox(s.approx[i]));
}

}  // namespace
