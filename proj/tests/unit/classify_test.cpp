#include <algorithm>

#include <gtest/gtest.h>

#include "dvkit/classify.hpp"
#include "dvkit/error.hpp"
#include "test_support.hpp"

namespace dvkit {
namespace {

using testing::linear;
using testing::one_minus_z3w2;
using testing::z3_minus_w2;

std::vector<cplx> sorted_by_real(std::vector<cplx> v) {
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  return v;
}

TEST(Classify, PolynomialRootsFromCompanion) {
  // (x - 1)(x + 2)(x - i) = x^3 + (1 - i) x^2 + (-2 - i) x + 2i
  const auto r = polynomial_roots({cplx(0, 2), cplx(-2, -1), cplx(1, -1), 1.0});
  ASSERT_EQ(r.size(), 3u);
  for (const cplx want : {cplx(1.0), cplx(-2.0), kI}) {
    double best = 1.0;
    for (const cplx x : r) best = std::min(best, std::abs(x - want));
    EXPECT_LT(best, 1e-12);
  }
  EXPECT_EQ(polynomial_roots({1.0, 2.0, 1e-20}, 1e-15).size(), 1u);
}

TEST(Classify, FiberRootsOfCorpus) {
  const auto r = sorted_by_real(fiber_roots(z3_minus_w2(), 0.25));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(std::abs(r[0] - cplx(-0.125)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(r[1] - cplx(0.125)), 0.0, 1e-14);

  const auto l = fiber_roots(linear(4.0), 0.0);
  ASSERT_EQ(l.size(), 1u);
  EXPECT_NEAR(std::abs(l[0] - cplx(4.0)), 0.0, 1e-14);

  EXPECT_TRUE(fiber_roots(one_minus_z3w2(), 0.0).empty());
}

TEST(Classify, IdenticallyZeroFiberThrows) {
  // z (1 - w) vanishes on the whole fiber z = 0.
  const BivariatePolynomial p = BivariatePolynomial::from_rows({{0.0, 0.0}, {1.0, -1.0}});
  try {
    fiber_roots(p, 0.0);
    FAIL() << "expected FiberDegenerate";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FiberDegenerate);
  }
}

TEST(Classify, ClusterRootsCountsMultiplicity) {
  const auto c = cluster_roots({0.5, 0.5 + 1e-9, -0.5});
  ASSERT_EQ(c.size(), 2u);
  int total = 0;
  for (const auto& k : c) total += k.multiplicity;
  EXPECT_EQ(total, 3);
}

TEST(Classify, RootCountInDiskExamples) {
  EXPECT_EQ(root_count_in_disk(z3_minus_w2(), 0.5), 2);
  EXPECT_EQ(root_count_in_disk(linear(4.0), 0.3), 0);
  EXPECT_EQ(root_count_in_disk(one_minus_z3w2(), 0.5), 0);
  EXPECT_NEAR(root_count_integral(z3_minus_w2(), 0.5, 256), 2.0, 1e-10);
}

TEST(Classify, RootCountErrors) {
  try {
    root_count_in_disk(linear(2.0), 1.0, 256);  // w = 1 lies on the contour
    FAIL() << "expected ZeroOnFiberCircle";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroOnFiberCircle);
  }
  // Root at radius 1 - 1e-3 needs far more than 8 nodes.
  const BivariatePolynomial near = BivariatePolynomial::from_rows({{-(1.0 - 1e-3), 1.0}});
  try {
    root_count_in_disk(near, 0.0, 8);
    FAIL() << "expected QuadratureUnresolved";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::QuadratureUnresolved);
  }
  EXPECT_EQ(root_count_in_disk(near, 0.0), 1);
}

TEST(Classify, RootCountConstantOnDistinguishedVarieties) {
  Rng rng(21);
  for (const auto& p : {z3_minus_w2(), testing::w3_minus_z2()}) {
    const int first = root_count_in_disk(p, rng.in_disk(0.95));
    for (int k = 0; k < 20; ++k) EXPECT_EQ(root_count_in_disk(p, rng.in_disk(0.95)), first);
  }
}

TEST(Classify, UnimodularFibersAgreeWithSwapTransform) {
  const BivariatePolynomial p = z3_minus_w2();
  const BivariatePolynomial q = swap_transform(p);
  Rng rng(22);
  for (int k = 0; k < 10; ++k) {
    const cplx z = rng.on_circle();
    // q(z, .) = z^n p(1/z, .) and 1/z = conj(z) on the circle.
    const auto a = fiber_roots(p, std::conj(z));
    const auto b = fiber_roots(q, z);
    ASSERT_EQ(a.size(), b.size());
    for (const cplx x : a) {
      double best = 1.0;
      for (const cplx y : b) best = std::min(best, std::abs(x - y));
      EXPECT_LT(best, 1e-12);
    }
  }
}

TEST(Classify, LabelsCorpus) {
  EXPECT_EQ(classify_zero_set(z3_minus_w2()).label, ZeroLabel::DVDefining);
  EXPECT_EQ(classify_zero_set(testing::w3_minus_z2()).label, ZeroLabel::DVDefining);
  EXPECT_EQ(classify_zero_set(one_minus_z3w2() * kI).label, ZeroLabel::SymmetricNonvanishingOffTorus);
  EXPECT_EQ(classify_zero_set(linear(4.0)).label, ZeroLabel::StableClosed);
  EXPECT_EQ(classify_zero_set(linear(2.0)).label, ZeroLabel::StableOpen);
  EXPECT_EQ(classify_zero_set(derived_dv_poly(z3_minus_w2())).label, ZeroLabel::DVDefining);
}

TEST(Classify, IndeterminateCarriesWitnesses) {
  // z - w/2 vanishes at (0.25, 0.5) inside the bidisk and at (1, 2) outside.
  const BivariatePolynomial p = BivariatePolynomial::from_rows({{0.0, -0.5}, {1.0, 0.0}});
  const ZeroClass c = classify_zero_set(p);
  EXPECT_EQ(c.label, ZeroLabel::Indeterminate);
  EXPECT_FALSE(c.witnesses.empty());
  for (const Point2 x : c.witnesses) EXPECT_LE(std::abs(p(x.z, x.w)), 1e-3);
}

TEST(Classify, AffirmativeLabelsHaveNoWitnesses) {
  for (const auto& p : {z3_minus_w2(), linear(4.0), linear(2.0), one_minus_z3w2()}) {
    const ZeroClass c = classify_zero_set(p);
    if (c.label != ZeroLabel::Indeterminate) EXPECT_TRUE(c.witnesses.empty());
    EXPECT_EQ(c.grid_n, 64);
    EXPECT_DOUBLE_EQ(c.tol, 1e-7);
  }
}

TEST(Classify, SwapTransformExchangesDvAndSymmetricLabels) {
  const BivariatePolynomial dvs[] = {z3_minus_w2(), testing::w3_minus_z2(), derived_dv_poly(z3_minus_w2())};
  for (const auto& p : dvs) {
    ASSERT_EQ(classify_zero_set(p).label, ZeroLabel::DVDefining);
    EXPECT_EQ(classify_zero_set(swap_transform(p)).label, ZeroLabel::SymmetricNonvanishingOffTorus);
  }
  const BivariatePolynomial q = one_minus_z3w2();
  EXPECT_EQ(classify_zero_set(swap_transform(q)).label, ZeroLabel::DVDefining);
}

TEST(Classify, DerivedSymmetricPolynomialKeepsLabel) {
  BivariatePolynomial q = symmetrize(one_minus_z3w2());
  for (int it = 0; it < 2; ++it) {
    q = symmetrize(derived_symmetric_poly(q));
    EXPECT_EQ(classify_zero_set(q).label, ZeroLabel::SymmetricNonvanishingOffTorus);
  }
}

// a q~_z + b q~_w has no zeros in the closed bidisk for a symmetric,
// off-torus nonvanishing q (common zeros of the pair excepted).
TEST(Classify, ReflectedDerivativeCombinationIsNonvanishing) {
  const BivariatePolynomial q = symmetrize(one_minus_z3w2());
  const auto [rqz, rqw] = reflected_derivatives(q);
  Rng rng(23);
  for (int t = 0; t < 5; ++t) {
    const double a = rng.uniform(0.1, 2.0), b = rng.uniform(0.1, 2.0);
    double low = 1e300;
    const auto pts = polar_grid(20, 20, true);
    for (const cplx z : pts) {
      for (const cplx w : pts) low = std::min(low, std::abs(a * rqz(z, w) + b * rqw(z, w)));
    }
    EXPECT_GT(low, 1e-7);
  }
}

TEST(Classify, SquarefreeDetection) {
  EXPECT_TRUE(is_squarefree(z3_minus_w2()));
  EXPECT_FALSE(is_squarefree(testing::zw_minus_one_squared()));
  const ZeroClass c = classify_zero_set(testing::zw_minus_one_squared());
  EXPECT_FALSE(c.squarefree);
  EXPECT_NE(c.label, ZeroLabel::DVDefining);
}

TEST(Classify, NormalizedResultantDetectsCommonRoot) {
  EXPECT_LT(normalized_resultant({-1.0, 1.0}, {-1.0, 0.0, 1.0}), 1e-14);  // share x = 1
  EXPECT_GT(normalized_resultant({-2.0, 1.0}, {-1.0, 0.0, 1.0}), 1e-3);
}

TEST(Classify, TorusSingularities) {
  const SingularityReport smooth = torus_singularities(z3_minus_w2());
  EXPECT_TRUE(smooth.smooth_on_torus);
  EXPECT_TRUE(smooth.points.empty());
  const BivariatePolynomial diag = BivariatePolynomial::from_rows({{0.0, -1.0}, {1.0, 0.0}});  // z - w
  EXPECT_TRUE(torus_singularities(diag).smooth_on_torus);

  const BivariatePolynomial sq = testing::zw_minus_one_squared();
  const SingularityReport s = torus_singularities(sq);
  EXPECT_FALSE(s.smooth_on_torus);
  ASSERT_FALSE(s.points.empty());
  for (const Point2 x : s.points) {
    EXPECT_NEAR(std::abs(x.z), 1.0, 1e-8);
    EXPECT_NEAR(std::abs(x.w), 1.0, 1e-8);
    EXPECT_LE(std::abs(x.z * x.w - 1.0), 1e-4);
  }
}

TEST(Classify, LabelStringsRoundTrip) {
  for (const ZeroLabel l : {ZeroLabel::StableOpen, ZeroLabel::StableClosed, ZeroLabel::DVDefining,
                            ZeroLabel::SymmetricNonvanishingOffTorus, ZeroLabel::Indeterminate}) {
    EXPECT_EQ(zero_label_from_string(to_string(l)), l);
  }
  EXPECT_THROW(zero_label_from_string("Bogus"), Error);
}

}  // namespace
}  // namespace dvkit
