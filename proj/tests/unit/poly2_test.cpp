#include <gtest/gtest.h>

#include "dvkit/error.hpp"
#include "dvkit/poly2.hpp"
#include "test_support.hpp"

namespace dvkit {
namespace {

using testing::linear;
using testing::one_minus_z3w2;
using testing::random_poly;
using testing::z3_minus_w2;

TEST(Poly2, EvaluatesCorpusPoints) {
  EXPECT_EQ(one_minus_z3w2()(0.0, 0.0), cplx(1.0));
  EXPECT_EQ(z3_minus_w2()(1.0, 1.0), cplx(0.0));
  EXPECT_EQ(linear(2.0)(1.0, 1.0), cplx(0.0));
  const BivariatePolynomial p = BivariatePolynomial::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  const cplx z(0.3, -0.2), w(-0.5, 0.7);
  EXPECT_NEAR(std::abs(p(z, w) - (1.0 + 2.0 * w + 3.0 * z + 4.0 * z * w)), 0.0, 1e-15);
}

TEST(Poly2, PartialDerivativesFollowPowerRule) {
  const BivariatePolynomial pz = partial_z(z3_minus_w2());
  EXPECT_EQ(pz.degree(), (Degree{2, 2}));
  EXPECT_EQ(max_coeff_distance(pz, BivariatePolynomial::monomial(2, 0, 3.0)), 0.0);
  const BivariatePolynomial pw = partial_w(z3_minus_w2());
  EXPECT_EQ(pw.degree(), (Degree{3, 1}));
  EXPECT_EQ(max_coeff_distance(pw, BivariatePolynomial::monomial(0, 1, -2.0)), 0.0);
  EXPECT_EQ(max_coeff_distance(partial_z(one_minus_z3w2()), BivariatePolynomial::monomial(2, 2, -3.0)), 0.0);
}

TEST(Poly2, DerivativeOfDegreeZeroClampsToZero) {
  const BivariatePolynomial p = BivariatePolynomial::from_rows({{1.0, 2.0, 3.0}});
  const BivariatePolynomial pz = partial_z(p);
  EXPECT_EQ(pz.degree(), (Degree{0, 2}));
  EXPECT_TRUE(pz.is_zero());
}

TEST(Poly2, ReflectsAtDeclaredDegree) {
  const BivariatePolynomial r = reflect(linear(2.0));
  EXPECT_EQ(max_coeff_distance(r, BivariatePolynomial::from_rows({{0.0, -1.0}, {-1.0, 2.0}})), 0.0);
  EXPECT_EQ(max_coeff_distance(reflect(one_minus_z3w2()), one_minus_z3w2() * cplx(-1.0)), 0.0);
  // Padding: 1 reflected at (1, 2) is z w^2.
  EXPECT_EQ(max_coeff_distance(reflect(BivariatePolynomial::constant(1.0, {0, 0}), {1, 2}),
                               BivariatePolynomial::monomial(1, 2)),
            0.0);
}

TEST(Poly2, ReflectBelowTrueDegreeThrows) {
  try {
    reflect(z3_minus_w2(), {2, 2});
    FAIL() << "expected DegreeMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeMismatch);
  }
}

TEST(Poly2, ReflectIsAnExactInvolution) {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const Degree d{testing::random_int(rng, 6), testing::random_int(rng, 6)};
    const BivariatePolynomial p = random_poly(rng, d);
    EXPECT_EQ(reflect(reflect(p)), p);
  }
}

TEST(Poly2, ReflectionPreservesModulusOnTorus) {
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const BivariatePolynomial p = random_poly(rng, {testing::random_int(rng, 5), testing::random_int(rng, 5)});
    const BivariatePolynomial r = reflect(p);
    for (int k = 0; k < 10; ++k) {
      const cplx z = rng.on_circle(), w = rng.on_circle();
      EXPECT_LE(std::abs(std::abs(p(z, w)) - std::abs(r(z, w))), 1e-12 * p.scale());
    }
  }
}

TEST(Poly2, ReflectedDerivativesOfCorpus) {
  const auto [qz, qw] = reflected_derivatives(one_minus_z3w2());
  EXPECT_EQ(qz.degree(), (Degree{2, 2}));
  EXPECT_EQ(qw.degree(), (Degree{3, 1}));
  EXPECT_EQ(max_coeff_distance(qz, BivariatePolynomial::constant(-3.0, {0, 0})), 0.0);
  EXPECT_EQ(max_coeff_distance(qw, BivariatePolynomial::constant(-2.0, {0, 0})), 0.0);

  const auto [cz, cw] = reflected_derivatives(BivariatePolynomial::constant(4.0, {2, 3}));
  EXPECT_TRUE(cz.is_zero());
  EXPECT_TRUE(cw.is_zero());
}

// z d/dz(q~) + reflect(q_z) = n q~ and the w-analogue, for every q.
TEST(Poly2, ReflectionDerivativeFormulasHoldOnCoefficients) {
  Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    const Degree d{1 + testing::random_int(rng, 5), 1 + testing::random_int(rng, 5)};
    const BivariatePolynomial q = random_poly(rng, d);
    const BivariatePolynomial qt = reflect(q);
    const auto [rqz, rqw] = reflected_derivatives(q);
    const BivariatePolynomial lhs_z = times_z(partial_z(qt)) + rqz - qt * cplx(d.z);
    const BivariatePolynomial lhs_w = times_w(partial_w(qt)) + rqw - qt * cplx(d.w);
    EXPECT_LE(lhs_z.scale(), 1e-12 * q.scale());
    EXPECT_LE(lhs_w.scale(), 1e-12 * q.scale());
  }
}

// For symmetric q:
// N^2|q|^2 - 2N Re(L conj q) = |a q~_z + b q~_w|^2 - |L|^2,
// with N = an + bm and L = a z q_z + b w q_w, at arbitrary points of C^2.
TEST(Poly2, ModulusIdentityForSymmetricPolynomials) {
  Rng rng(14);
  for (int t = 0; t < 50; ++t) {
    const Degree d{1 + testing::random_int(rng, 5), 1 + testing::random_int(rng, 5)};
    const BivariatePolynomial q = testing::random_symmetric(rng, d);
    const auto [rqz, rqw] = reflected_derivatives(q);
    const BivariatePolynomial qz = partial_z(q), qw = partial_w(q);
    const double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
    const double big_n = a * d.z + b * d.w;
    for (int k = 0; k < 4; ++k) {
      const cplx z = rng.in_disk(1.3), w = rng.in_disk(1.3);
      const cplx qv = q(z, w);
      const cplx l = a * z * qz(z, w) + b * w * qw(z, w);
      const double lhs = big_n * big_n * std::norm(qv) - 2.0 * big_n * std::real(l * std::conj(qv));
      const double rhs = std::norm(a * rqz(z, w) + b * rqw(z, w)) - std::norm(l);
      const double scale = q.scale();
      EXPECT_LE(std::abs(lhs - rhs), 1e-9 * scale * scale * (1.0 + std::abs(lhs)));
    }
  }
}

TEST(Poly2, SymmetryAnalysisOfCorpus) {
  const SymmetryResult s = symmetry_analysis(one_minus_z3w2());
  ASSERT_EQ(s.kind, SymmetryKind::EssentiallyT2Symmetric);
  EXPECT_NEAR(std::abs(*s.constant - cplx(-1.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(*s.symmetrizing_factor - kI), 0.0, 1e-14);

  const SymmetryResult v = symmetry_analysis(z3_minus_w2());
  ASSERT_EQ(v.kind, SymmetryKind::EssentiallyT2Symmetric);
  EXPECT_NEAR(std::abs(*v.constant - cplx(-1.0)), 0.0, 1e-14);

  EXPECT_EQ(symmetry_analysis(linear(2.0)).kind, SymmetryKind::NotSymmetric);
  EXPECT_EQ(symmetry_analysis(testing::zw_minus_one_squared()).kind, SymmetryKind::T2Symmetric);
}

TEST(Poly2, SymmetrizingFactorSquaresToConjugateConstant) {
  Rng rng(15);
  for (int t = 0; t < 20; ++t) {
    const BivariatePolynomial base = testing::random_symmetric(rng, {2, 3});
    const cplx phase = rng.on_circle();
    const SymmetryResult s = symmetry_analysis(base * phase);
    ASSERT_NE(s.kind, SymmetryKind::NotSymmetric);
    EXPECT_NEAR(std::abs(*s.constant), 1.0, 1e-12);
    const cplx f = *s.symmetrizing_factor;
    EXPECT_NEAR(std::abs(f * f - std::conj(*s.constant)), 0.0, 1e-12);
    EXPECT_GE(f.real(), 0.0);
    const BivariatePolynomial sq = symmetrize(base * phase);
    EXPECT_LE(max_coeff_distance(sq, reflect(sq)), 1e-12 * sq.scale());
  }
}

TEST(Poly2, SymmetrizeExamples) {
  EXPECT_LE(max_coeff_distance(symmetrize(one_minus_z3w2()), one_minus_z3w2() * kI), 1e-15);
  EXPECT_LE(max_coeff_distance(symmetrize(z3_minus_w2()), z3_minus_w2() * kI), 1e-15);
  const BivariatePolynomial sym = testing::zw_minus_one_squared();
  EXPECT_EQ(symmetrize(sym), sym);
  EXPECT_THROW(symmetrize(linear(2.0)), Error);
}

TEST(Poly2, SwapTransformReversesZIndex) {
  EXPECT_EQ(max_coeff_distance(swap_transform(z3_minus_w2()), one_minus_z3w2()), 0.0);
  EXPECT_EQ(max_coeff_distance(swap_transform(one_minus_z3w2()), z3_minus_w2()), 0.0);
  Rng rng(16);
  for (int t = 0; t < 20; ++t) {
    const BivariatePolynomial p = random_poly(rng, {1 + testing::random_int(rng, 4), testing::random_int(rng, 4)});
    EXPECT_EQ(swap_transform(swap_transform(p)), p);
  }
  EXPECT_THROW(swap_transform(BivariatePolynomial::monomial(0, 1, 1.0, Degree{2, 1})), Error);
}

TEST(Poly2, SwapTransformPreservesEssentialSymmetry) {
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    const BivariatePolynomial q = testing::random_symmetric(rng, {3, 2}) * rng.on_circle();
    ASSERT_NE(symmetry_analysis(q).kind, SymmetryKind::NotSymmetric);
    EXPECT_NE(symmetry_analysis(swap_transform(q)).kind, SymmetryKind::NotSymmetric);
  }
}

TEST(Poly2, DerivedPolynomials) {
  const BivariatePolynomial dv = derived_dv_poly(z3_minus_w2());
  EXPECT_EQ(dv.degree(), (Degree{3, 2}));
  EXPECT_EQ(max_coeff_distance(dv, BivariatePolynomial::monomial(3, 0, 6.0, Degree{3, 2}) +
                                       BivariatePolynomial::monomial(0, 2, 6.0)),
            0.0);
  const BivariatePolynomial ds = derived_symmetric_poly(one_minus_z3w2());
  EXPECT_EQ(max_coeff_distance(ds, BivariatePolynomial::constant(6.0, {3, 2}) +
                                       BivariatePolynomial::monomial(3, 2, 6.0)),
            0.0);
  const BivariatePolynomial k = BivariatePolynomial::constant(2.0, {2, 3});
  EXPECT_EQ(max_coeff_distance(derived_symmetric_poly(k), k * cplx(6.0)), 0.0);
}

TEST(Poly2, DerivativeMatchesCentralDifferences) {
  Rng rng(18);
  const double h = 1e-5;
  for (int t = 0; t < 20; ++t) {
    const BivariatePolynomial p = random_poly(rng, {testing::random_int(rng, 4), testing::random_int(rng, 4)});
    const BivariatePolynomial pz = partial_z(p), pw = partial_w(p);
    const cplx z = rng.in_disk(0.9), w = rng.in_disk(0.9);
    const cplx fdz = (p(z + h, w) - p(z - h, w)) / (2.0 * h);
    const cplx fdw = (p(z, w + h) - p(z, w - h)) / (2.0 * h);
    EXPECT_LE(std::abs(pz(z, w) - fdz), 1e-7 * p.scale());
    EXPECT_LE(std::abs(pw(z, w) - fdw), 1e-7 * p.scale());
  }
}

TEST(Poly2, ProductAndArithmetic) {
  const BivariatePolynomial a = BivariatePolynomial::from_rows({{1.0, -1.0}});  // 1 - w
  const BivariatePolynomial b = BivariatePolynomial::from_rows({{1.0}, {-1.0}});  // 1 - z
  const BivariatePolynomial ab = a * b;
  EXPECT_EQ(ab.degree(), (Degree{1, 1}));
  EXPECT_EQ(max_coeff_distance(ab, BivariatePolynomial::from_rows({{1.0, -1.0}, {-1.0, 1.0}})), 0.0);
  EXPECT_EQ(max_coeff_distance(dilate(ab, 0.5), BivariatePolynomial::from_rows({{1.0, -0.5}, {-0.5, 0.25}})),
            0.0);
  EXPECT_EQ(swap_variables(a), b);
  EXPECT_EQ(z3_minus_w2().true_degree(), (Degree{3, 2}));
  EXPECT_EQ(BivariatePolynomial::constant(1.0, {4, 4}).true_degree(), (Degree{0, 0}));
}

}  // namespace
}  // namespace dvkit
