#include <gtest/gtest.h>

#include "dvkit/blaschke.hpp"
#include "dvkit/dvrep.hpp"
#include "dvkit/error.hpp"
#include "dvkit/extend.hpp"
#include "test_support.hpp"

namespace dvkit {
namespace {

using testing::z3_minus_w2;

// Pipeline state for V(z^3 - w^2), built once.
struct Cusp {
  DvCertificate cert;
  VarietySample sample;
  UnitaryRealization rep;

  static const Cusp& get() {
    static const Cusp c = [] {
      Cusp out{dv_certificate(z3_minus_w2()), {}, {}};
      out.sample = sample_variety(out.cert.p, default_sample_count(out.cert.p.degree()), 7);
      out.rep = lurking_isometry(out.cert, out.sample);
      return out;
    }();
    return c;
  }

  ExtensionOperator op(const BivariatePolynomial& f) const { return make_extension(rep, cert.qmatrix, f); }
};

BivariatePolynomial mono(int i, int j, cplx c = 1.0) { return BivariatePolynomial::monomial(i, j, c); }

TEST(EvalFOfPair, ScalarAndMatrixTerms) {
  const cplx z(0.4, 0.1);
  CMatrix phi(2, 2);
  phi << 0.0, 1.0, z * z * z, 0.0;
  EXPECT_LE((eval_f_of_pair(mono(1, 0), z, phi) - z * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-16);
  EXPECT_LE((eval_f_of_pair(mono(0, 1), z, phi) - phi).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_LE((eval_f_of_pair(mono(0, 2), z, phi) - z * z * z * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(),
            1e-16);
  const BivariatePolynomial f = BivariatePolynomial::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  const CMatrix want = CMatrix::Identity(2, 2) * (1.0 + 3.0 * z) + phi * (2.0 + 4.0 * z);
  EXPECT_LE((eval_f_of_pair(f, z, phi) - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SupNormOnVariety, CuspExamples) {
  const BivariatePolynomial p = z3_minus_w2();
  EXPECT_NEAR(sup_norm_on_variety(mono(0, 1), p), 1.0, 1e-12);
  EXPECT_NEAR(sup_norm_on_variety(BivariatePolynomial::constant(cplx(0.0, -2.5), {0, 0}), p), 2.5, 1e-12);
  EXPECT_NEAR(sup_norm_on_variety(mono(1, 0) + mono(0, 1), p), 2.0, 1e-9);
}

TEST(Extension, AgreesWithFOnVariety) {
  const Cusp& c = Cusp::get();
  const ExtensionOperator op = c.op(mono(0, 1));
  for (const Point2 x : c.sample.points) EXPECT_NEAR(std::abs(extend(op, x.z, x.w) - x.w), 0.0, 1e-8);
}

TEST(Extension, FunctionOfZExtendsToItself) {
  const ExtensionOperator op = Cusp::get().op(mono(1, 0));
  for (const cplx z : polar_grid(8, 16, true)) {
    for (const cplx w : polar_grid(4, 8, true)) EXPECT_NEAR(std::abs(extend(op, z, w) - z), 0.0, 1e-12);
  }
}

TEST(Extension, CuspConstantIsSqrtTwo) {
  const BoundReport b = extension_bound(Cusp::get().op(mono(1, 1)));
  EXPECT_NEAR(b.C, std::sqrt(2.0), 1e-6);
  EXPECT_LE(b.interior_excess, 1e-9);
  EXPECT_LE(b.per_point_bound, b.C + 1e-9);
}

TEST(Extension, CuspMonomialCorpus) {
  const Cusp& c = Cusp::get();
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      const ExtensionReport r = verify_extension(c.op(mono(i, j)), c.cert.p, c.sample, 32);
      EXPECT_TRUE(r.passed) << "z^" << i << " w^" << j;
      EXPECT_LE(r.on_variety_residual, 1e-7 * (1.0 + r.sup_f_on_variety));
      EXPECT_LE(r.sup_F_on_bidisk, r.bound.C * r.sup_f_on_variety + 1e-6);
    }
  }
}

TEST(Extension, RandomPolynomialCorpus) {
  const Cusp& c = Cusp::get();
  Rng rng(51);
  for (int t = 0; t < 20; ++t) {
    const BivariatePolynomial f = testing::random_poly(rng, {testing::random_int(rng, 3), testing::random_int(rng, 3)});
    const ExtensionReport r = verify_extension(c.op(f), c.cert.p, c.sample, 24);
    EXPECT_TRUE(r.passed) << "trial " << t;
    EXPECT_LE(r.sup_F_on_bidisk, r.bound.C * r.sup_f_on_variety + 1e-6 * f.scale());
  }
}

TEST(Extension, OperatorNormOfFunctionalCalculus) {
  const Cusp& c = Cusp::get();
  const BivariatePolynomial f = mono(1, 0) + mono(0, 1) + mono(2, 1, cplx(0.0, 0.5));
  const double sup_v = sup_norm_on_variety(f, c.cert.p);
  Rng rng(52);
  for (int k = 0; k < 100; ++k) {
    const cplx z = rng.in_disk();
    const CMatrix m = eval_f_of_pair(f, z, phi_evaluate(c.rep, z));
    EXPECT_LE(Eigen::JacobiSVD<CMatrix>(m).singularValues()(0), sup_v + 1e-7);
  }
}

TEST(Extension, IsLinearInF) {
  const Cusp& c = Cusp::get();
  Rng rng(53);
  const BivariatePolynomial f = testing::random_poly(rng, {2, 3});
  const BivariatePolynomial g = testing::random_poly(rng, {3, 1});
  const ExtensionOperator of = c.op(f), og = c.op(g), ofg = c.op(f + g);
  for (int k = 0; k < 30; ++k) {
    const cplx z = rng.in_disk(), w = rng.in_disk();
    const cplx sum = extend(of, z, w) + extend(og, z, w);
    EXPECT_LE(std::abs(extend(ofg, z, w) - sum), 1e-10 * (1.0 + std::abs(sum)));
  }
}

TEST(Extension, ZeroFunctionExtendsToZero) {
  const Cusp& c = Cusp::get();
  const ExtensionReport r =
      verify_extension(c.op(BivariatePolynomial::constant(0.0, {0, 0})), c.cert.p, c.sample, 16);
  EXPECT_EQ(r.on_variety_residual, 0.0);
  EXPECT_EQ(r.sup_F_on_bidisk, 0.0);
  EXPECT_EQ(r.sup_f_on_variety, 0.0);
  EXPECT_TRUE(r.passed);
}

TEST(Extension, SwappedPipelineConstant) {
  const auto c = swapped_constant(z3_minus_w2());
  ASSERT_TRUE(c.has_value());
  EXPECT_NEAR(*c, std::sqrt(3.0), 1e-6);
  EXPECT_FALSE(swapped_constant(testing::one_minus_z3w2()).has_value());
}

TEST(Extension, BlaschkeFamilyConstantIsSqrtM) {
  for (const BlaschkeProduct& b : {BlaschkeProduct{{0.0, 0.0, 0.0}}, BlaschkeProduct{{0.5, 0.0}}}) {
    for (const int m : {2, 3}) {
      const BivariatePolynomial p = blaschke_variety(b, m);
      const ExtensionOperator op = make_extension(companion_realization(b, m), identity_qmatrix(m), mono(1, 1));
      EXPECT_NEAR(extension_bound(op).C, std::sqrt(static_cast<double>(m)), 1e-12);
      const VarietySample s = sample_variety(p, 30);
      EXPECT_TRUE(verify_extension(op, p, s, 24).passed);
    }
  }
}

TEST(Extension, SizeMismatchIsRejected) {
  const Cusp& c = Cusp::get();
  try {
    make_extension(c.rep, identity_qmatrix(3), mono(0, 1));
    FAIL() << "expected InvalidArgument";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

}  // namespace
}  // namespace dvkit
