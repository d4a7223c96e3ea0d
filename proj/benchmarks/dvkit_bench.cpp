#include <benchmark/benchmark.h>

#include "dvkit/classify.hpp"
#include "dvkit/dvrep.hpp"
#include "dvkit/extend.hpp"
#include "dvkit/moments.hpp"
#include "dvkit/soscert.hpp"

namespace {

using dvkit::BivariatePolynomial;

BivariatePolynomial cusp() { return BivariatePolynomial::monomial(3, 0, 1.0) - BivariatePolynomial::monomial(0, 2, 1.0); }

// c - z - w, stable on the closed bidisk for c > 2.
BivariatePolynomial linear(double c) {
  return BivariatePolynomial::constant(c, {1, 1}) - BivariatePolynomial::monomial(1, 0, 1.0) -
         BivariatePolynomial::monomial(0, 1, 1.0);
}

void BM_MomentsGrid(benchmark::State& state) {
  const BivariatePolynomial q = linear(4.0);
  for (auto _ : state) benchmark::DoNotOptimize(dvkit::compute_moments(q, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MomentsGrid)->Arg(256)->Arg(1024);

void BM_MomentsAdaptive(benchmark::State& state) {
  const BivariatePolynomial q = linear(4.0);
  for (auto _ : state) benchmark::DoNotOptimize(dvkit::compute_moments_adaptive(q));
}
BENCHMARK(BM_MomentsAdaptive);

void BM_Classify(benchmark::State& state) {
  const BivariatePolynomial p = cusp();
  for (auto _ : state) benchmark::DoNotOptimize(dvkit::classify_zero_set(p));
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMillisecond);

void BM_SosCertificate(benchmark::State& state) {
  const BivariatePolynomial q = linear(4.0);
  for (auto _ : state) benchmark::DoNotOptimize(dvkit::sos_certificate(q));
}
BENCHMARK(BM_SosCertificate)->Unit(benchmark::kMillisecond);

void BM_RepresentationPipeline(benchmark::State& state) {
  const BivariatePolynomial p = cusp();
  for (auto _ : state) {
    const dvkit::DvCertificate cert = dvkit::dv_certificate(p);
    const dvkit::VarietySample s = dvkit::sample_variety(cert.p, dvkit::default_sample_count(cert.p.degree()));
    benchmark::DoNotOptimize(dvkit::lurking_isometry(cert, s));
  }
}
BENCHMARK(BM_RepresentationPipeline)->Unit(benchmark::kMillisecond);

void BM_ExtensionBound(benchmark::State& state) {
  const dvkit::DvCertificate cert = dvkit::dv_certificate(cusp());
  const dvkit::VarietySample s = dvkit::sample_variety(cert.p, dvkit::default_sample_count(cert.p.degree()), 7);
  const dvkit::UnitaryRealization rep = dvkit::lurking_isometry(cert, s);
  const dvkit::ExtensionOperator op =
      dvkit::make_extension(rep, cert.qmatrix, BivariatePolynomial::monomial(1, 1, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(dvkit::extension_bound(op));
}
BENCHMARK(BM_ExtensionBound)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
