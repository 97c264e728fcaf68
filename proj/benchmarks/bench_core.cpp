#include <benchmark/benchmark.h>

#include "sosc/certificates.hpp"
#include "sosc/corpus.hpp"
#include "sosc/dual.hpp"
#include "sosc/face.hpp"
#include "sosc/search.hpp"

using namespace sosc;

namespace {

Form face_member() {
  const face::FaceParams fp{1, 1};
  face::AlphaVector alpha{2, 3, Rational(1, 2), 5, 0};
  alpha[4] = face::alpha5_lower_bound(alpha, fp) / 2;
  return face::combine(alpha, fp);
}

void BM_LdltReferenceGram(benchmark::State& state) {
  const SymRationalMatrix q = corpus::q22_certificate().q;
  for (auto _ : state) benchmark::DoNotOptimize(ldlt_psd_check(q));
}
BENCHMARK(BM_LdltReferenceGram);

void BM_GramExpandReference(benchmark::State& state) {
  const SosCertificate cert = corpus::q22_certificate();
  for (auto _ : state) benchmark::DoNotOptimize(gram_expand(cert.z, cert.q));
}
BENCHMARK(BM_GramExpandReference);

void BM_VerifyReferenceCertificate(benchmark::State& state) {
  const SosCertificate cert = corpus::q22_certificate();
  const BiquadraticForm b = corpus::b_thm22();
  for (auto _ : state) benchmark::DoNotOptimize(verify_sos_certificate(b, cert));
}
BENCHMARK(BM_VerifyReferenceCertificate);

void BM_VerifyDualCertificate(benchmark::State& state) {
  const DualCertificate c = corpus::b22_dual();
  const BiquadraticForm b = corpus::b_thm22();
  for (auto _ : state) benchmark::DoNotOptimize(verify_refutation(c, b));
}
BENCHMARK(BM_VerifyDualCertificate);

void BM_Jacobi(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 1.0 / static_cast<double>(i + j + 1);
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigendecomposition(a));
}
BENCHMARK(BM_Jacobi)->Arg(9)->Arg(15)->Arg(30);

void BM_AlternatingProjectionMember(benchmark::State& state) {
  const GramParameterization pz = parameterize(hessian_form(face_member()), bidegree_monomials(3, 3, 1, 1));
  SearchConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(alternating_projection_solve(pz, cfg));
}
BENCHMARK(BM_AlternatingProjectionMember)->Unit(benchmark::kMillisecond);

void BM_AlternatingProjectionCounterexample(benchmark::State& state) {
  const GramParameterization pz = parameterize(corpus::b_thm22().to_form(), bidegree_monomials(3, 3, 1, 1));
  SearchConfig cfg;
  cfg.max_iterations = 10000;
  for (auto _ : state) benchmark::DoNotOptimize(alternating_projection_solve(pz, cfg));
}
BENCHMARK(BM_AlternatingProjectionCounterexample)->Unit(benchmark::kMillisecond);

void BM_CheckSosConvexity(benchmark::State& state) {
  const Form p = face_member();
  for (auto _ : state) benchmark::DoNotOptimize(check_sos_convexity(p, SearchConfig{}));
}
BENCHMARK(BM_CheckSosConvexity)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
