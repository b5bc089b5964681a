#include <benchmark/benchmark.h>

#include <array>

#include "cmsunit/intarith.hpp"
#include "cmsunit/modfun.hpp"
#include "cmsunit/quadclass.hpp"

using namespace cmsunit;

namespace {

void BM_EvalJ(benchmark::State& state) {
  const Discriminant d(-static_cast<std::int64_t>(state.range(0)));
  const QuadForm f = reduced_forms(d).front();
  const mpfr_prec_t prec = initial_precision(d);
  for (auto _ : state) benchmark::DoNotOptimize(eval_j_cm(f, d, prec));
}
BENCHMARK(BM_EvalJ)->Arg(1999)->Arg(19999)->Arg(49999);

void BM_HilbertClassPolynomial(benchmark::State& state) {
  const Discriminant d(-static_cast<std::int64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_class_polynomial(d));
}
BENCHMARK(BM_HilbertClassPolynomial)->Arg(971)->Arg(4999)->Unit(benchmark::kMillisecond);

// One survey step: both j0 of the tables share a single evaluation.
void BM_NormPair(benchmark::State& state) {
  const Discriminant d(-static_cast<std::int64_t>(state.range(0)));
  const std::array<mpz_class, 2> j0s{mpz_class(0), mpz_class(1728)};
  for (auto _ : state) benchmark::DoNotOptimize(norm_differences(d, j0s));
}
BENCHMARK(BM_NormPair)->Arg(4999)->Arg(19999)->Arg(49999)->Unit(benchmark::kMillisecond);

void BM_FactorNorm(benchmark::State& state) {
  const Discriminant d(-static_cast<std::int64_t>(state.range(0)));
  const mpz_class n = norm_difference(d, 0);
  for (auto _ : state) benchmark::DoNotOptimize(factor(n));
}
BENCHMARK(BM_FactorNorm)->Arg(4999)->Arg(49999)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
