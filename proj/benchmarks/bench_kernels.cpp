#include <benchmark/benchmark.h>

#include "gippa/cpcp/instance.hpp"
#include "gippa/cpcp/solver.hpp"
#include "gippa/numkit/measurement.hpp"
#include "gippa/numkit/rng.hpp"
#include "gippa/numkit/svd.hpp"

using namespace gippa;

static void BM_Svd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  numkit::SeededRng rng(1);
  const auto a = numkit::rng_normal(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(numkit::svd(a));
}
BENCHMARK(BM_Svd)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_MeasurementRoundTrip(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  numkit::SeededRng rng(2);
  const auto op = numkit::make_measurement_op(numkit::TransformKind::DCT2, n, n, (n * n * 6) / 10, rng);
  const auto x = numkit::rng_normal(rng, n, n);
  for (auto _ : state) {
    auto b = op.apply(x);
    benchmark::DoNotOptimize(op.adjoint(b));
  }
}
BENCHMARK(BM_MeasurementRoundTrip)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_CpcpIterations(benchmark::State& state) {
  cpcp::InstanceSpec spec;
  spec.m = spec.n = static_cast<std::size_t>(state.range(0));
  spec.r = 5;
  spec.nnz = spec.m * spec.n / 20;
  spec.q = spec.m * spec.n * 6 / 10;
  spec.seed = 3;
  const auto inst = cpcp::generate_instance(spec);
  cpcp::CpcpOptions opt;
  opt.stop = vi::StopRule{0.0, 10};
  for (auto _ : state) benchmark::DoNotOptimize(cpcp::ladmm_cpcp(inst, opt));
}
BENCHMARK(BM_CpcpIterations)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
