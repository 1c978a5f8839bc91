// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "dapprox/families.hpp"

namespace {

using dapprox::FamilyParams;

void BM_Poisson(benchmark::State& state) {
  FamilyParams params{.lambda = static_cast<double>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dapprox::poisson(params));
  }
}
BENCHMARK(BM_Poisson)->Arg(10)->Arg(100)->Arg(1000)->Arg(10000);

void BM_CompoundPoisson(benchmark::State& state) {
  FamilyParams params{.lambda = static_cast<double>(state.range(0)), .gamma2 = -0.05 * static_cast<double>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dapprox::compound_poisson(params));
  }
}
BENCHMARK(BM_CompoundPoisson)->Arg(10)->Arg(100)->Arg(1000);

void BM_NegativeBinomial(benchmark::State& state) {
  FamilyParams params{.lambda = static_cast<double>(state.range(0)), .gamma2 = 0.04 * static_cast<double>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dapprox::negative_binomial(params));
  }
}
BENCHMARK(BM_NegativeBinomial)->Arg(10)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
