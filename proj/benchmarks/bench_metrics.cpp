// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "dapprox/families.hpp"
#include "dapprox/metrics.hpp"

namespace {

using dapprox::FamilyParams;

void BM_Wasserstein(benchmark::State& state) {
  const double lambda = static_cast<double>(state.range(0));
  const auto a = dapprox::poisson(FamilyParams{.lambda = lambda});
  const auto b = dapprox::compound_poisson(FamilyParams{.lambda = lambda, .gamma2 = 0.02 * lambda});
  for (auto _ : state) {
    benchmark::DoNotOptimize(dapprox::wasserstein_norm(a, b));
  }
}
BENCHMARK(BM_Wasserstein)->Arg(10)->Arg(100)->Arg(1000);

void BM_NonuniformKolmogorov(benchmark::State& state) {
  const double lambda = static_cast<double>(state.range(0));
  const auto a = dapprox::poisson(FamilyParams{.lambda = lambda});
  const auto b = dapprox::compound_poisson(FamilyParams{.lambda = lambda, .gamma2 = 0.02 * lambda});
  for (auto _ : state) {
    benchmark::DoNotOptimize(dapprox::nonuniform_kolmogorov(a, b, lambda));
  }
}
BENCHMARK(BM_NonuniformKolmogorov)->Arg(10)->Arg(100)->Arg(1000);

}  // namespace
