// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <vector>

#include "dapprox/models.hpp"
#include "dapprox/moments.hpp"

namespace {

void BM_PoissonBinomialLaw(benchmark::State& state) {
  const std::vector<double> p(static_cast<std::size_t>(state.range(0)), 0.005);
  const dapprox::OneDependentModel model = dapprox::poisson_binomial_model(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dapprox::exact_sum_distribution(model));
  }
}
BENCHMARK(BM_PoissonBinomialLaw)->Arg(500)->Arg(2000)->Arg(8000);

void BM_TwoRunsLaw(benchmark::State& state) {
  const dapprox::OneDependentModel model = dapprox::two_runs_model(state.range(0), 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dapprox::exact_sum_distribution(model));
  }
}
BENCHMARK(BM_TwoRunsLaw)->Arg(400)->Arg(1600)->Arg(6400);

void BM_Summarize(benchmark::State& state) {
  const dapprox::OneDependentModel model = dapprox::two_runs_model(state.range(0), 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dapprox::summarize(model));
  }
}
BENCHMARK(BM_Summarize)->Arg(400)->Arg(1600)->Arg(6400);

void BM_BruteForce(benchmark::State& state) {
  const dapprox::OneDependentModel model = dapprox::two_runs_model(state.range(0), 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dapprox::brute_force_sum(model));
  }
}
BENCHMARK(BM_BruteForce)->Arg(12)->Arg(16)->Arg(20);

}  // namespace
