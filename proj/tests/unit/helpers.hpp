// SPDX-License-Identifier: Apache-2.0
#ifndef DAPPROX_TESTS_HELPERS_HPP
#define DAPPROX_TESTS_HELPERS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "dapprox/signed_measure.hpp"

namespace dapprox::testing {

/// Random probability measure with a small support at a random offset.
inline SignedMeasure random_probability_measure(std::mt19937& rng, int max_len = 12,
                                                std::int64_t offset_span = 6) {
  std::uniform_int_distribution<int> len_dist(1, max_len);
  std::uniform_int_distribution<std::int64_t> off_dist(-offset_span, offset_span);
  std::uniform_real_distribution<double> mass_dist(0.0, 1.0);
  const int len = len_dist(rng);
  std::vector<double> w(static_cast<std::size_t>(len));
  double total = 0.0;
  for (double& x : w) {
    x = mass_dist(rng) + 1e-6;
    total += x;
  }
  for (double& x : w) x /= total;
  return SignedMeasure(off_dist(rng), std::move(w));
}

/// Random signed measure (weights of either sign), not normalized.
inline SignedMeasure random_signed_measure(std::mt19937& rng, int max_len = 10) {
  std::uniform_int_distribution<int> len_dist(1, max_len);
  std::uniform_real_distribution<double> w_dist(-1.0, 1.0);
  std::uniform_int_distribution<std::int64_t> off_dist(-4, 4);
  const int len = len_dist(rng);
  std::vector<double> w(static_cast<std::size_t>(len));
  for (double& x : w) x = w_dist(rng);
  return SignedMeasure(off_dist(rng), std::move(w));
}

inline std::vector<double> random_bernoulli_probs(std::mt19937& rng, std::size_t n, double lo,
                                                  double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> p(n);
  for (double& x : p) x = dist(rng);
  return p;
}

}  // namespace dapprox::testing

#endif
