// SPDX-License-Identifier: Apache-2.0
#include "dapprox/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "dapprox/detail/compensated.hpp"
#include "dapprox/errors.hpp"

namespace dapprox {

namespace {

struct ScanRange {
  std::int64_t lo;
  std::int64_t hi;
};

ScanRange union_range(const SignedMeasure& f, const SignedMeasure& a) {
  return {std::min(f.min_support(), a.min_support()),
          std::max(f.max_support(), a.max_support())};
}

double mass_mismatch(const SignedMeasure& f, const SignedMeasure& a) {
  return std::abs(f.total_mass() - a.total_mass());
}

double weight_at(std::int64_t x, double lambda) {
  const double d = static_cast<double>(x) - lambda;
  return 1.0 + d * d / lambda;
}

}  // namespace

DiscrepancyResult nonuniform_kolmogorov(const SignedMeasure& f, const SignedMeasure& a,
                                        double lambda) {
  if (!(lambda > 0.0)) throw domain_error("nonuniform_kolmogorov: lambda must be positive");
  const auto [lo, hi] = union_range(f, a);
  detail::CompensatedSum cdf_diff;
  DiscrepancyResult result;
  result.argmax_x = lo - 1;
  result.truncation_error_bound = mass_mismatch(f, a);
  for (std::int64_t x = lo - 1; x <= hi + 1; ++x) {
    cdf_diff.add(f.at(x) - a.at(x));
    const double v = weight_at(x, lambda) * std::abs(cdf_diff.value());
    if (v > result.value) {
      result.value = v;
      result.argmax_x = x;
    }
  }
  return result;
}

DiscrepancyResult nonuniform_local(const SignedMeasure& f, const SignedMeasure& a,
                                   double lambda) {
  if (!(lambda > 0.0)) throw domain_error("nonuniform_local: lambda must be positive");
  const auto [lo, hi] = union_range(f, a);
  DiscrepancyResult result;
  result.argmax_x = lo;
  for (std::int64_t x = lo; x <= hi; ++x) {
    const double v = weight_at(x, lambda) * std::abs(f.at(x) - a.at(x));
    if (v > result.value) {
      result.value = v;
      result.argmax_x = x;
    }
  }
  return result;
}

double kolmogorov(const SignedMeasure& f, const SignedMeasure& a) {
  const auto [lo, hi] = union_range(f, a);
  detail::CompensatedSum cdf_diff;
  double worst = 0.0;
  for (std::int64_t x = lo; x <= hi; ++x) {
    cdf_diff.add(f.at(x) - a.at(x));
    worst = std::max(worst, std::abs(cdf_diff.value()));
  }
  return worst;
}

DiscrepancyResult total_variation(const SignedMeasure& f, const SignedMeasure& a) {
  const auto [lo, hi] = union_range(f, a);
  detail::CompensatedSum sum;
  DiscrepancyResult result;
  result.argmax_x = lo;
  double worst = -1.0;
  for (std::int64_t x = lo; x <= hi; ++x) {
    const double d = std::abs(f.at(x) - a.at(x));
    sum.add(d);
    if (d > worst) {
      worst = d;
      result.argmax_x = x;
    }
  }
  result.value = sum.value();
  return result;
}

DiscrepancyResult wasserstein_norm(const SignedMeasure& f, const SignedMeasure& a) {
  const double mismatch = mass_mismatch(f, a);
  if (mismatch > 1e-9) {
    throw divergence_error(
        "wasserstein_norm: total masses differ by " + std::to_string(mismatch) +
        "; the defining series diverges");
  }
  const auto [lo, hi] = union_range(f, a);
  detail::CompensatedSum cdf_diff, sum;
  DiscrepancyResult result;
  result.argmax_x = lo;
  result.truncation_error_bound = mismatch;
  double worst = -1.0;
  for (std::int64_t x = lo; x <= hi; ++x) {
    cdf_diff.add(f.at(x) - a.at(x));
    const double d = std::abs(cdf_diff.value());
    sum.add(d);
    if (d > worst) {
      worst = d;
      result.argmax_x = x;
    }
  }
  result.value = sum.value();
  return result;
}

}  // namespace dapprox
