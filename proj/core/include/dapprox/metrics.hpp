// SPDX-License-Identifier: Apache-2.0
#ifndef DAPPROX_METRICS_HPP
#define DAPPROX_METRICS_HPP

#include <cstdint>

#include "dapprox/signed_measure.hpp"

namespace dapprox {

/// Result of a discrepancy functional. For sup-type metrics argmax_x is the
/// maximizing integer. truncation_error_bound reports the absolute total-mass
/// mismatch, the one quantity that can grow a sup or sum beyond the scanned
/// window (zero for matched masses).
struct DiscrepancyResult {
  double value = 0.0;
  std::int64_t argmax_x = 0;
  double truncation_error_bound = 0.0;
};

/// sup over integers x of (1 + (x-lambda)^2/lambda) |F(x) - A(x)|, scanned
/// over the support union plus one sentinel on each side.
DiscrepancyResult nonuniform_kolmogorov(const SignedMeasure& f, const SignedMeasure& a,
                                        double lambda);

/// Same weight applied to the point-mass differences |f{x} - a{x}|.
DiscrepancyResult nonuniform_local(const SignedMeasure& f, const SignedMeasure& a,
                                   double lambda);

/// Classical (unweighted) sup of |F(x) - A(x)|.
double kolmogorov(const SignedMeasure& f, const SignedMeasure& a);

/// The l1 norm of the pointwise difference, sum |f{j} - a{j}| (twice the
/// probabilistic total-variation distance for probability inputs).
DiscrepancyResult total_variation(const SignedMeasure& f, const SignedMeasure& a);

/// Wasserstein norm sum_j |F(j) - A(j)| with compensated accumulation.
/// Requires total masses equal within 1e-9; otherwise the sum diverges and
/// divergence_error is thrown.
DiscrepancyResult wasserstein_norm(const SignedMeasure& f, const SignedMeasure& a);

}  // namespace dapprox

#endif
