// SPDX-License-Identifier: Apache-2.0
#ifndef DAPPROX_MOMENTS_HPP
#define DAPPROX_MOMENTS_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "dapprox/joint_law.hpp"
#include "dapprox/models.hpp"

namespace dapprox {

/// Outcome of the six admissibility clauses the error bounds assume:
/// per-summand nu_1(k) <= 1/100, nu_2(k) <= nu_1(k), |X_k| <= C0, and the
/// aggregates lambda >= 1, sum nu_2 <= lambda/20, sum |Cov| <= lambda/20.
/// Violations are data, not errors.
struct ConditionReport {
  bool nu1_small = true;
  std::int64_t nu1_violation = 0;  // first violating k, 0 if none
  bool nu2_le_nu1 = true;
  std::int64_t nu2_violation = 0;
  int c0 = 0;  // structural bound, satisfied by construction
  bool lambda_ge_one = true;
  bool nu2_sum_small = true;
  bool cov_sum_small = true;

  bool all() const {
    return nu1_small && nu2_le_nu1 && lambda_ge_one && nu2_sum_small && cov_sum_small;
  }
};

/// Mean, variance, the dispersion parameter gamma2 = (Var - E)/2 with its
/// integer/fractional split, the factorial-moment table, the remainder
/// aggregates r0/r1 and the condition flags, all computed exactly from the
/// model's joint triples.
struct MomentSummary {
  double lambda = 0.0;
  double variance = 0.0;
  double gamma2 = 0.0;
  double delta_tilde = 0.0;     // fractional part of -2*gamma2, in [0,1)
  std::int64_t tp_shift = 0;    // floor(-2*gamma2)
  std::vector<std::array<double, 3>> nu;  // nu[k-1] = {nu_1(k), nu_2(k), nu_3(k)}
  double cov_sum = 0.0;         // sum over k >= 2 of |Cov(X_{k-1}, X_k)|
  double r0 = 0.0;
  double r1 = 0.0;
  ConditionReport conditions;
};

/// j-th factorial moment E X_k (X_k - 1) ... (X_k - j + 1); zero for k <= 0.
double factorial_moment(const OneDependentModel& model, std::int64_t k, int order);

/// Heinrich's centered mixed moment: E(Y1) for arity 1 and, recursively,
/// E[Y1...Yk] - sum_j Ehat(Y1..Yj) E[Y_{j+1}...Yk]. Vanishes for arity >= 2
/// under independence. Arity 1 to 4.
double centered_mixed_e(const JointLaw& law);

/// Same recursion with all plus signs; a nonnegative envelope for bounded
/// nonnegative variables. Arity 1 to 4.
double e_plus(const JointLaw& law);

/// Second-factorial pair variant: the all-plus recursion applied to
/// (Y1(Y1-1), Y2) plus (Y1, Y2(Y2-1)). Zero for 0/1-valued coordinates.
double e_plus_2(const JointLaw& pair_law);

/// Centered second-factorial triple variant: Ehat(Y1(Y1-1), Y2, Y3) plus
/// Ehat(Y1, Y2(Y2-1), Y3).
double e2_three(const JointLaw& triple_law);

/// The remainder aggregates (r0, r1) driving all error bounds.
std::pair<double, double> remainders(const OneDependentModel& model);

ConditionReport check_conditions(const OneDependentModel& model);

MomentSummary summarize(const OneDependentModel& model);

}  // namespace dapprox

#endif
