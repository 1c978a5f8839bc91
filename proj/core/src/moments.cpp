// SPDX-License-Identifier: Apache-2.0
#include "dapprox/moments.hpp"

#include <cmath>

#include "dapprox/detail/compensated.hpp"
#include "dapprox/errors.hpp"

namespace dapprox {

namespace {

double falling_factorial(double x, int order) {
  double prod = 1.0;
  for (int i = 0; i < order; ++i) prod *= (x - static_cast<double>(i));
  return prod;
}

void require_arity(const JointLaw& law, int lo, int hi, const char* who) {
  if (law.arity() < lo || law.arity() > hi) {
    throw domain_error(std::string(who) + ": unsupported arity");
  }
}

// Shared prefix recursion for the centered (-1) and all-plus (+1) variants.
double mixed_e_impl(const JointLaw& law, double sign) {
  const int k = law.arity();
  std::vector<double> prefix(static_cast<std::size_t>(k) + 1, 0.0);
  for (int j = 1; j <= k; ++j) {
    double v = law.product_moment(0, j - 1);
    for (int l = 1; l < j; ++l) {
      v += sign * prefix[static_cast<std::size_t>(l)] * law.product_moment(l, j - 1);
    }
    prefix[static_cast<std::size_t>(j)] = v;
  }
  return prefix[static_cast<std::size_t>(k)];
}

double second_factorial(double x) { return x * (x - 1.0); }

}  // namespace

double factorial_moment(const OneDependentModel& model, std::int64_t k, int order) {
  if (order < 1) throw domain_error("factorial_moment: order must be >= 1");
  if (k <= 0) return 0.0;
  const std::vector<double> pmf = marginal_pmf(model, k);
  double acc = 0.0;
  for (std::size_t v = 0; v < pmf.size(); ++v) {
    acc += pmf[v] * falling_factorial(static_cast<double>(v), order);
  }
  return acc;
}

double centered_mixed_e(const JointLaw& law) {
  require_arity(law, 1, 4, "centered_mixed_e");
  return mixed_e_impl(law, -1.0);
}

double e_plus(const JointLaw& law) {
  require_arity(law, 1, 4, "e_plus");
  return mixed_e_impl(law, 1.0);
}

double e_plus_2(const JointLaw& pair_law) {
  require_arity(pair_law, 2, 2, "e_plus_2");
  return e_plus(pair_law.transformed(0, second_factorial)) +
         e_plus(pair_law.transformed(1, second_factorial));
}

double e2_three(const JointLaw& triple_law) {
  require_arity(triple_law, 3, 3, "e2_three");
  return centered_mixed_e(triple_law.transformed(0, second_factorial)) +
         centered_mixed_e(triple_law.transformed(1, second_factorial));
}

MomentSummary summarize(const OneDependentModel& model) {
  const std::int64_t n = model.summand_count();
  MomentSummary s;
  s.nu.resize(static_cast<std::size_t>(n));
  s.conditions.c0 = model.c0_bound();

  detail::CompensatedSum lambda, variance, cov_sum, nu2_sum, r0, r1;
  double nu1_km1 = 0.0, nu1_km2 = 0.0;  // nu_1(k-1), nu_1(k-2)

  for (std::int64_t k = 1; k <= n; ++k) {
    const JointLaw triple = joint_triple_pmf(model, k);
    const int keep_last[] = {2};
    const JointLaw marg = triple.marginal(keep_last);

    double nu1 = 0.0, nu2 = 0.0, nu3 = 0.0, ex2 = 0.0;
    const auto& vals = marg.coordinate_values(0);
    for (std::size_t v = 0; v < vals.size(); ++v) {
      const int idx[] = {static_cast<int>(v)};
      const double pr = marg.prob(idx);
      const double x = vals[v];
      nu1 += pr * x;
      nu2 += pr * falling_factorial(x, 2);
      nu3 += pr * falling_factorial(x, 3);
      ex2 += pr * x * x;
    }
    s.nu[static_cast<std::size_t>(k - 1)] = {nu1, nu2, nu3};

    const double pair_moment = triple.product_moment(1, 2);  // E X_{k-1} X_k
    const double cov = pair_moment - nu1_km1 * nu1;

    lambda.add(nu1);
    variance.add(ex2 - nu1 * nu1);
    if (k >= 2) {
      variance.add(2.0 * cov);
      cov_sum.add(std::abs(cov));
    }
    nu2_sum.add(nu2);

    r0.add(nu2 + nu1 * nu1 + pair_moment);
    const int keep_pair[] = {1, 2};
    r1.add(nu1 * nu1 * nu1 + nu1 * nu2 + nu3 + (nu1_km2 + nu1_km1 + nu1) * pair_moment +
           e_plus_2(triple.marginal(keep_pair)) + e_plus(triple));

    if (s.conditions.nu1_small && nu1 > 0.01) {
      s.conditions.nu1_small = false;
      s.conditions.nu1_violation = k;
    }
    if (s.conditions.nu2_le_nu1 && nu2 > nu1) {
      s.conditions.nu2_le_nu1 = false;
      s.conditions.nu2_violation = k;
    }

    nu1_km2 = nu1_km1;
    nu1_km1 = nu1;
  }

  s.lambda = lambda.value();
  s.variance = variance.value();
  s.gamma2 = (s.variance - s.lambda) / 2.0;
  const double d = -2.0 * s.gamma2;
  const double fl = std::floor(d);
  s.tp_shift = static_cast<std::int64_t>(fl);
  s.delta_tilde = d - fl;
  s.cov_sum = cov_sum.value();
  s.r0 = r0.value();
  s.r1 = r1.value();

  s.conditions.lambda_ge_one = s.lambda >= 1.0;
  s.conditions.nu2_sum_small = nu2_sum.value() <= s.lambda / 20.0;
  s.conditions.cov_sum_small = s.cov_sum <= s.lambda / 20.0;
  return s;
}

std::pair<double, double> remainders(const OneDependentModel& model) {
  const MomentSummary s = summarize(model);
  return {s.r0, s.r1};
}

ConditionReport check_conditions(const OneDependentModel& model) {
  return summarize(model).conditions;
}

}  // namespace dapprox
