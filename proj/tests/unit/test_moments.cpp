// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dapprox/joint_law.hpp"
#include "dapprox/models.hpp"
#include "dapprox/moments.hpp"
#include "helpers.hpp"

using namespace dapprox;

namespace {

JointLaw product_law(const std::vector<std::vector<double>>& values,
                     const std::vector<std::vector<double>>& marginals) {
  std::size_t cells = 1;
  for (const auto& v : values) cells *= v.size();
  std::vector<double> probs(cells);
  for (std::size_t flat = 0; flat < cells; ++flat) {
    std::size_t rem = flat;
    double pr = 1.0;
    for (int c = static_cast<int>(values.size()) - 1; c >= 0; --c) {
      const std::size_t dim = values[static_cast<std::size_t>(c)].size();
      pr *= marginals[static_cast<std::size_t>(c)][rem % dim];
      rem /= dim;
    }
    probs[flat] = pr;
  }
  return JointLaw(values, probs);
}

}  // namespace

TEST_CASE("factorial moments") {
  const OneDependentModel bern = poisson_binomial_model(std::vector<double>{0.3, 0.3, 0.3});
  CHECK(factorial_moment(bern, 2, 1) == doctest::Approx(0.3));
  CHECK(factorial_moment(bern, 2, 2) == doctest::Approx(0.0));
  CHECK(factorial_moment(bern, 0, 1) == 0.0);
  CHECK(factorial_moment(bern, -3, 2) == 0.0);

  const OneDependentModel runs = two_runs_model(8, 0.4);
  for (std::int64_t k = 1; k <= 8; ++k) {
    CHECK(factorial_moment(runs, k, 1) == doctest::Approx(0.16).epsilon(1e-12));
  }

  const OneDependentModel zero = poisson_binomial_model(std::vector<double>{0.0, 0.0});
  for (int j = 1; j <= 3; ++j) CHECK(factorial_moment(zero, 1, j) == 0.0);
}

TEST_CASE("centered mixed moments") {
  SUBCASE("arity two is the covariance") {
    // A dependent pair on {0,1}^2.
    const JointLaw law({{0.0, 1.0}, {0.0, 1.0}}, {0.5, 0.1, 0.1, 0.3});
    const double e1 = 0.4, e2 = 0.4, e12 = 0.3;
    CHECK(centered_mixed_e(law) == doctest::Approx(e12 - e1 * e2).epsilon(1e-14));
  }
  SUBCASE("vanishes for independent coordinates up to arity four") {
    const std::vector<double> vals = {0.0, 1.0, 2.0};
    const std::vector<double> marg = {0.5, 0.3, 0.2};
    for (int arity = 2; arity <= 4; ++arity) {
      const JointLaw law = product_law(std::vector(static_cast<std::size_t>(arity), vals),
                                       std::vector(static_cast<std::size_t>(arity), marg));
      CHECK(std::abs(centered_mixed_e(law)) < 1e-14);
    }
  }
  SUBCASE("two runs adjacent pair") {
    const double p = 0.35;
    const OneDependentModel m = two_runs_model(7, p);
    const JointLaw triple = joint_triple_pmf(m, 4);
    const int keep[] = {1, 2};
    CHECK(centered_mixed_e(triple.marginal(keep)) ==
          doctest::Approx(p * p * p - p * p * p * p).epsilon(1e-12));
  }
}

TEST_CASE("all-plus mixed moments") {
  const JointLaw pair({{0.0, 1.0}, {0.0, 1.0}}, {0.5, 0.1, 0.1, 0.3});
  SUBCASE("base case") {
    const int keep[] = {0};
    CHECK(e_plus(pair.marginal(keep)) == doctest::Approx(0.4));
  }
  SUBCASE("pair formula") {
    CHECK(e_plus(pair) == doctest::Approx(0.3 + 0.4 * 0.4).epsilon(1e-14));
  }
  SUBCASE("second-factorial variant vanishes on indicators") {
    CHECK(e_plus_2(pair) == 0.0);
  }
  SUBCASE("centered triple variant vanishes under independence") {
    const std::vector<double> vals = {0.0, 1.0, 2.0};
    const std::vector<double> marg = {0.6, 0.3, 0.1};
    const JointLaw law = product_law({vals, vals, vals}, {marg, marg, marg});
    CHECK(std::abs(e2_three(law)) < 1e-14);
  }
}

TEST_CASE("remainders for independent Bernoulli summands") {
  std::mt19937 rng(5);
  const std::vector<double> p = dapprox::testing::random_bernoulli_probs(rng, 12, 0.01, 0.3);
  const auto [r0, r1] = remainders(poisson_binomial_model(p));

  auto at = [&](std::int64_t k) { return k >= 1 ? p[static_cast<std::size_t>(k - 1)] : 0.0; };
  double expect_r0 = 0.0, expect_r1 = 0.0;
  for (std::int64_t k = 1; k <= static_cast<std::int64_t>(p.size()); ++k) {
    expect_r0 += at(k) * at(k) + at(k - 1) * at(k);
    expect_r1 += at(k) * at(k) * at(k) +
                 (at(k - 2) + at(k - 1) + at(k)) * at(k - 1) * at(k) +
                 4.0 * at(k - 2) * at(k - 1) * at(k);
  }
  CHECK(r0 == doctest::Approx(expect_r0).epsilon(1e-12));
  CHECK(r1 == doctest::Approx(expect_r1).epsilon(1e-12));
}

TEST_CASE("remainders vanish for the all-zero model") {
  const auto [r0, r1] = remainders(poisson_binomial_model(std::vector<double>{0.0, 0.0, 0.0}));
  CHECK(r0 == 0.0);
  CHECK(r1 == 0.0);
}

TEST_CASE("remainder monotonicity under downscaling") {
  std::mt19937 rng(31);
  const std::vector<double> p = dapprox::testing::random_bernoulli_probs(rng, 15, 0.05, 0.5);
  for (double scale : {0.75, 0.5, 0.25}) {
    std::vector<double> q = p;
    for (double& x : q) x *= scale;
    const auto [r0_full, r1_full] = remainders(poisson_binomial_model(p));
    const auto [r0_down, r1_down] = remainders(poisson_binomial_model(q));
    CHECK(r0_down <= r0_full + 1e-15);
    CHECK(r1_down <= r1_full + 1e-15);
  }
}

TEST_CASE("condition checker") {
  SUBCASE("small independent summands pass everything") {
    const std::vector<double> p(150, 0.009);
    const ConditionReport rep = check_conditions(poisson_binomial_model(p));
    CHECK(rep.all());
    CHECK(rep.nu1_violation == 0);
    CHECK(rep.c0 == 1);
  }
  SUBCASE("two runs with p = 0.2 violates the nu1 clause") {
    const ConditionReport rep = check_conditions(two_runs_model(50, 0.2));
    CHECK_FALSE(rep.nu1_small);
    CHECK(rep.nu1_violation == 1);
  }
  SUBCASE("a single summand fails lambda >= 1") {
    const ConditionReport rep =
        check_conditions(poisson_binomial_model(std::vector<double>{0.5}));
    CHECK_FALSE(rep.lambda_ge_one);
  }
}

TEST_CASE("summary moments agree with the exact law") {
  std::mt19937 rng(41);
  const std::vector<double> p = dapprox::testing::random_bernoulli_probs(rng, 30, 0.02, 0.4);
  for (const OneDependentModel& m :
       {poisson_binomial_model(p), two_runs_model(60, 0.2),
        k1k2_events_model(24, 1, 2, 0.35).model()}) {
    const MomentSummary s = summarize(m);
    const SignedMeasure law = exact_sum_distribution(m);
    CHECK(std::abs(s.lambda - law.mean()) < 1e-10);
    CHECK(std::abs(s.variance - law.variance()) < 1e-10);
    CHECK(s.gamma2 == (s.variance - s.lambda) / 2.0);
    // floor-first split reconstructs -2*gamma2 exactly
    CHECK(static_cast<double>(s.tp_shift) + s.delta_tilde == -2.0 * s.gamma2);
    CHECK(s.delta_tilde >= 0.0);
    CHECK(s.delta_tilde < 1.0);
    CHECK(s.r0 >= 0.0);
    CHECK(s.r1 >= 0.0);
  }
}

TEST_CASE("independent Bernoulli closed forms") {
  std::mt19937 rng(67);
  const std::vector<double> p = dapprox::testing::random_bernoulli_probs(rng, 25, 0.01, 0.6);
  double sum_p = 0.0, sum_p2 = 0.0;
  for (double x : p) {
    sum_p += x;
    sum_p2 += x * x;
  }
  const MomentSummary s = summarize(poisson_binomial_model(p));
  CHECK(s.lambda == doctest::Approx(sum_p).epsilon(1e-13));
  CHECK(s.gamma2 == doctest::Approx(-0.5 * sum_p2).epsilon(1e-11));

  const MomentSummary uniform =
      summarize(poisson_binomial_model(std::vector<double>(100, 0.01)));
  CHECK(uniform.lambda == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("pattern-count remainder scales like the pattern probability cubed") {
  // R1 / ((n-m+1) m^2 a(p)^3) stays bounded as n grows.
  for (int m_half : {1, 2}) {
    const int k1 = m_half, k2 = m_half;
    const double m = static_cast<double>(k1 + k2);
    double lo = 1e300, hi = 0.0;
    for (std::int64_t n : {200, 400, 800, 1600}) {
      const BlockedModel bm = k1k2_events_model(n, k1, k2, 0.07);
      const auto [r0, r1] = remainders(bm.model());
      const double a = bm.pattern_prob();
      const double scale =
          static_cast<double>(n - k1 - k2 + 1) * m * m * a * a * a;
      const double ratio = r1 / scale;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      CHECK(std::isfinite(ratio));
    }
    CHECK(hi / lo < 2.0);
  }
}

TEST_CASE("closed-form parameters match the model-agnostic computation") {
  for (std::int64_t n : {10, 37, 120}) {
    for (double p : {0.05, 0.2, 0.45}) {
      const MomentSummary s = summarize(two_runs_model(n, p));
      CHECK(std::abs(s.lambda - two_runs_lambda(n, p)) < 1e-10);
      CHECK(std::abs(s.gamma2 - two_runs_gamma2(n, p)) < 1e-10);
    }
  }
  for (std::int64_t n : {12, 30, 75}) {
    for (int k1 : {1, 2}) {
      for (double p : {0.1, 0.4}) {
        const BlockedModel bm = k1k2_events_model(n, k1, 1, p);
        const MomentSummary s = summarize(bm.model());
        CHECK(std::abs(s.lambda - bm.lambda()) < 1e-10);
        CHECK(std::abs(s.gamma2 - bm.gamma2()) < 1e-10);
      }
    }
  }
}

TEST_CASE("independent models have zero mixed terms") {
  std::mt19937 rng(53);
  const std::vector<double> p = dapprox::testing::random_bernoulli_probs(rng, 10, 0.05, 0.5);
  const MomentSummary s = summarize(poisson_binomial_model(p));
  CHECK(s.cov_sum < 1e-14);
  double sum_nu = 0.0;
  for (const auto& row : s.nu) sum_nu += row[1] + row[0] * row[0];
  // r0 reduces to sum(nu2 + nu1^2) plus the independent pair expectations
  double pair_terms = 0.0;
  for (std::size_t k = 1; k < p.size(); ++k) pair_terms += p[k - 1] * p[k];
  CHECK(s.r0 == doctest::Approx(sum_nu + pair_terms).epsilon(1e-12));
}
