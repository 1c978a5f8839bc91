// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dapprox/errors.hpp"
#include "dapprox/harness.hpp"
#include "dapprox/metrics.hpp"

using namespace dapprox;

TEST_CASE("rhs templates encode the printed expressions") {
  MomentSummary s;
  s.lambda = 4.0;
  s.gamma2 = -0.2;
  s.delta_tilde = 0.4;
  s.r0 = 0.3;
  s.r1 = 0.07;
  const double lam = s.lambda, sq = std::sqrt(s.lambda);

  using F = ApproximationFamily;
  using R = MetricRegime;
  CHECK(rhs_without_constant(F::poisson, R::nonuniform_cdf, s) == doctest::Approx(s.r0 / lam));
  CHECK(rhs_without_constant(F::poisson_corrected, R::nonuniform_cdf, s) ==
        doctest::Approx(s.r0 * s.r0 / (lam * lam) + s.r1 / (lam * sq)));
  CHECK(rhs_without_constant(F::compound_poisson, R::nonuniform_cdf, s) ==
        doctest::Approx(s.r1 / (lam * sq)));
  CHECK(rhs_without_constant(F::translated_poisson, R::nonuniform_cdf, s) ==
        doctest::Approx((s.r1 + 0.2) / (lam * sq) + s.delta_tilde / lam));
  CHECK(rhs_without_constant(F::negative_binomial, R::nonuniform_cdf, s) ==
        doctest::Approx(s.r1 / (lam * sq) + 0.04 / (lam * lam * sq)));
  CHECK(rhs_without_constant(F::binomial, R::nonuniform_cdf, s) ==
        rhs_without_constant(F::negative_binomial, R::nonuniform_cdf, s));

  CHECK(rhs_without_constant(F::poisson, R::wasserstein, s) == doctest::Approx(s.r0 / sq));
  CHECK(rhs_without_constant(F::poisson_corrected, R::wasserstein, s) ==
        doctest::Approx(s.r0 * s.r0 / (lam * sq) + s.r1 / lam));
  CHECK(rhs_without_constant(F::compound_poisson, R::wasserstein, s) ==
        doctest::Approx(s.r1 / lam));
  CHECK(rhs_without_constant(F::translated_poisson, R::wasserstein, s) ==
        doctest::Approx((s.r1 + 0.2) / lam + s.delta_tilde / sq));
  CHECK(rhs_without_constant(F::negative_binomial, R::wasserstein, s) ==
        doctest::Approx(s.r1 / lam + 0.04 / (lam * lam)));

  CHECK(rhs_without_constant(F::poisson, R::nonuniform_local, s) ==
        doctest::Approx(s.r0 / (lam * sq)));
  CHECK(rhs_without_constant(F::poisson_corrected, R::nonuniform_local, s) ==
        doctest::Approx(s.r0 * s.r0 / (lam * lam * sq) + s.r1 / (lam * lam)));
  CHECK(rhs_without_constant(F::compound_poisson, R::nonuniform_local, s) ==
        doctest::Approx(s.r1 / (lam * lam)));
  CHECK(rhs_without_constant(F::translated_poisson, R::nonuniform_local, s) ==
        doctest::Approx((s.r1 + 0.2) / (lam * lam) + s.delta_tilde / (lam * sq)));
  CHECK(rhs_without_constant(F::negative_binomial, R::nonuniform_local, s) ==
        doctest::Approx(s.r1 / (lam * lam) + 0.04 / (lam * lam * lam)));
}

TEST_CASE("evaluate_point skips inadmissible families and keeps the rest") {
  ModelPoint pt;
  pt.kind = ModelKind::poisson_binomial;
  pt.n = 200;
  pt.p = 0.008;  // gamma2 < 0: negative-binomial inadmissible

  std::vector<SkippedFamily> skipped;
  const std::vector<ApproximationFamily> fams = {
      ApproximationFamily::poisson,           ApproximationFamily::poisson_corrected,
      ApproximationFamily::compound_poisson,  ApproximationFamily::translated_poisson,
      ApproximationFamily::negative_binomial, ApproximationFamily::binomial};
  const std::vector<BoundRow> rows = evaluate_point(pt, fams, 1e-12, &skipped);

  CHECK(rows.size() == 15);  // five admissible families x three regimes
  CHECK(skipped.size() == 1);
  CHECK(skipped[0].family == ApproximationFamily::negative_binomial);
  for (const BoundRow& row : rows) {
    CHECK(row.family != ApproximationFamily::negative_binomial);
    CHECK(row.conditions_pass);
    CHECK(std::isfinite(row.ratio));
    CHECK(row.lhs >= 0.0);
    CHECK(row.rhs > 0.0);
  }
}

TEST_CASE("evaluate_bounds sweeps deterministically on the worker pool") {
  ExperimentConfig config;
  config.kind = ModelKind::two_runs;
  config.n_values = {300, 500};
  config.p_values = {0.04, 0.05};
  config.families = {ApproximationFamily::poisson, ApproximationFamily::negative_binomial};

  const BoundReport first = evaluate_bounds(config);
  const BoundReport second = evaluate_bounds(config);
  REQUIRE(first.rows.size() == second.rows.size());
  CHECK(first.rows.size() == 4 * 2 * 3);
  for (std::size_t i = 0; i < first.rows.size(); ++i) {
    CHECK(first.rows[i].lhs == second.rows[i].lhs);
    CHECK(first.rows[i].rhs == second.rows[i].rhs);
    CHECK(first.rows[i].point.n == second.rows[i].point.n);
  }
}

TEST_CASE("no negative-binomial rows below gamma2 = 0 and vice versa") {
  ExperimentConfig config;
  config.kind = ModelKind::poisson_binomial;
  config.n_values = {300};
  config.p_values = {0.005};
  const BoundReport report = evaluate_bounds(config);
  for (const BoundRow& row : report.rows) {
    if (row.family == ApproximationFamily::negative_binomial) CHECK(row.gamma2 > 0.0);
    if (row.family == ApproximationFamily::binomial) CHECK(row.gamma2 < 0.0);
  }
}

TEST_CASE("constant estimation keeps only passing rows") {
  BoundRow a;
  a.family = ApproximationFamily::poisson;
  a.regime = MetricRegime::wasserstein;
  a.ratio = 0.3;
  a.conditions_pass = true;
  BoundRow b = a;
  b.ratio = 0.7;
  BoundRow c = a;
  c.ratio = 9.9;
  c.conditions_pass = false;

  SUBCASE("single row") {
    const std::vector<BoundRow> rows = {b};
    const ConstantEstimate est =
        estimate_constant(rows, ApproximationFamily::poisson, MetricRegime::wasserstein);
    CHECK(est.has_value);
    CHECK(est.value == doctest::Approx(0.7));
  }
  SUBCASE("failed rows excluded") {
    const std::vector<BoundRow> rows = {a, b, c};
    const ConstantEstimate est =
        estimate_constant(rows, ApproximationFamily::poisson, MetricRegime::wasserstein);
    CHECK(est.has_value);
    CHECK(est.value == doctest::Approx(0.7));
    CHECK(est.rows_used == 2);
  }
  SUBCASE("no passing rows yields an empty estimate") {
    const std::vector<BoundRow> rows = {c};
    const ConstantEstimate est =
        estimate_constant(rows, ApproximationFamily::poisson, MetricRegime::wasserstein);
    CHECK_FALSE(est.has_value);
  }
}

TEST_CASE("sharp constant rows") {
  const std::vector<std::int64_t> ns = {400, 800};
  const auto rows = sharp_constant_experiment(ns, 0.02);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.regime_ok);
    CHECK(row.scaled > 0.3);
    CHECK(row.scaled < 0.5);
    CHECK(row.lambda == doctest::Approx(static_cast<double>(row.n) * 0.02));
  }
  const auto flagged = sharp_constant_experiment(std::vector<std::int64_t>{1}, 1.0);
  REQUIRE(flagged.size() == 1);
  CHECK_FALSE(flagged[0].regime_ok);
}

TEST_CASE("config parsing") {
  SUBCASE("full example") {
    std::istringstream in(
        "# comment\n"
        "model = two-runs\n"
        "n = 100 200\n"
        "p = 0.05\n"
        "families = poisson compound-poisson\n"
        "truncation_eps = 1e-13\n"
        "format = json\n"
        "output = out.json\n");
    const ExperimentConfig config = parse_config(in);
    CHECK(config.kind == ModelKind::two_runs);
    CHECK(config.n_values.size() == 2);
    CHECK(config.p_values.size() == 1);
    CHECK(config.families.size() == 2);
    CHECK(config.truncation_eps == 1e-13);
    CHECK(config.output_format == "json");
    CHECK(config.output_path == "out.json");
    CHECK(config.sweep_points().size() == 2);
  }
  SUBCASE("explicit probability vector") {
    std::istringstream in("model = poisson-binomial\np_list = 0.1 0.2 0.3\n");
    const ExperimentConfig config = parse_config(in);
    const auto points = config.sweep_points();
    REQUIRE(points.size() == 1);
    CHECK(points[0].n == 3);
    CHECK(points[0].p_vector.size() == 3);
  }
  SUBCASE("errors") {
    std::istringstream missing_model("n = 10\np = 0.1\n");
    CHECK_THROWS_AS(parse_config(missing_model), domain_error);
    std::istringstream unknown("model = two-runs\nn = 10\np = 0.1\nbogus = 1\n");
    CHECK_THROWS_AS(parse_config(unknown), domain_error);
    std::istringstream bad_family("model = two-runs\nn = 10\np = 0.1\nfamilies = gamma\n");
    CHECK_THROWS_AS(parse_config(bad_family), domain_error);
  }
}

TEST_CASE("csv writer emits one line per row") {
  ExperimentConfig config;
  config.kind = ModelKind::poisson_binomial;
  config.n_values = {150};
  config.p_values = {0.006};
  config.families = {ApproximationFamily::poisson};
  const BoundReport report = evaluate_bounds(config);
  std::ostringstream out;
  write_bounds_csv(out, report);
  std::istringstream lines(out.str());
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == report.rows.size() + 1);
  CHECK(out.str().rfind("model,n,p,k1,k2,", 0) == 0);
}

TEST_CASE("wasserstein row dominates the classical distance for the poisson family") {
  ModelPoint pt;
  pt.kind = ModelKind::two_runs;
  pt.n = 400;
  pt.p = 0.05;
  const OneDependentModel model = pt.build();
  const MomentSummary s = summarize(model);
  const SignedMeasure exact = exact_sum_distribution(model);
  const SignedMeasure fit = poisson(FamilyParams{.lambda = s.lambda});
  CHECK(wasserstein_norm(exact, fit).value >= kolmogorov(exact, fit));
}
