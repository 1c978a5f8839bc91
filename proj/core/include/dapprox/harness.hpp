// SPDX-License-Identifier: Apache-2.0
#ifndef DAPPROX_HARNESS_HPP
#define DAPPROX_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dapprox/families.hpp"
#include "dapprox/metrics.hpp"
#include "dapprox/models.hpp"
#include "dapprox/moments.hpp"

namespace dapprox {

/// The three metric regimes of the error bounds: weighted sup of cdf
/// differences, Wasserstein norm, and weighted sup of point-mass differences.
enum class MetricRegime { nonuniform_cdf, wasserstein, nonuniform_local };

const char* regime_name(MetricRegime r);
MetricRegime regime_from_name(const std::string& name);

enum class ModelKind { poisson_binomial, two_runs, k1k2 };

const char* model_kind_name(ModelKind k);
ModelKind model_kind_from_name(const std::string& name);

/// One sweep point: a fully specified model instance.
struct ModelPoint {
  ModelKind kind = ModelKind::poisson_binomial;
  std::int64_t n = 0;
  double p = 0.0;
  std::vector<double> p_vector;  // explicit poisson-binomial probabilities
  int k1 = 1;
  int k2 = 1;

  OneDependentModel build() const;
  std::string label() const;
};

/// Parsed experiment description: a model family with value lists for n and
/// p (their cross product is the sweep), the families to evaluate, and the
/// output channel.
struct ExperimentConfig {
  ModelKind kind = ModelKind::poisson_binomial;
  std::vector<std::int64_t> n_values;
  std::vector<double> p_values;
  std::vector<double> p_vector;
  int k1 = 1;
  int k2 = 1;
  std::vector<ApproximationFamily> families;  // empty = all six
  double truncation_eps = 1e-12;
  std::string output_format = "csv";  // "csv" or "json"
  std::string output_path;            // empty = stdout

  std::vector<ModelPoint> sweep_points() const;
};

/// Flat key = value text format; see the README for the schema.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

/// One evaluated inequality: exact left-hand side, the right-hand side
/// without its absolute constant, and their ratio (the empirical constant).
struct BoundRow {
  ModelPoint point;
  ApproximationFamily family = ApproximationFamily::poisson;
  MetricRegime regime = MetricRegime::nonuniform_cdf;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool conditions_pass = false;
  std::int64_t argmax_x = 0;
  double lambda = 0.0;
  double gamma2 = 0.0;
  double delta_tilde = 0.0;
  double r0 = 0.0;
  double r1 = 0.0;
  double cov_sum = 0.0;
  int c0 = 0;
};

/// A family that was requested but inadmissible at a sweep point.
struct SkippedFamily {
  ModelPoint point;
  ApproximationFamily family;
  std::string reason;
};

struct BoundReport {
  std::vector<BoundRow> rows;
  std::vector<SkippedFamily> skipped;
};

/// The printed right-hand side of the requested inequality, without its
/// absolute constant. 18 table-driven templates: 6 families x 3 regimes.
double rhs_without_constant(ApproximationFamily family, MetricRegime regime,
                            const MomentSummary& summary);

/// Evaluates every requested family and all three regimes at one point.
std::vector<BoundRow> evaluate_point(const ModelPoint& point,
                                     std::span<const ApproximationFamily> families,
                                     double truncation_eps,
                                     std::vector<SkippedFamily>* skipped = nullptr);

/// Full sweep; points run as independent jobs on a bounded worker pool.
BoundReport evaluate_bounds(const ExperimentConfig& config);

/// Maximum lhs/rhs ratio over rows with passing conditions.
struct ConstantEstimate {
  bool has_value = false;
  double value = 0.0;
  BoundRow argmax;
  std::size_t rows_used = 0;
};

ConstantEstimate estimate_constant(std::span<const BoundRow> rows, ApproximationFamily family,
                                   MetricRegime regime);

/// One row of the asymptotic-constant experiment: the Wasserstein distance
/// between the Bernoulli-sum law and its Poisson fit, scaled by
/// sqrt(lambda)/lambda2, approaches 1/sqrt(2 pi) as n grows.
struct SharpConstantRow {
  std::int64_t n = 0;
  double lambda = 0.0;
  double lambda2 = 0.0;
  double wasserstein = 0.0;
  double scaled = 0.0;
  double deviation = 0.0;   // scaled - 1/sqrt(2 pi)
  double rate_bound = 0.0;  // max p + 1/sqrt(lambda)
  bool regime_ok = false;   // max p <= 1/20 and lambda >= 1
};

std::vector<SharpConstantRow> sharp_constant_experiment(std::span<const std::int64_t> n_list,
                                                        double p);

void write_bounds_csv(std::ostream& out, const BoundReport& report);
void write_bounds_json(std::ostream& out, const BoundReport& report);
void write_sharp_constant_csv(std::ostream& out, std::span<const SharpConstantRow> rows);

}  // namespace dapprox

#endif
