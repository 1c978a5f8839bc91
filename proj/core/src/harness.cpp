// SPDX-License-Identifier: Apache-2.0
#include "dapprox/harness.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dapprox/errors.hpp"

namespace dapprox {

const char* regime_name(MetricRegime r) {
  switch (r) {
    case MetricRegime::nonuniform_cdf: return "nonuniform-cdf";
    case MetricRegime::wasserstein: return "wasserstein";
    case MetricRegime::nonuniform_local: return "nonuniform-local";
  }
  return "?";
}

MetricRegime regime_from_name(const std::string& name) {
  for (MetricRegime r : {MetricRegime::nonuniform_cdf, MetricRegime::wasserstein,
                         MetricRegime::nonuniform_local}) {
    if (name == regime_name(r)) return r;
  }
  throw domain_error("unknown metric regime: " + name);
}

const char* model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::poisson_binomial: return "poisson-binomial";
    case ModelKind::two_runs: return "two-runs";
    case ModelKind::k1k2: return "k1k2";
  }
  return "?";
}

ModelKind model_kind_from_name(const std::string& name) {
  for (ModelKind k : {ModelKind::poisson_binomial, ModelKind::two_runs, ModelKind::k1k2}) {
    if (name == model_kind_name(k)) return k;
  }
  throw domain_error("unknown model kind: " + name);
}

OneDependentModel ModelPoint::build() const {
  switch (kind) {
    case ModelKind::poisson_binomial:
      if (!p_vector.empty()) return poisson_binomial_model(p_vector);
      return poisson_binomial_model(std::vector<double>(static_cast<std::size_t>(n), p));
    case ModelKind::two_runs:
      return two_runs_model(n, p);
    case ModelKind::k1k2:
      return k1k2_events_model(n, k1, k2, p).model();
  }
  throw domain_error("ModelPoint::build: unknown model kind");
}

std::string ModelPoint::label() const {
  std::ostringstream os;
  os << model_kind_name(kind) << "(n=" << n;
  if (kind == ModelKind::poisson_binomial && !p_vector.empty()) {
    os << ",p=<" << p_vector.size() << " values>";
  } else {
    os << ",p=" << p;
  }
  if (kind == ModelKind::k1k2) os << ",k1=" << k1 << ",k2=" << k2;
  os << ")";
  return os.str();
}

std::vector<ModelPoint> ExperimentConfig::sweep_points() const {
  std::vector<ModelPoint> points;
  if (kind == ModelKind::poisson_binomial && !p_vector.empty()) {
    ModelPoint pt;
    pt.kind = kind;
    pt.p_vector = p_vector;
    pt.n = static_cast<std::int64_t>(p_vector.size());
    points.push_back(std::move(pt));
    return points;
  }
  for (std::int64_t n : n_values) {
    for (double p : p_values) {
      ModelPoint pt;
      pt.kind = kind;
      pt.n = n;
      pt.p = p;
      pt.k1 = k1;
      pt.k2 = k2;
      points.push_back(std::move(pt));
    }
  }
  return points;
}

namespace {

const std::vector<ApproximationFamily>& all_families() {
  static const std::vector<ApproximationFamily> fams = {
      ApproximationFamily::poisson,          ApproximationFamily::poisson_corrected,
      ApproximationFamily::compound_poisson, ApproximationFamily::translated_poisson,
      ApproximationFamily::negative_binomial, ApproximationFamily::binomial,
  };
  return fams;
}

struct RhsTemplate {
  ApproximationFamily family;
  MetricRegime regime;
  double (*fn)(const MomentSummary&);
};

using F = ApproximationFamily;
using R = MetricRegime;

// One template per printed inequality, encoded verbatim.
const RhsTemplate kRhsTemplates[18] = {
    {F::poisson, R::nonuniform_cdf,
     [](const MomentSummary& s) { return s.r0 / s.lambda; }},
    {F::poisson_corrected, R::nonuniform_cdf,
     [](const MomentSummary& s) {
       return s.r0 * s.r0 / (s.lambda * s.lambda) + s.r1 / (s.lambda * std::sqrt(s.lambda));
     }},
    {F::compound_poisson, R::nonuniform_cdf,
     [](const MomentSummary& s) { return s.r1 / (s.lambda * std::sqrt(s.lambda)); }},
    {F::translated_poisson, R::nonuniform_cdf,
     [](const MomentSummary& s) {
       return (s.r1 + std::abs(s.gamma2)) / (s.lambda * std::sqrt(s.lambda)) +
              s.delta_tilde / s.lambda;
     }},
    {F::negative_binomial, R::nonuniform_cdf,
     [](const MomentSummary& s) {
       return s.r1 / (s.lambda * std::sqrt(s.lambda)) +
              s.gamma2 * s.gamma2 / (s.lambda * s.lambda * std::sqrt(s.lambda));
     }},
    {F::binomial, R::nonuniform_cdf,
     [](const MomentSummary& s) {
       return s.r1 / (s.lambda * std::sqrt(s.lambda)) +
              s.gamma2 * s.gamma2 / (s.lambda * s.lambda * std::sqrt(s.lambda));
     }},

    {F::poisson, R::wasserstein,
     [](const MomentSummary& s) { return s.r0 / std::sqrt(s.lambda); }},
    {F::poisson_corrected, R::wasserstein,
     [](const MomentSummary& s) {
       return s.r0 * s.r0 / (s.lambda * std::sqrt(s.lambda)) + s.r1 / s.lambda;
     }},
    {F::compound_poisson, R::wasserstein,
     [](const MomentSummary& s) { return s.r1 / s.lambda; }},
    {F::translated_poisson, R::wasserstein,
     [](const MomentSummary& s) {
       return (s.r1 + std::abs(s.gamma2)) / s.lambda + s.delta_tilde / std::sqrt(s.lambda);
     }},
    {F::negative_binomial, R::wasserstein,
     [](const MomentSummary& s) {
       return s.r1 / s.lambda + s.gamma2 * s.gamma2 / (s.lambda * s.lambda);
     }},
    {F::binomial, R::wasserstein,
     [](const MomentSummary& s) {
       return s.r1 / s.lambda + s.gamma2 * s.gamma2 / (s.lambda * s.lambda);
     }},

    {F::poisson, R::nonuniform_local,
     [](const MomentSummary& s) { return s.r0 / (s.lambda * std::sqrt(s.lambda)); }},
    {F::poisson_corrected, R::nonuniform_local,
     [](const MomentSummary& s) {
       return s.r0 * s.r0 / (s.lambda * s.lambda * std::sqrt(s.lambda)) +
              s.r1 / (s.lambda * s.lambda);
     }},
    {F::compound_poisson, R::nonuniform_local,
     [](const MomentSummary& s) { return s.r1 / (s.lambda * s.lambda); }},
    {F::translated_poisson, R::nonuniform_local,
     [](const MomentSummary& s) {
       return (s.r1 + std::abs(s.gamma2)) / (s.lambda * s.lambda) +
              s.delta_tilde / (s.lambda * std::sqrt(s.lambda));
     }},
    {F::negative_binomial, R::nonuniform_local,
     [](const MomentSummary& s) {
       return s.r1 / (s.lambda * s.lambda) +
              s.gamma2 * s.gamma2 / (s.lambda * s.lambda * s.lambda);
     }},
    {F::binomial, R::nonuniform_local,
     [](const MomentSummary& s) {
       return s.r1 / (s.lambda * s.lambda) +
              s.gamma2 * s.gamma2 / (s.lambda * s.lambda * s.lambda);
     }},
};

}  // namespace

double rhs_without_constant(ApproximationFamily family, MetricRegime regime,
                            const MomentSummary& summary) {
  for (const RhsTemplate& t : kRhsTemplates) {
    if (t.family == family && t.regime == regime) return t.fn(summary);
  }
  throw domain_error("rhs_without_constant: no template for the requested pair");
}

std::vector<BoundRow> evaluate_point(const ModelPoint& point,
                                     std::span<const ApproximationFamily> families,
                                     double truncation_eps,
                                     std::vector<SkippedFamily>* skipped) {
  const OneDependentModel model = point.build();
  const MomentSummary summary = summarize(model);
  const SignedMeasure exact = exact_sum_distribution(model);

  std::vector<BoundRow> rows;
  for (ApproximationFamily family : families) {
    if (!family_admissible(family, summary.lambda, summary.gamma2)) {
      if (skipped) {
        skipped->push_back({point, family,
                            std::string(family_name(family)) + " inadmissible at lambda=" +
                                std::to_string(summary.lambda) + ", gamma2=" +
                                std::to_string(summary.gamma2)});
      }
      continue;
    }
    FamilyParams params;
    params.lambda = summary.lambda;
    params.gamma2 = summary.gamma2;
    params.truncation_eps = truncation_eps;
    SignedMeasure approx;
    try {
      approx = approximate(family, params);
    } catch (const convergence_error& e) {
      if (skipped) skipped->push_back({point, family, e.what()});
      continue;
    }

    for (MetricRegime regime : {MetricRegime::nonuniform_cdf, MetricRegime::wasserstein,
                                MetricRegime::nonuniform_local}) {
      DiscrepancyResult lhs;
      switch (regime) {
        case MetricRegime::nonuniform_cdf:
          lhs = nonuniform_kolmogorov(exact, approx, summary.lambda);
          break;
        case MetricRegime::wasserstein:
          lhs = wasserstein_norm(exact, approx);
          break;
        case MetricRegime::nonuniform_local:
          lhs = nonuniform_local(exact, approx, summary.lambda);
          break;
      }
      BoundRow row;
      row.point = point;
      row.family = family;
      row.regime = regime;
      row.lhs = lhs.value;
      row.rhs = rhs_without_constant(family, regime, summary);
      row.ratio = row.rhs > 0.0 ? row.lhs / row.rhs
                                : (row.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
      row.conditions_pass = summary.conditions.all();
      row.argmax_x = lhs.argmax_x;
      row.lambda = summary.lambda;
      row.gamma2 = summary.gamma2;
      row.delta_tilde = summary.delta_tilde;
      row.r0 = summary.r0;
      row.r1 = summary.r1;
      row.cov_sum = summary.cov_sum;
      row.c0 = summary.conditions.c0;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

BoundReport evaluate_bounds(const ExperimentConfig& config) {
  const std::vector<ModelPoint> points = config.sweep_points();
  if (points.empty()) throw domain_error("evaluate_bounds: empty sweep");
  const std::vector<ApproximationFamily>& families =
      config.families.empty() ? all_families() : config.families;

  std::vector<std::vector<BoundRow>> row_slots(points.size());
  std::vector<std::vector<SkippedFamily>> skip_slots(points.size());

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(hw, points.size()));

  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= points.size()) return;
      try {
        row_slots[i] = evaluate_point(points[i], families, config.truncation_eps, &skip_slots[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  BoundReport report;
  for (std::size_t i = 0; i < points.size(); ++i) {
    report.rows.insert(report.rows.end(), row_slots[i].begin(), row_slots[i].end());
    report.skipped.insert(report.skipped.end(), skip_slots[i].begin(), skip_slots[i].end());
  }
  return report;
}

ConstantEstimate estimate_constant(std::span<const BoundRow> rows, ApproximationFamily family,
                                   MetricRegime regime) {
  ConstantEstimate est;
  for (const BoundRow& row : rows) {
    if (row.family != family || row.regime != regime || !row.conditions_pass) continue;
    ++est.rows_used;
    if (!est.has_value || row.ratio > est.value) {
      est.has_value = true;
      est.value = row.ratio;
      est.argmax = row;
    }
  }
  return est;
}

std::vector<SharpConstantRow> sharp_constant_experiment(std::span<const std::int64_t> n_list,
                                                        double p) {
  std::vector<SharpConstantRow> rows;
  rows.reserve(n_list.size());
  for (std::int64_t n : n_list) {
    const OneDependentModel model =
        poisson_binomial_model(std::vector<double>(static_cast<std::size_t>(n), p));
    const SignedMeasure exact = exact_sum_distribution(model);
    SharpConstantRow row;
    row.n = n;
    row.lambda = static_cast<double>(n) * p;
    row.lambda2 = static_cast<double>(n) * p * p;
    FamilyParams params;
    params.lambda = row.lambda;
    const SignedMeasure fit = poisson(params);
    row.wasserstein = wasserstein_norm(exact, fit).value;
    row.scaled = std::sqrt(row.lambda) / row.lambda2 * row.wasserstein;
    row.deviation = row.scaled - 1.0 / std::sqrt(2.0 * std::numbers::pi);
    row.rate_bound = p + 1.0 / std::sqrt(row.lambda);
    row.regime_ok = p <= 0.05 && row.lambda >= 1.0;
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (is >> tok) tokens.push_back(tok);
  return tokens;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  bool saw_model = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::size_t eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos) {
      throw domain_error("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::istringstream key_stream(line.substr(0, eq));
    std::string key;
    key_stream >> key;
    const std::vector<std::string> values = tokenize(line.substr(eq + 1));
    auto require_values = [&](std::size_t at_least) {
      if (values.size() < at_least) {
        throw domain_error("config line " + std::to_string(lineno) + ": key '" + key +
                           "' needs a value");
      }
    };

    if (key == "model") {
      require_values(1);
      config.kind = model_kind_from_name(values[0]);
      saw_model = true;
    } else if (key == "n") {
      require_values(1);
      for (const std::string& v : values) config.n_values.push_back(std::stoll(v));
    } else if (key == "p") {
      require_values(1);
      for (const std::string& v : values) config.p_values.push_back(std::stod(v));
    } else if (key == "p_list") {
      require_values(1);
      for (const std::string& v : values) config.p_vector.push_back(std::stod(v));
    } else if (key == "k1") {
      require_values(1);
      config.k1 = std::stoi(values[0]);
    } else if (key == "k2") {
      require_values(1);
      config.k2 = std::stoi(values[0]);
    } else if (key == "families") {
      for (const std::string& v : values) config.families.push_back(family_from_name(v));
    } else if (key == "truncation_eps") {
      require_values(1);
      config.truncation_eps = std::stod(values[0]);
    } else if (key == "format") {
      require_values(1);
      if (values[0] != "csv" && values[0] != "json") {
        throw domain_error("config: format must be csv or json, got " + values[0]);
      }
      config.output_format = values[0];
    } else if (key == "output") {
      require_values(1);
      config.output_path = values[0];
    } else {
      throw domain_error("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!saw_model) throw domain_error("config: missing required key 'model'");
  if (config.p_vector.empty() && (config.n_values.empty() || config.p_values.empty())) {
    throw domain_error("config: need n and p value lists (or p_list for poisson-binomial)");
  }
  if (!config.p_vector.empty() && config.kind != ModelKind::poisson_binomial) {
    throw domain_error("config: p_list is only valid for the poisson-binomial model");
  }
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open config file: " + path);
  return parse_config(in);
}

namespace {

void write_point_fields_csv(std::ostream& out, const ModelPoint& pt) {
  out << model_kind_name(pt.kind) << ',' << pt.n << ',';
  if (pt.kind == ModelKind::poisson_binomial && !pt.p_vector.empty()) {
    out << "";
  } else {
    out << pt.p;
  }
  out << ',' << pt.k1 << ',' << pt.k2;
}

nlohmann::json point_to_json(const ModelPoint& pt) {
  nlohmann::json j;
  j["model"] = model_kind_name(pt.kind);
  j["n"] = pt.n;
  if (pt.kind == ModelKind::poisson_binomial && !pt.p_vector.empty()) {
    j["p_list"] = pt.p_vector;
  } else {
    j["p"] = pt.p;
  }
  if (pt.kind == ModelKind::k1k2) {
    j["k1"] = pt.k1;
    j["k2"] = pt.k2;
  }
  return j;
}

}  // namespace

void write_bounds_csv(std::ostream& out, const BoundReport& report) {
  out << "model,n,p,k1,k2,lambda,gamma2,delta_tilde,r0,r1,cov_sum,c0,family,metric,lhs,rhs,"
         "ratio,conditions_pass,argmax_x\n";
  out.precision(17);
  for (const BoundRow& row : report.rows) {
    write_point_fields_csv(out, row.point);
    out << ',' << row.lambda << ',' << row.gamma2 << ',' << row.delta_tilde << ',' << row.r0
        << ',' << row.r1 << ',' << row.cov_sum << ',' << row.c0 << ',' << family_name(row.family)
        << ',' << regime_name(row.regime) << ',' << row.lhs << ',' << row.rhs << ',' << row.ratio
        << ',' << (row.conditions_pass ? 1 : 0) << ',' << row.argmax_x << '\n';
  }
}

void write_bounds_json(std::ostream& out, const BoundReport& report) {
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const BoundRow& row : report.rows) {
    nlohmann::json r = point_to_json(row.point);
    r["lambda"] = row.lambda;
    r["gamma2"] = row.gamma2;
    r["delta_tilde"] = row.delta_tilde;
    r["r0"] = row.r0;
    r["r1"] = row.r1;
    r["cov_sum"] = row.cov_sum;
    r["c0"] = row.c0;
    r["family"] = family_name(row.family);
    r["metric"] = regime_name(row.regime);
    r["lhs"] = row.lhs;
    r["rhs"] = row.rhs;
    r["ratio"] = row.ratio;
    r["conditions_pass"] = row.conditions_pass;
    r["argmax_x"] = row.argmax_x;
    j["rows"].push_back(std::move(r));
  }
  j["skipped"] = nlohmann::json::array();
  for (const SkippedFamily& s : report.skipped) {
    nlohmann::json r = point_to_json(s.point);
    r["family"] = family_name(s.family);
    r["reason"] = s.reason;
    j["skipped"].push_back(std::move(r));
  }
  out << j.dump(2) << '\n';
}

void write_sharp_constant_csv(std::ostream& out, std::span<const SharpConstantRow> rows) {
  out << "n,lambda,lambda2,wasserstein,scaled,deviation,rate_bound,regime_ok\n";
  out.precision(17);
  for (const SharpConstantRow& row : rows) {
    out << row.n << ',' << row.lambda << ',' << row.lambda2 << ',' << row.wasserstein << ','
        << row.scaled << ',' << row.deviation << ',' << row.rate_bound << ','
        << (row.regime_ok ? 1 : 0) << '\n';
  }
}

}  // namespace dapprox
