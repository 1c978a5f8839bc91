// SPDX-License-Identifier: Apache-2.0
//
// dapprox CLI: pmf emission, moment summaries, bound sweeps and the
// sharp-constant experiment, all on top of the core library.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dapprox/errors.hpp"
#include "dapprox/families.hpp"
#include "dapprox/harness.hpp"
#include "dapprox/models.hpp"
#include "dapprox/moments.hpp"

namespace {

using namespace dapprox;

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw domain_error("cannot open output file: " + path);
  return file;
}

void emit_pmf_csv(std::ostream& out, const SignedMeasure& m) {
  out << "k,mass\n";
  out.precision(17);
  for (std::int64_t k = m.min_support(); k <= m.max_support(); ++k) {
    out << k << ',' << m.at(k) << '\n';
  }
}

nlohmann::json summary_to_json(const MomentSummary& s) {
  nlohmann::json j;
  j["lambda"] = s.lambda;
  j["variance"] = s.variance;
  j["gamma2"] = s.gamma2;
  j["delta_tilde"] = s.delta_tilde;
  j["tp_shift"] = s.tp_shift;
  j["cov_sum"] = s.cov_sum;
  j["r0"] = s.r0;
  j["r1"] = s.r1;
  nlohmann::json nu = nlohmann::json::array();
  for (const auto& row : s.nu) nu.push_back({row[0], row[1], row[2]});
  j["nu"] = std::move(nu);
  j["conditions"] = {
      {"nu1_small", s.conditions.nu1_small},
      {"nu1_violation", s.conditions.nu1_violation},
      {"nu2_le_nu1", s.conditions.nu2_le_nu1},
      {"nu2_violation", s.conditions.nu2_violation},
      {"c0", s.conditions.c0},
      {"lambda_ge_one", s.conditions.lambda_ge_one},
      {"nu2_sum_small", s.conditions.nu2_sum_small},
      {"cov_sum_small", s.conditions.cov_sum_small},
      {"all", s.conditions.all()},
  };
  return j;
}

struct ModelArgs {
  std::string model;
  std::int64_t n = 0;
  double p = 0.0;
  std::vector<double> p_list;
  int k1 = 1;
  int k2 = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model, "poisson-binomial | two-runs | k1k2")->required();
    cmd->add_option("--n", n, "number of summands (chain length for k1k2)");
    cmd->add_option("--p", p, "per-trial success probability");
    cmd->add_option("--p-list", p_list, "explicit poisson-binomial probabilities");
    cmd->add_option("--k1", k1, "failure run length (k1k2 model)");
    cmd->add_option("--k2", k2, "success run length (k1k2 model)");
  }

  OneDependentModel build() const {
    ModelPoint pt;
    pt.kind = model_kind_from_name(model);
    pt.n = n;
    pt.p = p;
    pt.p_vector = p_list;
    pt.k1 = k1;
    pt.k2 = k2;
    return pt.build();
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete approximation families and error-bound experiments"};
  app.require_subcommand(1);

  // approximate <family> --lambda --gamma2
  std::string family_arg;
  double lambda_arg = 1.0;
  double gamma2_arg = 0.0;
  double eps_arg = 1e-12;
  std::int64_t cap_arg = 0;
  std::string approx_output;
  CLI::App* approx_cmd = app.add_subcommand("approximate", "emit a family pmf as CSV (k,mass)");
  approx_cmd->add_option("family", family_arg,
                         "poisson | corrected-poisson | compound-poisson | translated-poisson | "
                         "negative-binomial | binomial")
      ->required();
  approx_cmd->add_option("--lambda", lambda_arg, "target mean")->required();
  approx_cmd->add_option("--gamma2", gamma2_arg, "dispersion correction (Var-E)/2");
  approx_cmd->add_option("--eps", eps_arg, "truncation tolerance");
  approx_cmd->add_option("--max-support", cap_arg, "hard support cap (0 = auto)");
  approx_cmd->add_option("-o,--output", approx_output, "output path (default stdout)");

  // moments <model-spec>
  ModelArgs moments_args;
  std::string moments_output;
  CLI::App* moments_cmd = app.add_subcommand("moments", "emit the moment summary as JSON");
  moments_args.attach(moments_cmd);
  moments_cmd->add_option("-o,--output", moments_output, "output path (default stdout)");

  // bounds <config-file>
  std::string config_path;
  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "run a bound sweep described by a config file");
  bounds_cmd->add_option("config", config_path, "flat key=value config file")->required();

  // sharp-constant --p --n-list
  double sharp_p = 0.005;
  std::vector<std::int64_t> sharp_ns;
  std::string sharp_output;
  CLI::App* sharp_cmd = app.add_subcommand(
      "sharp-constant", "scaled Wasserstein distance of the Poisson fit per n");
  sharp_cmd->add_option("--p", sharp_p, "common success probability")->required();
  sharp_cmd->add_option("--n-list", sharp_ns, "summand counts")->required()->expected(-1);
  sharp_cmd->add_option("-o,--output", sharp_output, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (approx_cmd->parsed()) {
      FamilyParams params{
          .lambda = lambda_arg, .gamma2 = gamma2_arg, .truncation_eps = eps_arg,
          .max_support = cap_arg};
      const SignedMeasure m = approximate(family_from_name(family_arg), params);
      std::ofstream file;
      emit_pmf_csv(open_output(approx_output, file), m);
    } else if (moments_cmd->parsed()) {
      const MomentSummary s = summarize(moments_args.build());
      std::ofstream file;
      open_output(moments_output, file) << summary_to_json(s).dump(2) << '\n';
    } else if (bounds_cmd->parsed()) {
      const ExperimentConfig config = parse_config_file(config_path);
      const BoundReport report = evaluate_bounds(config);
      std::ofstream file;
      std::ostream& out = open_output(config.output_path, file);
      if (config.output_format == "json") {
        write_bounds_json(out, report);
      } else {
        write_bounds_csv(out, report);
      }
    } else if (sharp_cmd->parsed()) {
      const auto rows = sharp_constant_experiment(sharp_ns, sharp_p);
      std::ofstream file;
      write_sharp_constant_csv(open_output(sharp_output, file), rows);
    }
  } catch (const domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const resource_error& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
