#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gegd/config.hpp"
#include "gegd/io.hpp"
#include "gegd/runner.hpp"
#include "gegd/sampling.hpp"

namespace {

void print_error(const std::string& kind, const std::string& what) {
  nlohmann::json j = {{"error", kind}, {"message", what}};
  std::cerr << j.dump() << "\n";
}

gegd::RunConfig load_config(const std::string& path, uint64_t seed_override, bool has_seed,
                            int workers_override, const std::string& out_override) {
  gegd::RunConfig cfg = gegd::parse_config_file(path);
  if (has_seed) {
    cfg.seed = seed_override;
    cfg.gegd.seed = seed_override;
    cfg.tf.seed = seed_override;
    cfg.af_ste.seed = seed_override;
    cfg.af_pso.pso.seed = seed_override;
    if (cfg.bench) cfg.bench->master_seed = seed_override;
  }
  if (workers_override > 0) {
    cfg.workers = workers_override;
    if (cfg.bench) cfg.bench->workers = workers_override;
  }
  if (!out_override.empty()) cfg.output_dir = out_override;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian ensemble gradient descent for fabrication-constrained design"};
  app.require_subcommand(1);

  std::string config_path, out_dir, design_path, cache_path;
  uint64_t seed = 0;
  bool seed_set = false;
  int workers = 0;
  int brush_diameter = 0;
  int rows = 0, cols = 0, min_feature = 0;
  double kappa = 1e6;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "configuration file (JSON)")->required();
    sub->add_option("--seed", seed, "master seed override")->each([&](const std::string&) {
      seed_set = true;
    });
    sub->add_option("--workers", workers, "cost-evaluation worker count");
    sub->add_option("--out", out_dir, "output directory override");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run one optimization");
  add_common(run_cmd);
  CLI::App* bench_cmd = app.add_subcommand("bench", "run the benchmark harness");
  add_common(bench_cmd);

  CLI::App* feas_cmd = app.add_subcommand("feascheck", "check a design file for feasibility");
  feas_cmd->add_option("--design", design_path, "design file (.pgm or .csv)")->required();
  feas_cmd->add_option("--brush", brush_diameter, "brush diameter in pixels")->required();

  CLI::App* cov_cmd = app.add_subcommand("covcache", "prebuild a covariance factor cache");
  cov_cmd->add_option("--rows", rows)->required();
  cov_cmd->add_option("--cols", cols)->required();
  cov_cmd->add_option("--min-feature", min_feature)->required();
  cov_cmd->add_option("--kappa", kappa, "target condition number");
  cov_cmd->add_option("--out", cache_path, "cache file path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gegd::kConfigError;
  }

  try {
    if (run_cmd->parsed()) {
      gegd::RunConfig cfg = load_config(config_path, seed, seed_set, workers, out_dir);
      gegd::execute_run(cfg);
      return gegd::kOk;
    }
    if (bench_cmd->parsed()) {
      gegd::RunConfig cfg = load_config(config_path, seed, seed_set, workers, out_dir);
      gegd::BenchSummary summary = gegd::execute_bench(cfg);
      for (const auto& [algo, m] : summary.median_best)
        std::cout << algo << " median best cost: " << m << "\n";
      return gegd::kOk;
    }
    if (feas_cmd->parsed()) {
      const gegd::FeasibleDesign d = gegd::read_design(design_path);
      const bool ok = gegd::check_feasibility(d, gegd::Brush::disk(brush_diameter));
      std::cout << (ok ? "feasible" : "infeasible") << "\n";
      return ok ? gegd::kOk : gegd::kInfeasible;
    }
    if (cov_cmd->parsed()) {
      gegd::DesignGrid grid(rows, cols, gegd::Symmetry::None, min_feature);
      gegd::CovarianceModel m = gegd::CovarianceModel::rbf(grid, kappa);
      m.save_cache(cache_path);
      std::cout << "wrote " << cache_path << " (epsilon " << m.epsilon() << ")\n";
      return gegd::kOk;
    }
  } catch (const gegd::ConfigError& e) {
    print_error("config", e.what());
    return gegd::kConfigError;
  } catch (const gegd::ParameterError& e) {
    print_error("config", e.what());
    return gegd::kConfigError;
  } catch (const gegd::BackendError& e) {
    print_error("backend", e.what());
    return gegd::kBackendFailure;
  } catch (const gegd::NumericalError& e) {
    print_error("numerical", e.what());
    return gegd::kNumericalAbort;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return gegd::kNumericalAbort;
  }
  return gegd::kConfigError;
}
