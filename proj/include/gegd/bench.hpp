#pragma once

#include <map>
#include <string>
#include <vector>

#include "gegd/baselines.hpp"
#include "gegd/testfunc.hpp"

namespace gegd {

// Budget-matched comparison harness. Per repetition and budget unit:
//   gegd, af_pso      1 run, 10 t_HF per iteration
//   tf, af_ste        `restarts` runs at 1.5 t_HF per iteration, best-of kept
// The ablation variants gegd_iso_nocv / gegd_rbf_nocv / gegd_rbf_cv run GEGD
// with the sampling-efficiency features switched individually.

struct BenchConfig {
  std::vector<std::string> algorithms = {"gegd", "tf", "af_ste", "af_pso"};
  int repetitions = 20;
  int iterations = 200;
  uint64_t master_seed = 1;
  int workers = 1;

  double budget_per_iteration = 10.0;  // in t_HF units
  double grad_cost_factor = 1.5;       // forward+backward relative to forward
  int restarts = 7;                    // TF / AF-STE runs per repetition
  double budget_tolerance = 0.05;

  double sigma_r = 0.005;
  double beta_exp = 20.0;
  double kappa = 1e6;
  double t_hf_over_t_lf = 33.0;  // configured fidelity cost ratio
  int m_plain = 10;
  int m_min = 5;
  double eta0 = 1e-4;
  double ste_eta0 = 0.001;
};

struct BenchRun {
  std::string algorithm;
  int rep = 0;
  double best_cost = 0.0;
  double converged_ensemble_cost = 0.0;  // mean ensemble cost over the last 10%
  double hf_equiv_cost = 0.0;
  double wall_time_s = 0.0;
  OptimizationTrace trace;
};

struct BenchSummary {
  std::vector<BenchRun> runs;
  std::map<std::string, double> median_best;
  std::map<std::string, double> median_converged;

  std::string summary_csv() const;  // algorithm,rep,best_cost,wall_time,hf_equiv_cost
};

// Throws ConfigError when any algorithm's nominal budget deviates from the
// reference (budget_per_iteration * iterations) by more than the tolerance.
void validate_budget_parity(const BenchConfig& config);

BenchSummary run_benchmark(const BenchConfig& config, const TestFunctionSpec& spec,
                           const TestCvSpec& cv);

double median(std::vector<double> values);

// GegdConfig assembled the way the harness runs a given variant; exposed for
// the reproduction CLI and tests.
GegdConfig bench_gegd_config(const BenchConfig& config, const std::string& variant,
                             uint64_t seed);

}  // namespace gegd
