#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gegd/dispatch.hpp"
#include "gegd/estimator.hpp"
#include "gegd/field_chain.hpp"
#include "gegd/sampling.hpp"

namespace gegd {

struct AdamState {
  Eigen::VectorXd m, v;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  int64_t t = 0;

  void init(Eigen::Index n) {
    m = Eigen::VectorXd::Zero(n);
    v = Eigen::VectorXd::Zero(n);
    t = 0;
  }
};

// One bias-corrected ADAM step: x <- x - eta * m_hat / (sqrt(v_hat) + eps).
void adam_update(AdamState& state, Eigen::VectorXd& x, const Eigen::VectorXd& grad,
                 double eta);

// Radial step schedule: eta0 for the first two iterations, then
// eta0 * (|mu_L^(i-1)| / |mu_L^(2)|)^(1/3). iter_index is 1-based.
double step_size(int iter_index, double mu_norm_prev, double mu_norm_ref, double eta0);

struct IterationRecord {
  int iteration = 0;
  double ensemble_cost = 0.0;
  double best_cost = 0.0;
  double mu_norm = 0.0;
  double eta = 0.0;
  int m = 0;
  int r_cv = 0;
  double corr = 0.0;
};

struct OptimizationTrace {
  std::vector<IterationRecord> records;
  Incumbent best;
  double hf_equiv_cost = 0.0;  // total consumed budget in t_HF units
};

struct GegdConfig {
  int max_iterations = 300;
  uint64_t seed = 1;
  double sigma_r = 0.005;
  double beta_exp = 20.0;
  bool exponentiate = true;
  CovarianceMode covariance = CovarianceMode::Rbf;
  double kappa = 1e6;
  bool acv = false;
  int m_plain = 10;
  BudgetPolicy budget;
  double eta0 = 1e-4;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double proj_beta = 8.0;
  double filter_sigma = 0.0;  // <= 0: sqrt(2) L_min / 4
  int checkpoint_every = 0;
  std::string checkpoint_dir;
};

// Full GEGD loop per iteration: forward chain -> perturbation ensemble ->
// feasible designs -> batched cost evaluation -> (ACV) ensemble gradient ->
// backward chain -> radial-scheduled ADAM step on the dummy variables.
// Initialization is the origin (zeta = 0). Deterministic for a fixed
// (seed, config, problem) at any worker count.
OptimizationTrace run_gegd(const GegdConfig& config, const DesignGrid& grid,
                           const Problem& problem, CostDispatcher& dispatcher,
                           const CovarianceModel& cov);

}  // namespace gegd
