#pragma once

#include <cstdint>
#include <vector>

#include "gegd/dispatch.hpp"
#include "gegd/optimizer.hpp"
#include "gegd/pso.hpp"

namespace gegd {

// Comparison algorithms: grayscale three-field optimization with a bounded
// quasi-Newton method (TF), always-feasible straight-through-estimator
// descent (AF-STE), and always-feasible particle swarm (AF-PSO).

struct TfConfig {
  std::vector<double> beta_schedule = {8, 16, 32, 64, 128};
  int evals_per_stage = 100;
  double filter_sigma = 0.0;  // <= 0: L_min
  uint64_t seed = 1;
  int memory = 10;
  double pgtol = 1e-10;
  bool random_init = true;  // uniform latent start in [-1, 1]^N
};

struct TfResult {
  OptimizationTrace trace;     // ensemble_cost = grayscale cost, eta = beta stage
  FeasibleDesign final_design; // projected density thresholded at 0
  double gray_cost = 0.0;      // final grayscale cost
  double binary_cost = 0.0;    // cost of the thresholded design
  bool feasible = false;       // check_feasibility on the thresholded design
};

// Minimizes the grayscale cost over latent densities in [-1, 1]^N through
// expand -> filter -> project, raising the projection strength per schedule.
// Feasibility is NOT enforced; the result carries a feasibility flag.
TfResult run_tf(const TfConfig& config, const DesignGrid& grid, const Problem& problem);

struct SteConfig {
  int iterations = 200;
  double eta0 = 0.001;
  double beta1 = 0.667;
  double beta2 = 0.9;
  double adam_eps = 1e-8;
  double filter_sigma = 0.0;  // <= 0: sqrt(2) L_min / 4
  double proj_beta = 8.0;
  uint64_t seed = 1;
  bool random_init = true;
};

// Deterministic descent through the feasible design generator with the
// straight-through substitute d rho_F / d rho_R := I. Every evaluated design
// is feasible by construction.
OptimizationTrace run_af_ste(const SteConfig& config, const DesignGrid& grid,
                             const Problem& problem);

struct AfPsoConfig {
  PsoOptions pso;
  double filter_sigma = 0.0;  // <= 0: sqrt(2) L_min / 4
  double proj_beta = 8.0;
};

// Swarm positions are latent densities in [-1, 1]^N; every evaluation maps
// through the chain and the generator, so only feasible designs are costed.
OptimizationTrace run_af_pso(const AfPsoConfig& config, const DesignGrid& grid,
                             CostDispatcher& dispatcher);

}  // namespace gegd
