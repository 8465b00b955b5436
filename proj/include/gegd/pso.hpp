#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace gegd {

// Global-best particle swarm with inertia decay on stalls and probabilistic
// velocity re-randomization of a particle subset ("craziness").

struct PsoOptions {
  int swarm_size = 10;
  int iterations = 200;
  double cognitive = 1.49;
  double social = 1.49;
  double inertia0 = 0.9;
  double inertia_decay = 0.95;
  int stall_window = 5;
  double craziness_prob = 0.22;
  double craziness_fraction = 0.10;
  double velocity_max = 0.5;      // per-component clamp
  double position_lo = -1.0;
  double position_hi = 1.0;
  uint64_t seed = 1;
};

struct PsoIteration {
  int iteration = 0;
  double mean_cost = 0.0;
  double best_cost = 0.0;
  double inertia = 0.0;
  int best_particle = 0;
};

struct PsoResult {
  Eigen::VectorXd best_position;
  double best_cost = 0.0;
  std::vector<PsoIteration> history;
};

// Batch objective: evaluates all column positions, returning one cost each.
// The batched form lets callers fan evaluations out to workers while keeping
// the swarm updates serial and deterministic.
using SwarmObjective = std::function<std::vector<double>(const Eigen::MatrixXd&)>;

PsoResult pso_minimize(const SwarmObjective& objective, int dim, const PsoOptions& options);

}  // namespace gegd
