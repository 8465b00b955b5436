#include "gegd/pso.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gegd/support.hpp"

namespace gegd {

PsoResult pso_minimize(const SwarmObjective& objective, int dim, const PsoOptions& opt) {
  if (opt.swarm_size < 1 || opt.iterations < 0) throw ParameterError("bad swarm configuration");
  if (opt.craziness_prob < 0.0 || opt.craziness_prob > 1.0 ||
      opt.craziness_fraction < 0.0 || opt.craziness_fraction > 1.0)
    throw ParameterError("craziness parameters must be probabilities");

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int P = opt.swarm_size;

  Eigen::MatrixXd x(dim, P), v = Eigen::MatrixXd::Zero(dim, P);
  for (int p = 0; p < P; ++p)
    for (int i = 0; i < dim; ++i)
      x(i, p) = opt.position_lo + (opt.position_hi - opt.position_lo) * unit(rng);

  std::vector<double> cost = objective(x);
  Eigen::MatrixXd pbest_x = x;
  std::vector<double> pbest = cost;

  PsoResult res;
  int gbest = int(std::min_element(cost.begin(), cost.end()) - cost.begin());
  res.best_position = x.col(gbest);
  res.best_cost = cost[gbest];

  double inertia = opt.inertia0;
  int stall = 0;
  for (int iter = 1; iter <= opt.iterations; ++iter) {
    if (stall >= opt.stall_window) inertia *= opt.inertia_decay;

    // Craziness: one Bernoulli draw per iteration; on success a random subset
    // of particles gets fresh uniform velocities.
    if (unit(rng) < opt.craziness_prob) {
      const int count = std::max(1, int(std::floor(opt.craziness_fraction * P)));
      std::vector<int> order(P);
      for (int p = 0; p < P; ++p) order[p] = p;
      for (int p = 0; p < count; ++p) {
        std::uniform_int_distribution<int> pick(p, P - 1);
        std::swap(order[p], order[pick(rng)]);
        const int chosen = order[p];
        for (int i = 0; i < dim; ++i)
          v(i, chosen) = opt.velocity_max * (2.0 * unit(rng) - 1.0);
      }
    }

    for (int p = 0; p < P; ++p) {
      for (int i = 0; i < dim; ++i) {
        const double r1 = unit(rng), r2 = unit(rng);
        double vel = inertia * v(i, p) + opt.cognitive * r1 * (pbest_x(i, p) - x(i, p)) +
                     opt.social * r2 * (res.best_position[i] - x(i, p));
        vel = std::clamp(vel, -opt.velocity_max, opt.velocity_max);
        v(i, p) = vel;
        x(i, p) = std::clamp(x(i, p) + vel, opt.position_lo, opt.position_hi);
      }
    }

    cost = objective(x);
    bool improved = false;
    double sum = 0.0;
    for (int p = 0; p < P; ++p) {
      sum += cost[p];
      if (cost[p] < pbest[p]) {
        pbest[p] = cost[p];
        pbest_x.col(p) = x.col(p);
      }
      if (cost[p] < res.best_cost) {
        res.best_cost = cost[p];
        res.best_position = x.col(p);
        improved = true;
      }
    }
    stall = improved ? 0 : stall + 1;

    PsoIteration rec;
    rec.iteration = iter;
    rec.mean_cost = sum / P;
    rec.best_cost = res.best_cost;
    rec.inertia = inertia;
    res.history.push_back(rec);
  }
  return res;
}

}  // namespace gegd
