#pragma once

#include <functional>

#include <Eigen/Core>

namespace gegd {

// Box-constrained limited-memory quasi-Newton minimizer: two-loop recursion
// over recent curvature pairs, gradient projection onto the box for the
// active set, and a strong-Wolfe line search along the projected direction.

struct LbfgsbOptions {
  int memory = 10;
  int max_evals = 200;       // budget on objective evaluations (f and g together)
  double pgtol = 1e-10;      // sup-norm of the projected gradient
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;
  int max_linesearch = 20;
};

struct LbfgsbResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int evals = 0;
  int iterations = 0;
  bool converged = false;  // projected-gradient tolerance reached
};

// objective(x, grad) -> f, filling grad. Evaluations are counted; the solver
// stops at max_evals, at pgtol, or when the line search cannot make progress.
using Objective = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

// per_eval, when given, is invoked after every objective evaluation with
// (x, f); baselines use it to trace cost against the evaluation budget.
LbfgsbResult lbfgsb_minimize(const Objective& objective, const Eigen::VectorXd& x0,
                             const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                             const LbfgsbOptions& options,
                             const std::function<void(const Eigen::VectorXd&, double)>&
                                 per_eval = nullptr);

}  // namespace gegd
