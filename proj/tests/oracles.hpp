#pragma once

// Independent oracles used only by the test suite: closed-form Gaussian
// moments for quadratic costs, exhaustive feasibility enumeration, and
// central finite differences. Deliberately brute force; nothing here shares
// code with the implementation paths under test.

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "gegd/fdg.hpp"
#include "gegd/grid.hpp"

namespace oracles {

// f(x) = x' A x + b' x + c with A symmetric.
struct QuadraticProblem {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  double c = 0.0;

  double eval(const Eigen::VectorXd& x) const {
    return x.dot(a * x) + b.dot(x) + c;
  }
};

// Smoothed cost under N(mu, sigma_r^2 Sigma):
//   f'(mu) = mu' A mu + b' mu + c + sigma_r^2 tr(A Sigma),  grad = 2 A mu + b.
struct SmoothedCost {
  double value;
  Eigen::VectorXd grad;
};

SmoothedCost smoothed_cost_oracle(const QuadraticProblem& p, const Eigen::VectorXd& mu,
                                  double sigma_r, const Eigen::MatrixXd& sigma);

// Monte Carlo estimate of the smoothed cost, used once to validate the
// closed form before the oracle is trusted (two-layer verification).
double smoothed_cost_monte_carlo(const QuadraticProblem& p, const Eigen::VectorXd& mu,
                                 double sigma_r, const Eigen::MatrixXd& sigma_chol_lower,
                                 int samples, uint64_t seed);

// All feasible binary designs on a small grid by exhaustive enumeration.
std::vector<gegd::FeasibleDesign> brute_feasible_enumerate(int rows, int cols,
                                                           const gegd::Brush& brush);

// Central finite differences of a scalar function of a vector.
Eigen::VectorXd finite_difference_gradient(
    const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
    double h);

}  // namespace oracles
