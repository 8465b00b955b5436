#include "oracles.hpp"

#include "gegd/rng.hpp"
#include "gegd/support.hpp"

namespace oracles {

SmoothedCost smoothed_cost_oracle(const QuadraticProblem& p, const Eigen::VectorXd& mu,
                                  double sigma_r, const Eigen::MatrixXd& sigma) {
  if (!p.a.isApprox(p.a.transpose(), 1e-12))
    throw gegd::ContractError("quadratic oracle requires symmetric A");
  SmoothedCost out;
  out.value = mu.dot(p.a * mu) + p.b.dot(mu) + p.c +
              sigma_r * sigma_r * (p.a * sigma).trace();
  out.grad = 2.0 * p.a * mu + p.b;
  return out;
}

double smoothed_cost_monte_carlo(const QuadraticProblem& p, const Eigen::VectorXd& mu,
                                 double sigma_r, const Eigen::MatrixXd& sigma_chol_lower,
                                 int samples, uint64_t seed) {
  const int n = int(mu.size());
  double acc = 0.0;
  Eigen::VectorXd z(n);
  for (int s = 0; s < samples; ++s) {
    gegd::rng::fill_normal(z, seed, gegd::rng::kGeneric, 0xBEEF, uint32_t(s));
    const Eigen::VectorXd x = mu + sigma_r * (sigma_chol_lower * z);
    acc += p.eval(x);
  }
  return acc / samples;
}

std::vector<gegd::FeasibleDesign> brute_feasible_enumerate(int rows, int cols,
                                                           const gegd::Brush& brush) {
  const int n = rows * cols;
  if (n > 16) throw gegd::ContractError("enumeration oracle limited to 16 pixels");
  std::vector<gegd::FeasibleDesign> out;
  for (uint32_t bits = 0; bits < (1u << n); ++bits) {
    gegd::FeasibleDesign d;
    d.rows = rows;
    d.cols = cols;
    d.cells.resize(n);
    for (int i = 0; i < n; ++i) d.cells[i] = (bits >> i) & 1u;
    if (gegd::check_feasibility(d, brush)) out.push_back(std::move(d));
  }
  return out;
}

Eigen::VectorXd finite_difference_gradient(
    const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
    double h) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd xp = x, xm = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h;
    xm[i] = x[i] - h;
    g[i] = (f(xp) - f(xm)) / (2.0 * h);
    xp[i] = x[i];
    xm[i] = x[i];
  }
  return g;
}

}  // namespace oracles
