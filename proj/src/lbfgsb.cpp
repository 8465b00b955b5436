#include "gegd/lbfgsb.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "gegd/support.hpp"

namespace gegd {

namespace {

Eigen::VectorXd clamp_box(const Eigen::VectorXd& x, const Eigen::VectorXd& lo,
                          const Eigen::VectorXd& hi) {
  return x.cwiseMax(lo).cwiseMin(hi);
}

// Sup-norm of the projected gradient P(x - g) - x.
double pg_norm(const Eigen::VectorXd& x, const Eigen::VectorXd& g,
               const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  return (clamp_box(x - g, lo, hi) - x).lpNorm<Eigen::Infinity>();
}

struct Pair {
  Eigen::VectorXd s, y;
  double rho;
};

}  // namespace

LbfgsbResult lbfgsb_minimize(const Objective& objective, const Eigen::VectorXd& x0,
                             const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                             const LbfgsbOptions& options,
                             const std::function<void(const Eigen::VectorXd&, double)>&
                                 per_eval) {
  const Eigen::Index n = x0.size();
  if (lower.size() != n || upper.size() != n)
    throw DimensionError("bound dimensions do not match x0");

  LbfgsbResult res;
  res.x = clamp_box(x0, lower, upper);

  Eigen::VectorXd g(n);
  auto eval = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
    const double f = objective(x, grad);
    ++res.evals;
    if (per_eval) per_eval(x, f);
    return f;
  };

  res.f = eval(res.x, g);
  std::deque<Pair> pairs;

  while (res.evals < options.max_evals) {
    if (pg_norm(res.x, g, lower, upper) < options.pgtol) {
      res.converged = true;
      break;
    }

    // Two-loop recursion for d = -H g.
    Eigen::VectorXd d = -g;
    {
      std::vector<double> alpha(pairs.size());
      for (int i = int(pairs.size()) - 1; i >= 0; --i) {
        alpha[i] = pairs[i].rho * pairs[i].s.dot(d);
        d -= alpha[i] * pairs[i].y;
      }
      if (!pairs.empty()) {
        const auto& last = pairs.back();
        d *= last.s.dot(last.y) / last.y.squaredNorm();
      }
      for (size_t i = 0; i < pairs.size(); ++i) {
        const double beta = pairs[i].rho * pairs[i].y.dot(d);
        d += (alpha[i] - beta) * pairs[i].s;
      }
    }

    // Zero direction components that push an active bound further out.
    for (Eigen::Index i = 0; i < n; ++i) {
      if ((res.x[i] <= lower[i] && d[i] < 0.0) || (res.x[i] >= upper[i] && d[i] > 0.0))
        d[i] = 0.0;
    }
    double dg = g.dot(d);
    if (dg >= 0.0) {
      d = -g;
      for (Eigen::Index i = 0; i < n; ++i)
        if ((res.x[i] <= lower[i] && d[i] < 0.0) || (res.x[i] >= upper[i] && d[i] > 0.0))
          d[i] = 0.0;
      dg = g.dot(d);
      if (dg >= 0.0) break;  // stationary within the box
    }

    // Strong-Wolfe line search on phi(a) = f(P(x + a d)) with backtracking /
    // extrapolation and bisection on a bracket.
    const double f0 = res.f;
    double a = 1.0, a_lo = 0.0, a_hi = std::numeric_limits<double>::infinity();
    double best_a = 0.0, best_f = f0;
    Eigen::VectorXd best_g = g, x_trial(n), g_trial(n);
    bool accepted = false;
    for (int ls = 0; ls < options.max_linesearch && res.evals < options.max_evals; ++ls) {
      x_trial = clamp_box(res.x + a * d, lower, upper);
      const double f_trial = eval(x_trial, g_trial);
      if (f_trial < best_f) {
        best_f = f_trial;
        best_a = a;
        best_g = g_trial;
      }
      const double dg_trial = g_trial.dot(d);
      if (f_trial > f0 + options.wolfe_c1 * a * dg || (ls > 0 && f_trial >= best_f && a > best_a)) {
        a_hi = a;  // overshoot
      } else if (std::abs(dg_trial) <= -options.wolfe_c2 * dg) {
        accepted = true;  // strong Wolfe satisfied
        best_f = f_trial;
        best_a = a;
        best_g = g_trial;
        break;
      } else if (dg_trial >= 0.0) {
        a_hi = a;
      } else {
        a_lo = a;
      }
      a = std::isfinite(a_hi) ? 0.5 * (a_lo + a_hi) : 2.0 * a;
    }
    if (!accepted && best_a == 0.0) break;  // no decrease found

    const Eigen::VectorXd x_new = clamp_box(res.x + best_a * d, lower, upper);
    Eigen::VectorXd g_new = best_g;
    const Eigen::VectorXd s = x_new - res.x;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-10 * s.norm() * y.norm()) {
      pairs.push_back({s, y, 1.0 / sy});
      if (int(pairs.size()) > options.memory) pairs.pop_front();
    }
    res.x = x_new;
    res.f = best_f;
    g = g_new;
    ++res.iterations;
    if (s.lpNorm<Eigen::Infinity>() == 0.0) break;
  }
  return res;
}

}  // namespace gegd
