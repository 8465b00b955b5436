#pragma once

#include <limits>
#include <vector>

#include <Eigen/Core>

#include "gegd/fdg.hpp"
#include "gegd/sampling.hpp"

namespace gegd {

// Score-function estimates of the Gaussian-smoothed cost and its gradient
// with respect to the sampling mean, with optional cost exponentiation and
// approximate control variates over a paired low-fidelity cost.

// -exp(-beta * (f - f_ref)). The shift by the batch minimum keeps the
// exponent nonpositive; relative sample weights are unchanged.
double exponentiate(double f, double beta_exp, double f_ref);

struct CostSample {
  int member = -1;
  double f_hi = std::numeric_limits<double>::quiet_NaN();
  double h_lo = std::numeric_limits<double>::quiet_NaN();
  bool has_hi = false;
  bool has_lo = false;
};

struct EstimatorConfig {
  bool exponentiate = true;
  double beta_exp = 20.0;
  bool acv = false;
};

struct EstimatorOutput {
  double ensemble_cost = 0.0;      // mean of raw sampled hi-fidelity costs
  double ensemble_cost_exp = 0.0;  // mean in exponentiated space (equals raw mean when off)
  Eigen::VectorXd grad_mean_reward;
  int best_member = -1;            // argmin of raw f_hi; -1 when no hi samples
  double best_cost = std::numeric_limits<double>::quiet_NaN();
  double corr = 0.0;     // component-averaged Corr[q f, q h] over paired members
  double beta_cv = 0.0;  // control-variate coefficient actually applied
  int m_hi = 0;
  int n_lo = 0;
};

// scores: one column of q = sigma_r^-2 Sigma^-1 delta per member, aligned with
// samples by member index. Samples lacking a usable cost are skipped with the
// averages renormalized accordingly.
EstimatorOutput estimate(const std::vector<CostSample>& samples,
                         const Eigen::MatrixXd& scores, const EstimatorConfig& config);

// Plain score-function gradient: mean over hi members of q * f.
Eigen::VectorXd ensemble_gradient(const std::vector<CostSample>& samples,
                                  const Eigen::MatrixXd& scores,
                                  const EstimatorConfig& config);

// Exact control variate for validation: g = mean(q f) - beta (mean(q h) - E[q h]).
Eigen::VectorXd cv_gradient_exact(const std::vector<CostSample>& samples,
                                  const Eigen::MatrixXd& scores,
                                  const Eigen::VectorXd& exact_mean_qh, double beta_cv);

struct BudgetPolicy {
  double t_hf = 1.0;
  double t_lf = 1.0;
  double t_iter = 10.0;
  int m_min = 5;     // floor on hi-fidelity samples when ACV is active
  int m_plain = 10;  // ensemble size when ACV is disabled entirely
  double c_max = 0.999;
};

struct Budget {
  int m = 0;
  int r_cv = 0;         // lo samples per hi sample (total lo = r_cv * m)
  bool acv_active = false;
};

// Continuous optimum r_cv = C sqrt(t_hf / (t_lf (1 - C^2))).
double rcv_continuous(double corr, double t_hf, double t_lf);

// Integer (M*, r_cv*) from the continuous optimum, clamped to the policy
// minima; the per-iteration budget M (t_hf + r_cv t_lf) <= t_iter always
// holds afterwards. corr >= 1 is clamped to c_max with a warning; corr <= 0
// disables ACV for the iteration (hi members keep one paired lo evaluation so
// the correlation estimate can recover).
Budget update_budget(const BudgetPolicy& policy, double corr_prev);

struct Incumbent {
  double cost = std::numeric_limits<double>::infinity();
  FeasibleDesign design;
  bool valid = false;
};

// Folds raw (un-exponentiated) hi-fidelity costs into the incumbent;
// the incumbent wins ties.
void track_best(const std::vector<CostSample>& samples,
                const std::vector<FeasibleDesign>& designs, Incumbent& incumbent);

}  // namespace gegd
