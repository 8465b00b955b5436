#include "gegd/estimator.hpp"

#include <cmath>

#include "gegd/support.hpp"

namespace gegd {

double exponentiate(double f, double beta_exp, double f_ref) {
  if (beta_exp <= 0.0) throw ParameterError("beta_exp must be positive");
  const double e = -beta_exp * (f - f_ref);
  if (e > 700.0) {  // only reachable with f below the reference
    warn("cost exponentiation overflow; clamping");
    return -std::numeric_limits<double>::max();
  }
  return -std::exp(e);
}

namespace {

// Batch minimum over every usable sampled cost (hi and lo share one shift so
// the transform preserves their correlation).
double reference_cost(const std::vector<CostSample>& samples) {
  double ref = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    if (s.has_hi && std::isfinite(s.f_hi)) ref = std::min(ref, s.f_hi);
    if (s.has_lo && std::isfinite(s.h_lo)) ref = std::min(ref, s.h_lo);
  }
  return ref;
}

}  // namespace

EstimatorOutput estimate(const std::vector<CostSample>& samples,
                         const Eigen::MatrixXd& scores, const EstimatorConfig& config) {
  const int dim = int(scores.rows());
  EstimatorOutput out;
  out.grad_mean_reward = Eigen::VectorXd::Zero(dim);

  const double f_ref = config.exponentiate ? reference_cost(samples) : 0.0;
  auto transform = [&](double v) {
    return config.exponentiate ? exponentiate(v, config.beta_exp, f_ref) : v;
  };

  double sum_raw = 0.0, sum_exp = 0.0;
  int m_hi = 0, n_lo = 0;
  for (const auto& s : samples) {
    if (s.has_hi && std::isfinite(s.f_hi)) {
      sum_raw += s.f_hi;
      sum_exp += transform(s.f_hi);
      ++m_hi;
      if (out.best_member < 0 || s.f_hi < out.best_cost) {
        out.best_cost = s.f_hi;
        out.best_member = s.member;
      }
    }
    if (s.has_lo && std::isfinite(s.h_lo)) ++n_lo;
  }
  if (m_hi == 0) throw ContractError("estimator requires at least one hi-fidelity sample");
  out.ensemble_cost = sum_raw / m_hi;
  out.ensemble_cost_exp = sum_exp / m_hi;
  out.m_hi = m_hi;
  out.n_lo = n_lo;

  // Plain score-function gradient over the hi members.
  Eigen::VectorXd grad_f = Eigen::VectorXd::Zero(dim);
  for (const auto& s : samples)
    if (s.has_hi && std::isfinite(s.f_hi))
      grad_f += scores.col(s.member) * transform(s.f_hi);
  grad_f /= double(m_hi);
  out.grad_mean_reward = grad_f;
  if (n_lo == 0) return out;

  // Component-averaged beta_cv and correlation from the paired members. The
  // correlation is reported even when the CV correction is not applied, so the
  // adaptive budget can recover from a zero-correlation iteration.
  auto paired = [&](const CostSample& s) {
    return s.has_hi && s.has_lo && std::isfinite(s.f_hi) && std::isfinite(s.h_lo);
  };
  Eigen::VectorXd mean_qf = Eigen::VectorXd::Zero(dim), mean_qh = Eigen::VectorXd::Zero(dim);
  int pairs = 0;
  for (const auto& s : samples)
    if (paired(s)) {
      mean_qf += scores.col(s.member) * transform(s.f_hi);
      mean_qh += scores.col(s.member) * transform(s.h_lo);
      ++pairs;
    }
  if (pairs < 2) return out;
  mean_qf /= double(pairs);
  mean_qh /= double(pairs);

  Eigen::VectorXd cov = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd var_f = Eigen::VectorXd::Zero(dim), var_h = Eigen::VectorXd::Zero(dim);
  for (const auto& s : samples)
    if (paired(s)) {
      const Eigen::VectorXd df = scores.col(s.member) * transform(s.f_hi) - mean_qf;
      const Eigen::VectorXd dh = scores.col(s.member) * transform(s.h_lo) - mean_qh;
      cov += df.cwiseProduct(dh);
      var_f += df.cwiseProduct(df);
      var_h += dh.cwiseProduct(dh);
    }
  const double denom = double(pairs - 1);
  cov /= denom;
  var_f /= denom;
  var_h /= denom;

  double corr_sum = 0.0;
  int corr_terms = 0;
  for (int k = 0; k < dim; ++k) {
    const double vv = var_f[k] * var_h[k];
    if (vv > 0.0) {
      corr_sum += cov[k] / std::sqrt(vv);
      ++corr_terms;
    }
  }
  out.corr = corr_terms > 0 ? corr_sum / corr_terms : 0.0;
  if (!config.acv) return out;

  const double mean_var_h = var_h.mean();
  if (!(mean_var_h > 0.0) || !std::isfinite(mean_var_h)) {
    warn("control-variate variance vanished; falling back to plain estimator");
    out.beta_cv = 0.0;
    return out;
  }
  out.beta_cv = cov.mean() / mean_var_h;

  // g_ACV = <q f - beta q h>_paired + beta <q h>_all
  Eigen::VectorXd mean_qh_all = Eigen::VectorXd::Zero(dim);
  int lo_cnt = 0;
  for (const auto& s : samples)
    if (s.has_lo && std::isfinite(s.h_lo)) {
      mean_qh_all += scores.col(s.member) * transform(s.h_lo);
      ++lo_cnt;
    }
  mean_qh_all /= double(lo_cnt);
  out.grad_mean_reward = (grad_f - out.beta_cv * mean_qh) + out.beta_cv * mean_qh_all;
  return out;
}

Eigen::VectorXd ensemble_gradient(const std::vector<CostSample>& samples,
                                  const Eigen::MatrixXd& scores,
                                  const EstimatorConfig& config) {
  EstimatorConfig plain = config;
  plain.acv = false;
  return estimate(samples, scores, plain).grad_mean_reward;
}

Eigen::VectorXd cv_gradient_exact(const std::vector<CostSample>& samples,
                                  const Eigen::MatrixXd& scores,
                                  const Eigen::VectorXd& exact_mean_qh, double beta_cv) {
  const int dim = int(scores.rows());
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(dim);
  int m = 0;
  for (const auto& s : samples)
    if (s.has_hi && s.has_lo) {
      acc += scores.col(s.member) * (s.f_hi - beta_cv * s.h_lo);
      ++m;
    }
  if (m == 0) throw ContractError("exact CV requires paired samples");
  return acc / double(m) + beta_cv * exact_mean_qh;
}

double rcv_continuous(double corr, double t_hf, double t_lf) {
  if (corr <= 0.0) return 0.0;
  return corr * std::sqrt(t_hf / (t_lf * (1.0 - corr * corr)));
}

Budget update_budget(const BudgetPolicy& policy, double corr_prev) {
  if (policy.t_hf <= 0.0 || policy.t_lf <= 0.0 || policy.t_iter <= 0.0)
    throw ParameterError("budget times must be positive");
  double c = corr_prev;
  if (c >= 1.0) {
    warn("correlation >= 1 clamped for budget update");
    c = policy.c_max;
  }
  Budget b;
  if (c <= 0.0) {
    // No usable correlation: plain estimator, one paired lo evaluation per hi
    // member so the next iteration can re-estimate the correlation.
    b.acv_active = false;
    b.m = std::max(1, int(std::floor(policy.t_iter / (policy.t_hf + policy.t_lf))));
    b.r_cv = 1;
    return b;
  }
  const double rc = rcv_continuous(c, policy.t_hf, policy.t_lf);
  int m = int(std::floor(policy.t_iter / (policy.t_hf + policy.t_lf * rc)));
  m = std::max(m, policy.m_min);
  // Keep the iteration budget feasible even when the m_min clamp binds.
  m = std::min(m, std::max(1, int(std::floor(policy.t_iter / policy.t_hf))));
  int r = int(std::floor((policy.t_iter - m * policy.t_hf) / (m * policy.t_lf)));
  if (r < 1) {
    b.acv_active = false;
    b.m = std::max(1, int(std::floor(policy.t_iter / (policy.t_hf + policy.t_lf))));
    b.r_cv = 1;
    return b;
  }
  b.acv_active = true;
  b.m = m;
  b.r_cv = r;
  return b;
}

void track_best(const std::vector<CostSample>& samples,
                const std::vector<FeasibleDesign>& designs, Incumbent& incumbent) {
  for (const auto& s : samples) {
    if (!s.has_hi || !std::isfinite(s.f_hi)) continue;
    if (!incumbent.valid || s.f_hi < incumbent.cost) {
      incumbent.cost = s.f_hi;
      incumbent.design = designs.at(size_t(s.member));
      incumbent.valid = true;
    }
  }
}

}  // namespace gegd
