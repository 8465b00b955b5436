#include "gegd/optimizer.hpp"

#include <cmath>
#include <filesystem>

#include "gegd/io.hpp"

namespace gegd {

void adam_update(AdamState& state, Eigen::VectorXd& x, const Eigen::VectorXd& grad,
                 double eta) {
  if (grad.size() != x.size() || state.m.size() != x.size())
    throw DimensionError("adam_update dimension mismatch");
  if (!grad.allFinite())
    throw NumericalError("non-finite gradient in ADAM update");
  ++state.t;
  state.m = state.beta1 * state.m + (1.0 - state.beta1) * grad;
  state.v = state.beta2 * state.v + (1.0 - state.beta2) * grad.cwiseProduct(grad);
  const double bc1 = 1.0 - std::pow(state.beta1, double(state.t));
  const double bc2 = 1.0 - std::pow(state.beta2, double(state.t));
  const Eigen::ArrayXd denom = (state.v.array() / bc2).sqrt() + state.eps;
  x.array() -= (eta / bc1) * state.m.array() / denom;
}

double step_size(int iter_index, double mu_norm_prev, double mu_norm_ref, double eta0) {
  if (iter_index < 1) throw ParameterError("iteration index is 1-based");
  if (iter_index <= 2) return eta0;
  if (mu_norm_ref <= 0.0) {
    warn("reference latent norm is zero; keeping base step size");
    return eta0;
  }
  return eta0 * std::cbrt(mu_norm_prev / mu_norm_ref);
}

OptimizationTrace run_gegd(const GegdConfig& config, const DesignGrid& grid,
                           const Problem& problem, CostDispatcher& dispatcher,
                           const CovarianceModel& cov) {
  if (config.max_iterations < 1) throw ParameterError("max_iterations must be >= 1");
  if (config.sigma_r <= 0.0) throw ParameterError("sigma_r must be positive");
  if (cov.rows() != grid.rows || cov.cols() != grid.cols)
    throw DimensionError("covariance model does not match grid");
  if (config.acv && !problem.has_lowfi())
    throw ConfigError("ACV requires a low-fidelity cost");

  const int n_ind = grid.independent_count();
  ChainParams chain;
  chain.proj_beta = config.proj_beta;
  chain.filter_sigma =
      config.filter_sigma > 0.0 ? config.filter_sigma : default_sigma_rbf(grid.min_feature);

  const Brush brush = Brush::disk(grid.min_feature);
  Eigen::VectorXd zeta = Eigen::VectorXd::Zero(n_ind);
  AdamState adam;
  adam.init(n_ind);
  adam.beta1 = config.adam_beta1;
  adam.beta2 = config.adam_beta2;
  adam.eps = config.adam_eps;

  EstimatorConfig est;
  est.exponentiate = config.exponentiate;
  est.beta_exp = config.beta_exp;
  est.acv = config.acv;

  OptimizationTrace trace;
  trace.records.reserve(config.max_iterations);
  ChainWorkspace ws;
  GenerateOptions gen_opts;
  gen_opts.check_symmetric_input = false;  // member rewards carry asymmetric noise

  double corr_prev = 0.0;
  double mu_norm_prev = 0.0, mu_norm_ref = 0.0;

  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    const Field& mean_reward = forward_chain(zeta, grid, chain, ws);
    const double mu_norm = ws.latent_full.norm();
    if (iter == 2) mu_norm_ref = mu_norm;

    // Per-iteration sample budget.
    Budget budget;
    if (!config.acv) {
      budget.m = config.m_plain;
      budget.r_cv = 0;
      budget.acv_active = false;
    } else {
      budget = update_budget(config.budget, iter == 1 ? 0.0 : corr_prev);
    }
    const int n_members = budget.r_cv > 0 ? budget.m * budget.r_cv : budget.m;

    SamplingDistribution dist{&cov, mean_reward, config.sigma_r};
    PerturbationEnsemble ens = draw_ensemble(dist, n_members, config.seed, uint32_t(iter));

    std::vector<FeasibleDesign> designs(n_members);
    for (int m = 0; m < n_members; ++m)
      designs[m] = generate(Field(mean_reward + ens.deltas.col(m)), grid, brush, gen_opts);

    // Hi-fidelity costs for the first m members; lo-fidelity for every member
    // when a low-fidelity model is in play.
    std::vector<CostRequest> requests;
    const bool want_lo = config.acv;
    for (int m = 0; m < budget.m; ++m)
      requests.push_back({&designs[m], Fidelity::High});
    if (want_lo)
      for (int m = 0; m < n_members; ++m)
        requests.push_back({&designs[m], Fidelity::Low});
    const std::vector<double> costs = dispatcher.evaluate(requests);

    std::vector<CostSample> samples(n_members);
    int dropped = 0;
    for (int m = 0; m < n_members; ++m) samples[m].member = m;
    for (int m = 0; m < budget.m; ++m) {
      samples[m].f_hi = costs[m];
      samples[m].has_hi = std::isfinite(costs[m]);
      if (!samples[m].has_hi) ++dropped;
    }
    if (want_lo)
      for (int m = 0; m < n_members; ++m) {
        const double v = costs[size_t(budget.m) + m];
        samples[m].h_lo = v;
        samples[m].has_lo = std::isfinite(v);
      }
    if (dropped > 0) warn(std::to_string(dropped) + " member(s) dropped after retry");

    Eigen::MatrixXd scores = cov.score_from_whitened(ens.z, config.sigma_r);
    est.acv = config.acv && budget.acv_active;
    EstimatorOutput out = estimate(samples, scores, est);
    corr_prev = out.corr;

    track_best(samples, designs, trace.best);
    trace.hf_equiv_cost += out.m_hi * 1.0 +
                           (want_lo ? out.n_lo * (config.budget.t_lf / config.budget.t_hf) : 0.0);

    const double eta = step_size(iter, mu_norm_prev, mu_norm_ref, config.eta0);
    Eigen::VectorXd grad_zeta = backward_chain(out.grad_mean_reward, grid, chain, ws);
    adam_update(adam, zeta, grad_zeta, eta);
    mu_norm_prev = mu_norm;

    IterationRecord rec;
    rec.iteration = iter;
    rec.ensemble_cost = out.ensemble_cost;
    rec.best_cost = trace.best.cost;
    rec.mu_norm = mu_norm;
    rec.eta = eta;
    rec.m = out.m_hi;
    rec.r_cv = budget.acv_active ? budget.r_cv : 0;
    rec.corr = out.corr;
    trace.records.push_back(rec);

    if (config.checkpoint_every > 0 && iter % config.checkpoint_every == 0 &&
        trace.best.valid && !config.checkpoint_dir.empty()) {
      write_design_pgm(trace.best.design, config.checkpoint_dir + "/best_design_iter" +
                                              std::to_string(iter) + ".pgm");
    }
  }
  return trace;
}

}  // namespace gegd
