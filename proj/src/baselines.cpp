#include "gegd/baselines.hpp"

#include <cmath>

#include "gegd/field_chain.hpp"
#include "gegd/lbfgsb.hpp"
#include "gegd/rng.hpp"

namespace gegd {

namespace {

// Projected densities live in [-1, 1]; costs are defined on [0, 1].
Field to_unit_density(const Field& projected) {
  return ((projected.array() + 1.0) * 0.5).matrix();
}

FeasibleDesign threshold_design(const Field& projected, const DesignGrid& grid) {
  FeasibleDesign d;
  d.rows = grid.rows;
  d.cols = grid.cols;
  d.cells.resize(grid.pixel_count());
  for (int i = 0; i < grid.pixel_count(); ++i) d.cells[i] = projected[i] > 0.0 ? 1 : 0;
  return d;
}

}  // namespace

TfResult run_tf(const TfConfig& config, const DesignGrid& grid, const Problem& problem) {
  if (!problem.has_gray())
    throw ContractError("TF requires a problem with grayscale cost and gradient");
  if (config.beta_schedule.empty()) throw ParameterError("empty projection schedule");
  for (size_t i = 1; i < config.beta_schedule.size(); ++i)
    if (config.beta_schedule[i] <= config.beta_schedule[i - 1])
      throw ParameterError("projection schedule must be strictly increasing");

  const int n = grid.independent_count();
  ChainParams chain;
  chain.filter_sigma =
      config.filter_sigma > 0.0 ? config.filter_sigma : double(grid.min_feature);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  if (config.random_init)
    rng::fill_uniform(x, config.seed, rng::kGeneric, 0, 0, -1.0, 1.0);
  const Eigen::VectorXd lo = Eigen::VectorXd::Constant(n, -1.0);
  const Eigen::VectorXd hi = Eigen::VectorXd::Constant(n, 1.0);

  TfResult res;
  double best_cost = std::numeric_limits<double>::infinity();
  int eval_counter = 0;
  ChainWorkspace ws;

  for (double beta : config.beta_schedule) {
    chain.proj_beta = beta;
    auto objective = [&](const Eigen::VectorXd& latent, Eigen::VectorXd& grad) {
      const Field& projected = forward_chain_latent(latent, grid, chain, ws);
      const Field density = to_unit_density(projected);
      const double f = problem.gray_cost(density);
      // d density / d projected = 1/2.
      Field g_proj = 0.5 * problem.gray_grad(density);
      grad = backward_chain_latent(g_proj, grid, chain, ws);
      return f;
    };
    auto per_eval = [&](const Eigen::VectorXd&, double f) {
      ++eval_counter;
      best_cost = std::min(best_cost, f);
      IterationRecord rec;
      rec.iteration = eval_counter;
      rec.ensemble_cost = f;
      rec.best_cost = best_cost;
      rec.mu_norm = 0.0;  // filled below from the accepted iterate
      rec.eta = beta;
      rec.m = 1;
      res.trace.records.push_back(rec);
    };

    LbfgsbOptions opts;
    opts.memory = config.memory;
    opts.max_evals = config.evals_per_stage;
    opts.pgtol = config.pgtol;
    LbfgsbResult stage = lbfgsb_minimize(objective, x, lo, hi, opts, per_eval);
    x = stage.x;
  }

  // Latent norms per record are not tracked inside the line search; report the
  // final latent norm on the last record for reference.
  if (!res.trace.records.empty())
    res.trace.records.back().mu_norm = expand_symmetric(x, grid).norm();

  chain.proj_beta = config.beta_schedule.back();
  const Field& projected = forward_chain_latent(x, grid, chain, ws);
  res.gray_cost = problem.gray_cost(to_unit_density(projected));
  res.final_design = threshold_design(projected, grid);
  res.binary_cost = problem.cost(res.final_design, Fidelity::High);
  res.feasible = check_feasibility(res.final_design, Brush::disk(grid.min_feature));
  res.trace.best.cost = res.binary_cost;
  res.trace.best.design = res.final_design;
  res.trace.best.valid = true;
  res.trace.hf_equiv_cost = eval_counter * 1.5;
  return res;
}

OptimizationTrace run_af_ste(const SteConfig& config, const DesignGrid& grid,
                             const Problem& problem) {
  if (!problem.has_binary_grad())
    throw ContractError("AF-STE requires a problem with a binary-design gradient");
  if (config.iterations < 1) throw ParameterError("iterations must be >= 1");

  const int n = grid.independent_count();
  ChainParams chain;
  chain.proj_beta = config.proj_beta;
  chain.filter_sigma =
      config.filter_sigma > 0.0 ? config.filter_sigma : default_sigma_rbf(grid.min_feature);
  const Brush brush = Brush::disk(grid.min_feature);

  // Latents are bounded through the same dummy-variable map as GEGD.
  Eigen::VectorXd zeta = Eigen::VectorXd::Zero(n);
  if (config.random_init) {
    Eigen::VectorXd lat(n);
    rng::fill_uniform(lat, config.seed, rng::kGeneric, 0, 1, -0.999, 0.999);
    for (int i = 0; i < n; ++i) zeta[i] = std::log((1.0 + lat[i]) / (1.0 - lat[i]));
  }

  AdamState adam;
  adam.init(n);
  adam.beta1 = config.beta1;
  adam.beta2 = config.beta2;
  adam.eps = config.adam_eps;

  OptimizationTrace trace;
  ChainWorkspace ws;
  for (int iter = 1; iter <= config.iterations; ++iter) {
    const Field& reward = forward_chain(zeta, grid, chain, ws);
    const FeasibleDesign design = generate(reward, grid, brush);
    const double f = problem.cost(design, Fidelity::High);
    if (!trace.best.valid || f < trace.best.cost) {
      trace.best.cost = f;
      trace.best.design = design;
      trace.best.valid = true;
    }
    // Straight-through: gradient wrt rho_F passes unchanged to rho_R.
    const Field grad_reward = problem.binary_grad(design);
    const Eigen::VectorXd grad_zeta = backward_chain(grad_reward, grid, chain, ws);
    adam_update(adam, zeta, grad_zeta, config.eta0);

    IterationRecord rec;
    rec.iteration = iter;
    rec.ensemble_cost = f;
    rec.best_cost = trace.best.cost;
    rec.mu_norm = ws.latent_full.norm();
    rec.eta = config.eta0;
    rec.m = 1;
    trace.records.push_back(rec);
  }
  trace.hf_equiv_cost = config.iterations * 1.5;
  return trace;
}

OptimizationTrace run_af_pso(const AfPsoConfig& config, const DesignGrid& grid,
                             CostDispatcher& dispatcher) {
  const int n = grid.independent_count();
  ChainParams chain;
  chain.proj_beta = config.proj_beta;
  chain.filter_sigma =
      config.filter_sigma > 0.0 ? config.filter_sigma : default_sigma_rbf(grid.min_feature);
  const Brush brush = Brush::disk(grid.min_feature);

  OptimizationTrace trace;
  int evals = 0;
  Incumbent best;
  double best_latent_norm = 0.0;
  std::vector<double> norm_after_batch;

  auto objective = [&](const Eigen::MatrixXd& positions) {
    const int count = int(positions.cols());
    std::vector<FeasibleDesign> designs(count);
    ChainWorkspace ws;
    for (int p = 0; p < count; ++p) {
      const Field& reward = forward_chain_latent(positions.col(p), grid, chain, ws);
      designs[p] = generate(reward, grid, brush);
    }
    std::vector<CostRequest> reqs(count);
    for (int p = 0; p < count; ++p) reqs[p] = {&designs[p], Fidelity::High};
    std::vector<double> costs = dispatcher.evaluate(reqs);
    for (int p = 0; p < count; ++p) {
      ++evals;
      if (std::isfinite(costs[p]) && (!best.valid || costs[p] < best.cost)) {
        best.cost = costs[p];
        best.design = designs[p];
        best.valid = true;
        best_latent_norm = expand_symmetric(positions.col(p), grid).norm();
      }
    }
    norm_after_batch.push_back(best_latent_norm);
    return costs;
  };

  PsoResult pr = pso_minimize(objective, n, config.pso);
  for (const auto& it : pr.history) {
    IterationRecord rec;
    rec.iteration = it.iteration;
    rec.ensemble_cost = it.mean_cost;
    rec.best_cost = it.best_cost;
    // Batch 0 is the initial swarm; batch i corresponds to iteration i.
    rec.mu_norm = size_t(it.iteration) < norm_after_batch.size()
                      ? norm_after_batch[size_t(it.iteration)]
                      : best_latent_norm;
    rec.eta = it.inertia;
    rec.m = config.pso.swarm_size;
    trace.records.push_back(rec);
  }
  trace.best = best;
  trace.hf_equiv_cost = evals;
  return trace;
}

}  // namespace gegd
