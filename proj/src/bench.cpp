#include "gegd/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "gegd/io.hpp"
#include "gegd/rng.hpp"

namespace gegd {

double median(std::vector<double> values) {
  if (values.empty()) throw ParameterError("median of empty set");
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

namespace {

bool is_gegd_variant(const std::string& algo) {
  return algo == "gegd" || algo == "gegd_iso_nocv" || algo == "gegd_rbf_nocv" ||
         algo == "gegd_rbf_cv";
}

double nominal_budget(const BenchConfig& c, const std::string& algo) {
  if (is_gegd_variant(algo) || algo == "af_pso")
    return c.budget_per_iteration * c.iterations;
  if (algo == "tf" || algo == "af_ste")
    return c.restarts * c.iterations * c.grad_cost_factor;
  throw ConfigError("unknown benchmark algorithm: " + algo);
}

double converged_cost(const OptimizationTrace& trace) {
  if (trace.records.empty()) return 0.0;
  const size_t n = trace.records.size();
  const size_t tail = std::max<size_t>(1, n / 10);
  double sum = 0.0;
  for (size_t i = n - tail; i < n; ++i) sum += trace.records[i].ensemble_cost;
  return sum / double(tail);
}

}  // namespace

GegdConfig bench_gegd_config(const BenchConfig& config, const std::string& variant,
                             uint64_t seed) {
  GegdConfig g;
  g.max_iterations = config.iterations;
  g.seed = seed;
  g.sigma_r = config.sigma_r;
  g.beta_exp = config.beta_exp;
  g.kappa = config.kappa;
  g.m_plain = config.m_plain;
  g.eta0 = config.eta0;
  g.covariance = variant == "gegd_iso_nocv" ? CovarianceMode::Isotropic : CovarianceMode::Rbf;
  g.acv = (variant == "gegd" || variant == "gegd_rbf_cv");
  g.budget.t_hf = 1.0;
  g.budget.t_lf = 1.0 / config.t_hf_over_t_lf;
  g.budget.t_iter = config.budget_per_iteration;
  g.budget.m_min = config.m_min;
  g.budget.m_plain = config.m_plain;
  return g;
}

void validate_budget_parity(const BenchConfig& config) {
  const double ref = config.budget_per_iteration * config.iterations;
  for (const auto& algo : config.algorithms) {
    const double b = nominal_budget(config, algo);
    const double mismatch = std::abs(b - ref) / ref;
    if (mismatch > config.budget_tolerance + 1e-9) {
      std::ostringstream os;
      os << "budget mismatch for " << algo << ": " << b << " vs reference " << ref << " ("
         << mismatch * 100.0 << "%)";
      throw ConfigError(os.str());
    }
  }
}

BenchSummary run_benchmark(const BenchConfig& config, const TestFunctionSpec& spec,
                           const TestCvSpec& cv) {
  validate_budget_parity(config);
  const DesignGrid& grid = spec.grid;
  TestFunctionProblem problem(spec, cv);
  auto dispatcher = make_inprocess_dispatcher(problem, config.workers);

  // Covariance models shared across repetitions.
  CovarianceModel cov_rbf = CovarianceModel::rbf(grid, config.kappa);
  CovarianceModel cov_iso = CovarianceModel::isotropic(grid.rows, grid.cols);

  BenchSummary summary;
  for (const auto& algo : config.algorithms) {
    for (int rep = 0; rep < config.repetitions; ++rep) {
      const uint64_t seed =
          rng::derive_seed(config.master_seed, rng::fnv1a64(algo.data(), algo.size()),
                           uint64_t(rep));
      BenchRun run;
      run.algorithm = algo;
      run.rep = rep;
      const auto t0 = std::chrono::steady_clock::now();

      if (is_gegd_variant(algo)) {
        GegdConfig g = bench_gegd_config(config, algo, seed);
        const CovarianceModel& cov =
            g.covariance == CovarianceMode::Rbf ? cov_rbf : cov_iso;
        run.trace = run_gegd(g, grid, problem, *dispatcher, cov);
        run.best_cost = run.trace.best.cost;
        run.hf_equiv_cost = run.trace.hf_equiv_cost;
      } else if (algo == "af_pso") {
        AfPsoConfig p;
        p.pso.swarm_size = int(std::lround(config.budget_per_iteration));
        p.pso.iterations = config.iterations;
        p.pso.seed = seed;
        run.trace = run_af_pso(p, grid, *dispatcher);
        run.best_cost = run.trace.best.cost;
        run.hf_equiv_cost = run.trace.hf_equiv_cost;
      } else if (algo == "tf") {
        // Best of `restarts` independent runs; the recorded trace is the run
        // achieving the best binary cost.
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < config.restarts; ++r) {
          TfConfig t;
          t.seed = rng::derive_seed(seed, uint64_t(r));
          t.evals_per_stage =
              std::max(1, config.iterations / int(t.beta_schedule.size()));
          TfResult tr = run_tf(t, grid, problem);
          run.hf_equiv_cost += tr.trace.hf_equiv_cost;
          if (tr.binary_cost < best) {
            best = tr.binary_cost;
            run.trace = tr.trace;
          }
        }
        run.best_cost = best;
      } else if (algo == "af_ste") {
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < config.restarts; ++r) {
          SteConfig s;
          s.seed = rng::derive_seed(seed, uint64_t(r));
          s.iterations = config.iterations;
          s.eta0 = config.ste_eta0;
          OptimizationTrace tr = run_af_ste(s, grid, problem);
          run.hf_equiv_cost += tr.hf_equiv_cost;
          if (tr.best.valid && tr.best.cost < best) {
            best = tr.best.cost;
            run.trace = std::move(tr);
          }
        }
        run.best_cost = best;
      }

      run.converged_ensemble_cost = converged_cost(run.trace);
      run.wall_time_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      summary.runs.push_back(std::move(run));
    }
  }

  for (const auto& algo : config.algorithms) {
    std::vector<double> best, conv;
    for (const auto& r : summary.runs)
      if (r.algorithm == algo) {
        best.push_back(r.best_cost);
        conv.push_back(r.converged_ensemble_cost);
      }
    summary.median_best[algo] = median(best);
    summary.median_converged[algo] = median(conv);
  }
  return summary;
}

std::string BenchSummary::summary_csv() const {
  std::ostringstream os;
  os << "algorithm,rep,best_cost,wall_time,hf_equiv_cost\n";
  for (const auto& r : runs)
    os << r.algorithm << ',' << r.rep << ',' << format_double(r.best_cost) << ','
       << format_double(r.wall_time_s) << ',' << format_double(r.hf_equiv_cost) << '\n';
  return os.str();
}

}  // namespace gegd
