#include "gegd/runner.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "gegd/external.hpp"
#include "gegd/io.hpp"
#include "gegd/rng.hpp"

namespace gegd {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Backend {
  std::unique_ptr<Problem> problem;
  std::unique_ptr<CostDispatcher> dispatcher;
};

Backend make_backend(const RunConfig& cfg) {
  Backend b;
  if (cfg.problem.type == "test_function") {
    TestFunctionSpec spec;
    spec.grid = cfg.grid;
    spec.num_wells = cfg.problem.num_wells;
    spec.depth = cfg.problem.well_depth;
    spec.well_seed = cfg.problem.wells_seed;
    spec.width_coeff = 15.0 / cfg.grid.independent_count();
    spec.wells = make_wells(cfg.grid, spec.num_wells, spec.well_seed);
    TestCvSpec cv;
    cv.noise_scale = cfg.problem.cv_noise_scale;
    cv.noise_seed = cfg.problem.cv_noise_seed;
    b.problem = std::make_unique<TestFunctionProblem>(std::move(spec), cv);
    b.dispatcher = make_inprocess_dispatcher(*b.problem, cfg.workers);
  } else {
    b.dispatcher = make_external_dispatcher(cfg.problem.command);
    b.problem = std::make_unique<ExternalProblem>(*b.dispatcher, cfg.problem.supports_lowfi);
  }
  return b;
}

CovarianceModel make_covariance(const RunConfig& cfg) {
  const double sigma_rbf = default_sigma_rbf(cfg.grid.min_feature);
  if (cfg.gegd.covariance == CovarianceMode::Isotropic)
    return CovarianceModel::isotropic(cfg.grid.rows, cfg.grid.cols);
  if (!cfg.covariance_cache.empty() && fs::exists(cfg.covariance_cache)) {
    CovarianceModel m = CovarianceModel::load_cache(cfg.covariance_cache);
    if (m.matches(cfg.grid.rows, cfg.grid.cols, sigma_rbf, cfg.gegd.kappa)) return m;
    warn("covariance cache key mismatch; rebuilding");
  }
  CovarianceModel m = CovarianceModel::rbf(cfg.grid, cfg.gegd.kappa);
  if (!cfg.covariance_cache.empty()) m.save_cache(cfg.covariance_cache);
  return m;
}

void write_summary(const std::string& dir, const json& j) {
  std::ofstream f(dir + "/summary.json", std::ios::binary);
  f << j.dump(2) << "\n";
}

}  // namespace

OptimizationTrace execute_run(const RunConfig& cfg) {
  fs::create_directories(cfg.output_dir);
  Backend backend = make_backend(cfg);

  OptimizationTrace trace;
  std::string algo = cfg.algorithm;
  json summary;
  summary["algorithm"] = algo;
  summary["seed"] = cfg.seed;

  if (algo == "gegd") {
    GegdConfig g = cfg.gegd;
    g.checkpoint_dir = cfg.output_dir;
    CovarianceModel cov = make_covariance(cfg);
    trace = run_gegd(g, cfg.grid, *backend.problem, *backend.dispatcher, cov);
  } else if (algo == "tf") {
    TfResult tr = run_tf(cfg.tf, cfg.grid, *backend.problem);
    summary["gray_cost"] = tr.gray_cost;
    summary["binary_cost"] = tr.binary_cost;
    summary["feasible"] = tr.feasible;
    trace = std::move(tr.trace);
  } else if (algo == "af_ste") {
    trace = run_af_ste(cfg.af_ste, cfg.grid, *backend.problem);
  } else if (algo == "af_pso") {
    trace = run_af_pso(cfg.af_pso, cfg.grid, *backend.dispatcher);
  } else {
    throw ConfigError("unknown algorithm: " + algo);
  }

  write_trace_csv(trace, cfg.output_dir + "/trace.csv", algo);
  if (trace.best.valid) {
    write_design_pgm(trace.best.design, cfg.output_dir + "/best_design.pgm");
    write_design_csv(trace.best.design, cfg.output_dir + "/best_design.csv");
    summary["best_cost"] = trace.best.cost;
    summary["best_feasible"] =
        check_feasibility(trace.best.design, Brush::disk(cfg.grid.min_feature));
  }
  summary["iterations"] = trace.records.size();
  summary["hf_equiv_cost"] = trace.hf_equiv_cost;
  write_summary(cfg.output_dir, summary);
  return trace;
}

BenchSummary execute_bench(const RunConfig& cfg) {
  if (!cfg.bench) throw ConfigError("config has no bench section");
  if (cfg.problem.type != "test_function")
    throw ConfigError("the benchmark harness runs on the test function");
  fs::create_directories(cfg.output_dir);
  fs::create_directories(cfg.output_dir + "/traces");

  TestFunctionSpec spec;
  spec.grid = cfg.grid;
  spec.num_wells = cfg.problem.num_wells;
  spec.depth = cfg.problem.well_depth;
  spec.well_seed = cfg.problem.wells_seed;
  spec.width_coeff = 15.0 / cfg.grid.independent_count();
  spec.wells = make_wells(cfg.grid, spec.num_wells, spec.well_seed);
  TestCvSpec cv;
  cv.noise_scale = cfg.problem.cv_noise_scale;
  cv.noise_seed = cfg.problem.cv_noise_seed;

  BenchSummary summary = run_benchmark(*cfg.bench, spec, cv);
  write_text_file(cfg.output_dir + "/summary.csv", summary.summary_csv());
  for (const auto& run : summary.runs)
    write_trace_csv(run.trace,
                    cfg.output_dir + "/traces/" + run.algorithm + "_rep" +
                        std::to_string(run.rep) + ".csv",
                    run.algorithm);

  json j;
  for (const auto& [algo, m] : summary.median_best) j["median_best"][algo] = m;
  for (const auto& [algo, m] : summary.median_converged) j["median_converged"][algo] = m;
  write_summary(cfg.output_dir, j);
  return summary;
}

}  // namespace gegd
