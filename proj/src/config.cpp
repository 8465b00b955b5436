#include "gegd/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace gegd {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& section,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError("config section '" + section + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key))
      throw ConfigError("unknown key '" + key + "' in config section '" + section + "'");
  }
}

template <typename T>
T get_or(const json& obj, const std::string& key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for config key '" + key + "'");
  }
}

Symmetry parse_symmetry(const std::string& s) {
  if (s == "none") return Symmetry::None;
  if (s == "d1_rows") return Symmetry::D1Rows;
  if (s == "d1_cols") return Symmetry::D1Cols;
  throw ConfigError("symmetry must be one of none|d1_rows|d1_cols");
}

DesignGrid parse_grid(const json& j) {
  require_keys(j, "grid", {"rows", "cols", "symmetry", "min_feature", "pixel_pitch"});
  if (!j.contains("rows") || !j.contains("cols"))
    throw ConfigError("grid requires rows and cols");
  try {
    return DesignGrid(j.at("rows").get<int>(), j.at("cols").get<int>(),
                      parse_symmetry(get_or<std::string>(j, "symmetry", "none")),
                      get_or<int>(j, "min_feature", 1),
                      get_or<double>(j, "pixel_pitch", 1.0));
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("invalid grid: ") + e.what());
  }
}

ProblemConfig parse_problem(const json& j) {
  require_keys(j, "problem",
               {"type", "wells_seed", "num_wells", "well_depth", "cv_noise_scale",
                "cv_noise_seed", "command", "supports_lowfi"});
  ProblemConfig p;
  p.type = get_or<std::string>(j, "type", "test_function");
  if (p.type != "test_function" && p.type != "external")
    throw ConfigError("problem type must be test_function or external");
  p.wells_seed = get_or<uint64_t>(j, "wells_seed", p.wells_seed);
  p.num_wells = get_or<int>(j, "num_wells", p.num_wells);
  p.well_depth = get_or<double>(j, "well_depth", p.well_depth);
  p.cv_noise_scale = get_or<double>(j, "cv_noise_scale", p.cv_noise_scale);
  p.cv_noise_seed = get_or<uint64_t>(j, "cv_noise_seed", p.cv_noise_seed);
  p.command = get_or<std::vector<std::string>>(j, "command", {});
  p.supports_lowfi = get_or<bool>(j, "supports_lowfi", false);
  if (p.type == "external" && p.command.empty())
    throw ConfigError("external problem requires a command");
  return p;
}

GegdConfig parse_gegd(const json& j) {
  require_keys(j, "gegd",
               {"max_iterations", "sigma_r", "beta_exp", "exponentiate", "covariance",
                "kappa", "acv", "m_plain", "m_min", "t_hf", "t_lf", "t_iter", "eta0",
                "beta1", "beta2", "adam_eps", "proj_beta", "filter_sigma",
                "checkpoint_every"});
  GegdConfig g;
  g.max_iterations = get_or<int>(j, "max_iterations", g.max_iterations);
  g.sigma_r = get_or<double>(j, "sigma_r", g.sigma_r);
  g.beta_exp = get_or<double>(j, "beta_exp", g.beta_exp);
  g.exponentiate = get_or<bool>(j, "exponentiate", g.exponentiate);
  const std::string cov = get_or<std::string>(j, "covariance", "rbf");
  if (cov == "rbf")
    g.covariance = CovarianceMode::Rbf;
  else if (cov == "isotropic")
    g.covariance = CovarianceMode::Isotropic;
  else
    throw ConfigError("covariance must be rbf or isotropic");
  g.kappa = get_or<double>(j, "kappa", g.kappa);
  g.acv = get_or<bool>(j, "acv", g.acv);
  g.m_plain = get_or<int>(j, "m_plain", g.m_plain);
  g.budget.m_plain = g.m_plain;
  g.budget.m_min = get_or<int>(j, "m_min", g.budget.m_min);
  g.budget.t_hf = get_or<double>(j, "t_hf", g.budget.t_hf);
  g.budget.t_lf = get_or<double>(j, "t_lf", g.budget.t_lf);
  g.budget.t_iter = get_or<double>(j, "t_iter", g.budget.t_iter);
  g.eta0 = get_or<double>(j, "eta0", g.eta0);
  g.adam_beta1 = get_or<double>(j, "beta1", g.adam_beta1);
  g.adam_beta2 = get_or<double>(j, "beta2", g.adam_beta2);
  g.adam_eps = get_or<double>(j, "adam_eps", g.adam_eps);
  g.proj_beta = get_or<double>(j, "proj_beta", g.proj_beta);
  g.filter_sigma = get_or<double>(j, "filter_sigma", g.filter_sigma);
  g.checkpoint_every = get_or<int>(j, "checkpoint_every", g.checkpoint_every);
  return g;
}

TfConfig parse_tf(const json& j) {
  require_keys(j, "tf",
               {"beta_schedule", "evals_per_stage", "filter_sigma", "memory", "pgtol",
                "random_init", "restarts"});
  TfConfig t;
  t.beta_schedule = get_or<std::vector<double>>(j, "beta_schedule", t.beta_schedule);
  t.evals_per_stage = get_or<int>(j, "evals_per_stage", t.evals_per_stage);
  t.filter_sigma = get_or<double>(j, "filter_sigma", t.filter_sigma);
  t.memory = get_or<int>(j, "memory", t.memory);
  t.pgtol = get_or<double>(j, "pgtol", t.pgtol);
  t.random_init = get_or<bool>(j, "random_init", t.random_init);
  return t;
}

SteConfig parse_ste(const json& j) {
  require_keys(j, "af_ste",
               {"iterations", "eta0", "beta1", "beta2", "adam_eps", "filter_sigma",
                "proj_beta", "random_init", "restarts"});
  SteConfig s;
  s.iterations = get_or<int>(j, "iterations", s.iterations);
  s.eta0 = get_or<double>(j, "eta0", s.eta0);
  s.beta1 = get_or<double>(j, "beta1", s.beta1);
  s.beta2 = get_or<double>(j, "beta2", s.beta2);
  s.adam_eps = get_or<double>(j, "adam_eps", s.adam_eps);
  s.filter_sigma = get_or<double>(j, "filter_sigma", s.filter_sigma);
  s.proj_beta = get_or<double>(j, "proj_beta", s.proj_beta);
  s.random_init = get_or<bool>(j, "random_init", s.random_init);
  return s;
}

AfPsoConfig parse_pso(const json& j) {
  require_keys(j, "af_pso",
               {"iterations", "swarm", "cognitive", "social", "inertia0", "inertia_decay",
                "stall_window", "craziness_prob", "craziness_fraction", "velocity_max",
                "filter_sigma", "proj_beta"});
  AfPsoConfig p;
  p.pso.iterations = get_or<int>(j, "iterations", p.pso.iterations);
  p.pso.swarm_size = get_or<int>(j, "swarm", p.pso.swarm_size);
  p.pso.cognitive = get_or<double>(j, "cognitive", p.pso.cognitive);
  p.pso.social = get_or<double>(j, "social", p.pso.social);
  p.pso.inertia0 = get_or<double>(j, "inertia0", p.pso.inertia0);
  p.pso.inertia_decay = get_or<double>(j, "inertia_decay", p.pso.inertia_decay);
  p.pso.stall_window = get_or<int>(j, "stall_window", p.pso.stall_window);
  p.pso.craziness_prob = get_or<double>(j, "craziness_prob", p.pso.craziness_prob);
  p.pso.craziness_fraction =
      get_or<double>(j, "craziness_fraction", p.pso.craziness_fraction);
  p.pso.velocity_max = get_or<double>(j, "velocity_max", p.pso.velocity_max);
  p.filter_sigma = get_or<double>(j, "filter_sigma", p.filter_sigma);
  p.proj_beta = get_or<double>(j, "proj_beta", p.proj_beta);
  return p;
}

BenchConfig parse_bench(const json& j) {
  require_keys(j, "bench",
               {"algorithms", "repetitions", "iterations", "budget_per_iteration",
                "grad_cost_factor", "restarts", "budget_tolerance", "sigma_r", "beta_exp",
                "kappa", "t_hf_over_t_lf", "m_plain", "m_min", "eta0", "ste_eta0"});
  BenchConfig b;
  b.algorithms = get_or<std::vector<std::string>>(j, "algorithms", b.algorithms);
  b.repetitions = get_or<int>(j, "repetitions", b.repetitions);
  b.iterations = get_or<int>(j, "iterations", b.iterations);
  b.budget_per_iteration = get_or<double>(j, "budget_per_iteration", b.budget_per_iteration);
  b.grad_cost_factor = get_or<double>(j, "grad_cost_factor", b.grad_cost_factor);
  b.restarts = get_or<int>(j, "restarts", b.restarts);
  b.budget_tolerance = get_or<double>(j, "budget_tolerance", b.budget_tolerance);
  b.sigma_r = get_or<double>(j, "sigma_r", b.sigma_r);
  b.beta_exp = get_or<double>(j, "beta_exp", b.beta_exp);
  b.kappa = get_or<double>(j, "kappa", b.kappa);
  b.t_hf_over_t_lf = get_or<double>(j, "t_hf_over_t_lf", b.t_hf_over_t_lf);
  b.m_plain = get_or<int>(j, "m_plain", b.m_plain);
  b.m_min = get_or<int>(j, "m_min", b.m_min);
  b.eta0 = get_or<double>(j, "eta0", b.eta0);
  b.ste_eta0 = get_or<double>(j, "ste_eta0", b.ste_eta0);
  return b;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_keys(j, "(root)",
               {"version", "seed", "workers", "output_dir", "grid", "problem", "algorithm",
                "gegd", "tf", "af_ste", "af_pso", "bench", "covariance_cache"});
  if (!j.contains("version")) throw ConfigError("config requires a version field");
  RunConfig cfg;
  cfg.version = j.at("version").get<int>();
  if (cfg.version != 1) throw ConfigError("unsupported config version");
  cfg.seed = get_or<uint64_t>(j, "seed", cfg.seed);
  cfg.workers = get_or<int>(j, "workers", cfg.workers);
  if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
  cfg.output_dir = get_or<std::string>(j, "output_dir", cfg.output_dir);
  if (!j.contains("grid")) throw ConfigError("config requires a grid section");
  cfg.grid = parse_grid(j.at("grid"));
  if (j.contains("problem")) cfg.problem = parse_problem(j.at("problem"));
  cfg.algorithm = get_or<std::string>(j, "algorithm", cfg.algorithm);
  if (cfg.algorithm != "gegd" && cfg.algorithm != "tf" && cfg.algorithm != "af_ste" &&
      cfg.algorithm != "af_pso")
    throw ConfigError("algorithm must be one of gegd|tf|af_ste|af_pso");
  if (j.contains("gegd")) cfg.gegd = parse_gegd(j.at("gegd"));
  if (j.contains("tf")) cfg.tf = parse_tf(j.at("tf"));
  if (j.contains("af_ste")) cfg.af_ste = parse_ste(j.at("af_ste"));
  if (j.contains("af_pso")) cfg.af_pso = parse_pso(j.at("af_pso"));
  if (j.contains("bench")) cfg.bench = parse_bench(j.at("bench"));
  cfg.covariance_cache = get_or<std::string>(j, "covariance_cache", "");
  cfg.gegd.seed = cfg.seed;
  cfg.tf.seed = cfg.seed;
  cfg.af_ste.seed = cfg.seed;
  cfg.af_pso.pso.seed = cfg.seed;
  if (cfg.bench) {
    cfg.bench->master_seed = cfg.seed;
    cfg.bench->workers = cfg.workers;
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return parse_config_text(text);
}

}  // namespace gegd
