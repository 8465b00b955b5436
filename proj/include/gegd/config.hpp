#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gegd/baselines.hpp"
#include "gegd/bench.hpp"
#include "gegd/optimizer.hpp"

namespace gegd {

// Versioned run configuration (JSON document). The schema is validated before
// any compute; unknown keys are rejected.

struct ProblemConfig {
  std::string type = "test_function";  // or "external"
  // test_function
  uint64_t wells_seed = 7001;
  int num_wells = 10;
  double well_depth = 3.0;
  double cv_noise_scale = 0.001;
  uint64_t cv_noise_seed = 99;
  // external
  std::vector<std::string> command;
  bool supports_lowfi = false;
};

struct RunConfig {
  int version = 1;
  uint64_t seed = 1;
  int workers = 1;
  std::string output_dir = "out";
  DesignGrid grid;
  ProblemConfig problem;
  std::string algorithm = "gegd";  // gegd | tf | af_ste | af_pso
  GegdConfig gegd;
  TfConfig tf;
  SteConfig af_ste;
  AfPsoConfig af_pso;
  std::string covariance_cache;  // optional path for the factored covariance
  std::optional<BenchConfig> bench;
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

}  // namespace gegd
