#pragma once

#include <string>
#include <vector>

#include "gegd/fdg.hpp"
#include "gegd/optimizer.hpp"

namespace gegd {

// Designs serialize to PGM (maxval 1) and to CSV of 0/1 in row-major order.
void write_design_pgm(const FeasibleDesign& design, const std::string& path);
FeasibleDesign read_design_pgm(const std::string& path);
void write_design_csv(const FeasibleDesign& design, const std::string& path);
FeasibleDesign read_design_csv(const std::string& path);

// Reads by extension (.pgm / .csv).
FeasibleDesign read_design(const std::string& path);

// Shortest round-trippable decimal representation; identical bytes for
// identical doubles, so traces are reproducible byte for byte.
std::string format_double(double v);

// Trace CSV: iteration,ensemble_cost,best_cost,mu_L_norm,eta,M,r_cv,corr with
// an optional leading algorithm tag column.
std::string trace_csv(const OptimizationTrace& trace, const std::string& algorithm = "");
void write_trace_csv(const OptimizationTrace& trace, const std::string& path,
                     const std::string& algorithm = "");

void write_text_file(const std::string& path, const std::string& content);

}  // namespace gegd
