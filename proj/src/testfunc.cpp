#include "gegd/testfunc.hpp"

#include <cmath>
#include <functional>

#include "gegd/field_chain.hpp"
#include "gegd/rng.hpp"
#include "gegd/sampling.hpp"

namespace gegd {

std::vector<Field> make_wells(const DesignGrid& grid, int count, uint64_t seed) {
  std::vector<Field> wells;
  wells.reserve(count);
  const double sigma_f = default_sigma_rbf(grid.min_feature);
  for (int w = 0; w < count; ++w) {
    Eigen::VectorXd half(grid.independent_count());
    rng::fill_uniform(half, seed, rng::kWells, uint32_t(w), 0, -1.0, 1.0);
    Field full = expand_symmetric(half, grid);
    full = gaussian_filter(full, grid, sigma_f);
    Field projected;
    tanh_project(full, 8.0, projected);
    wells.push_back(((projected.array() + 1.0) * 0.5).matrix());
  }
  return wells;
}

TestFunctionSpec TestFunctionSpec::make(const DesignGrid& grid, uint64_t seed) {
  TestFunctionSpec spec;
  spec.grid = grid;
  spec.well_seed = seed;
  spec.width_coeff = 15.0 / grid.independent_count();
  spec.wells = make_wells(grid, spec.num_wells, seed);
  return spec;
}

namespace {

double well_sum(const TestFunctionSpec& spec,
                const std::function<double(const Field&)>& sq_dist) {
  double total = 0.0;
  for (const auto& well : spec.wells)
    total -= spec.depth * std::exp(-spec.width_coeff * sq_dist(well));
  return total;
}

}  // namespace

double f_test(const FeasibleDesign& design, const TestFunctionSpec& spec) {
  if (design.rows != spec.grid.rows || design.cols != spec.grid.cols)
    throw ContractError("design does not match the test-function grid");
  return well_sum(spec, [&](const Field& well) {
    double d2 = 0.0;
    for (int i = 0; i < spec.grid.pixel_count(); ++i) {
      const double diff = well[i] - double(design.cells[i]);
      d2 += diff * diff;
    }
    return d2;
  });
}

double f_test_gray(const Field& density01, const TestFunctionSpec& spec) {
  if (density01.size() != spec.grid.pixel_count())
    throw ContractError("density does not match the test-function grid");
  return well_sum(spec, [&](const Field& well) { return (well - density01).squaredNorm(); });
}

Eigen::VectorXd f_test_grad(const Field& density01, const TestFunctionSpec& spec) {
  if (density01.size() != spec.grid.pixel_count())
    throw ContractError("density does not match the test-function grid");
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(density01.size());
  for (const auto& well : spec.wells) {
    const Field diff = density01 - well;
    const double term = spec.depth * std::exp(-spec.width_coeff * diff.squaredNorm());
    grad += 2.0 * spec.width_coeff * term * diff;
  }
  return grad;
}

Eigen::VectorXd TestFunctionProblem::binary_grad(const FeasibleDesign& design) const {
  Field density(spec_.grid.pixel_count());
  for (int i = 0; i < spec_.grid.pixel_count(); ++i) density[i] = double(design.cells[i]);
  return f_test_grad(density, spec_);
}

double f_test_cv(const FeasibleDesign& design, const TestFunctionSpec& spec,
                 const TestCvSpec& cv) {
  const double base = f_test(design, spec);
  uint64_t h = rng::fnv1a64(design.cells.data(), design.cells.size());
  h = rng::derive_seed(h, uint64_t(design.rows), uint64_t(design.cols));
  return base + cv.noise_scale * rng::normal_from_hash(cv.noise_seed, h);
}

}  // namespace gegd
