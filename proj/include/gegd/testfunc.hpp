#pragma once

#include <cstdint>
#include <vector>

#include "gegd/problem.hpp"
#include "gegd/grid.hpp"

namespace gegd {

// Multi-well benchmark cost: negative sum of Gaussians centered on randomly
// generated smooth grayscale designs,
//   f(design) = -sum_i depth * exp(-width_coeff * |well_i - design|^2),
// with width_coeff = 15 / N (N = independent parameter count) and the norm
// taken over the full grid.
struct TestFunctionSpec {
  DesignGrid grid;
  int num_wells = 10;
  double depth = 3.0;
  double width_coeff = 0.0;
  uint64_t well_seed = 0;
  std::vector<Field> wells;  // grayscale fields in (0, 1), symmetric

  static TestFunctionSpec make(const DesignGrid& grid, uint64_t seed);
};

// Uniform random half-fields in [-1, 1], expanded, filtered with
// sqrt(2) L_min / 4, projected at beta 8, then rescaled to [0, 1].
std::vector<Field> make_wells(const DesignGrid& grid, int count, uint64_t seed);

double f_test(const FeasibleDesign& design, const TestFunctionSpec& spec);
Eigen::VectorXd f_test_grad(const Field& density01, const TestFunctionSpec& spec);
double f_test_gray(const Field& density01, const TestFunctionSpec& spec);

// Low-fidelity companion: f_test plus a small Gaussian noise that is a pure
// function of the design bits (identical designs always see identical noise).
struct TestCvSpec {
  double noise_scale = 0.001;
  uint64_t noise_seed = 0;
};

double f_test_cv(const FeasibleDesign& design, const TestFunctionSpec& spec,
                 const TestCvSpec& cv);

// Problem wrapper exposing every capability the optimizers need.
class TestFunctionProblem final : public Problem {
 public:
  TestFunctionProblem(TestFunctionSpec spec, TestCvSpec cv)
      : spec_(std::move(spec)), cv_(cv) {}

  double cost(const FeasibleDesign& design, Fidelity fidelity) const override {
    return fidelity == Fidelity::High ? f_test(design, spec_) : f_test_cv(design, spec_, cv_);
  }
  bool has_lowfi() const override { return true; }
  bool has_gray() const override { return true; }
  double gray_cost(const Field& density01) const override {
    return f_test_gray(density01, spec_);
  }
  Eigen::VectorXd gray_grad(const Field& density01) const override {
    return f_test_grad(density01, spec_);
  }
  bool has_binary_grad() const override { return true; }
  Eigen::VectorXd binary_grad(const FeasibleDesign& design) const override;

  const TestFunctionSpec& spec() const { return spec_; }

 private:
  TestFunctionSpec spec_;
  TestCvSpec cv_;
};

}  // namespace gegd
