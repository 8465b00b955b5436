#include <doctest.h>

#include <cmath>

#include "gegd/io.hpp"
#include "gegd/optimizer.hpp"
#include "gegd/testfunc.hpp"

using namespace gegd;

TEST_CASE("adam_update basics") {
  AdamState st;
  st.init(3);
  Eigen::VectorXd x = Eigen::VectorXd::Constant(3, 1.0);

  // Zero gradient with zero moments: no movement.
  adam_update(st, x, Eigen::VectorXd::Zero(3), 0.1);
  CHECK(x.isApprox(Eigen::VectorXd::Constant(3, 1.0)));

  // First step with constant gradient moves by about -sign(g) * eta.
  AdamState st2;
  st2.init(2);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(2);
  Eigen::VectorXd g(2);
  g << 3.0, -0.2;
  adam_update(st2, y, g, 0.01);
  CHECK(y[0] == doctest::Approx(-0.01).epsilon(1e-4));
  CHECK(y[1] == doctest::Approx(0.01).epsilon(1e-4));

  Eigen::VectorXd bad(2);
  bad << 1.0, std::nan("");
  CHECK_THROWS_AS(adam_update(st2, y, bad, 0.01), NumericalError);
}

TEST_CASE("step_size schedule") {
  CHECK(step_size(1, 0.0, 0.0, 1e-4) == doctest::Approx(1e-4));
  CHECK(step_size(2, 5.0, 0.0, 1e-4) == doctest::Approx(1e-4));
  CHECK(step_size(3, 2.0, 2.0, 1e-4) == doctest::Approx(1e-4));        // ratio 1
  CHECK(step_size(5, 16.0, 2.0, 1e-4) == doctest::Approx(2e-4));       // ratio 8 -> cube root 2
  CHECK(step_size(4, 3.0, 0.0, 1e-4) == doctest::Approx(1e-4));        // degenerate reference
  CHECK_THROWS_AS(step_size(0, 1.0, 1.0, 1e-4), ParameterError);
}

namespace {

struct ConstantProblem final : Problem {
  double cost(const FeasibleDesign&, Fidelity) const override { return -1.25; }
  bool has_lowfi() const override { return true; }
};

GegdConfig small_config(uint64_t seed, int iterations) {
  GegdConfig g;
  g.max_iterations = iterations;
  g.seed = seed;
  g.m_plain = 4;
  g.covariance = CovarianceMode::Rbf;
  g.kappa = 1e4;
  return g;
}

}  // namespace

TEST_CASE("run_gegd on a constant-cost problem") {
  DesignGrid grid(6, 8, Symmetry::D1Cols, 2);
  ConstantProblem problem;
  auto dispatcher = make_inprocess_dispatcher(problem, 1);
  CovarianceModel cov = CovarianceModel::rbf(grid, 1e4);

  GegdConfig cfg = small_config(3, 5);
  CHECK_THROWS_AS(run_gegd(small_config(3, 0), grid, problem, *dispatcher, cov),
                  ParameterError);

  OptimizationTrace trace = run_gegd(cfg, grid, problem, *dispatcher, cov);
  CHECK(trace.records.size() == 5);
  CHECK(trace.best.cost == doctest::Approx(-1.25));
  for (const auto& r : trace.records) CHECK(r.best_cost == doctest::Approx(-1.25));
}

TEST_CASE("run_gegd is deterministic and best_cost is non-increasing") {
  DesignGrid grid(8, 12, Symmetry::D1Cols, 3);
  TestFunctionSpec spec = TestFunctionSpec::make(grid, 555);
  TestFunctionProblem problem(spec, TestCvSpec{0.001, 77});
  CovarianceModel cov = CovarianceModel::rbf(grid, 1e5);

  auto d1 = make_inprocess_dispatcher(problem, 1);
  auto d8 = make_inprocess_dispatcher(problem, 8);
  GegdConfig cfg = small_config(11, 12);
  OptimizationTrace a = run_gegd(cfg, grid, problem, *d1, cov);
  OptimizationTrace b = run_gegd(cfg, grid, problem, *d8, cov);

  CHECK(trace_csv(a) == trace_csv(b));  // worker count cannot influence results
  CHECK(a.best.design == b.best.design);
  for (size_t i = 1; i < a.records.size(); ++i)
    CHECK(a.records[i].best_cost <= a.records[i - 1].best_cost);

  OptimizationTrace c = run_gegd(small_config(12, 12), grid, problem, *d1, cov);
  CHECK(trace_csv(a) != trace_csv(c));  // seed matters
}

TEST_CASE("run_gegd with ACV stays within the iteration budget") {
  DesignGrid grid(8, 12, Symmetry::D1Cols, 3);
  TestFunctionSpec spec = TestFunctionSpec::make(grid, 556);
  TestFunctionProblem problem(spec, TestCvSpec{0.001, 78});
  CovarianceModel cov = CovarianceModel::rbf(grid, 1e5);
  auto dispatcher = make_inprocess_dispatcher(problem, 1);

  GegdConfig cfg = small_config(21, 10);
  cfg.acv = true;
  cfg.budget.t_hf = 1.0;
  cfg.budget.t_lf = 1.0 / 33.0;
  cfg.budget.t_iter = 10.0;
  cfg.budget.m_min = 5;

  OptimizationTrace trace = run_gegd(cfg, grid, problem, *dispatcher, cov);
  for (const auto& r : trace.records) {
    CHECK(r.m * (cfg.budget.t_hf + r.r_cv * cfg.budget.t_lf) <= cfg.budget.t_iter + 1e-9);
    CHECK(r.m >= 1);
  }
  // Later iterations should pick up the near-perfect correlation of the CV.
  CHECK(trace.records.back().corr > 0.9);
  CHECK(trace.records.back().r_cv >= 1);
}
