#include <doctest.h>

#include <cmath>

#include "gegd/field_chain.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace gegd;

TEST_CASE("bound_map values and derivative") {
  Eigen::VectorXd zeta(3), rho, jac;
  zeta << 0.0, std::log(3.0), 40.0;
  bound_map(zeta, rho, jac);
  CHECK(rho[0] == doctest::Approx(0.0));
  CHECK(jac[0] == doctest::Approx(0.5));
  CHECK(rho[1] == doctest::Approx(0.5));  // -1 + 2 * 3/4
  CHECK(rho[2] == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(rho[i]) <= 1.0);
}

TEST_CASE("gaussian_filter preserves constants") {
  DesignGrid grid(6, 9);
  const Field c = Field::Constant(grid.pixel_count(), 0.37);
  CHECK(gaussian_filter(c, grid, 1.5).isApprox(c, 1e-12));
}

TEST_CASE("gaussian_filter impulse response matches the kernel") {
  // 13x13 keeps the full 4-sigma window inside the grid around the probes.
  DesignGrid grid(13, 13);
  Field impulse = Field::Zero(grid.pixel_count());
  impulse[grid.index(6, 6)] = 1.0;
  const double sigma = 1.0;
  const Field out = gaussian_filter(impulse, grid, sigma);
  // Direct kernel evaluation: w(dy,dx) / sum over the full window.
  const int radius = int(std::ceil(4.0 * sigma));
  double total = 0.0;
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx)
      total += std::exp(-0.5 * (dy * dy + dx * dx) / (sigma * sigma));
  CHECK(out[grid.index(6, 6)] == doctest::Approx(1.0 / total).epsilon(1e-9));
  CHECK(out[grid.index(6, 7)] ==
        doctest::Approx(std::exp(-0.5) / total).epsilon(1e-9));
}

TEST_CASE("gaussian_filter maps symmetric input to bitwise symmetric output") {
  DesignGrid grid(6, 8, Symmetry::D1Cols, 2);
  const Field in = testutil::random_symmetric_field(grid, 11);
  const Field out = gaussian_filter(in, grid, 1.3);
  for (int i = 0; i < grid.pixel_count(); ++i)
    CHECK(out[i] == out[grid.mirror_index(i)]);  // exact, not approximate
}

TEST_CASE("gaussian_filter rejects bad sigma") {
  DesignGrid grid(4, 4);
  CHECK_THROWS_AS(gaussian_filter(Field::Zero(16), grid, 0.0), ParameterError);
}

TEST_CASE("tanh_project endpoints, oddness, and value") {
  Field x(3), out, deriv;
  x << 0.0, 1.0, 0.25;
  tanh_project(x, 8.0, out, &deriv);
  CHECK(out[0] == doctest::Approx(0.0));
  CHECK(out[1] == doctest::Approx(1.0));
  CHECK(out[2] == doctest::Approx(std::tanh(2.0) / std::tanh(8.0)).epsilon(1e-12));
  CHECK(out[2] == doctest::Approx(0.96403).epsilon(1e-4));

  Field neg = -x, out_neg;
  tanh_project(neg, 8.0, out_neg);
  CHECK(out_neg.isApprox(-out, 1e-14));
}

TEST_CASE("range is preserved by filter + projection") {
  DesignGrid grid(7, 7);
  for (uint32_t tag = 0; tag < 5; ++tag) {
    const Field in = testutil::random_field(grid, 23, tag);
    Field out;
    tanh_project(gaussian_filter(in, grid, 2.0), 8.0, out);
    CHECK(out.maxCoeff() <= 1.0);
    CHECK(out.minCoeff() >= -1.0);
  }
}

TEST_CASE("backward_chain matches central finite differences") {
  DesignGrid grid(8, 8, Symmetry::D1Cols, 2);
  ChainParams params{1.2, 6.0};
  const int n = grid.independent_count();
  Eigen::VectorXd zeta(n);
  rng::fill_uniform(zeta, 99, rng::kGeneric, 7, 0, -0.8, 0.8);

  // Scalar probe: sum of weights * reward.
  Field w(grid.pixel_count());
  rng::fill_uniform(w, 99, rng::kGeneric, 7, 1, -1.0, 1.0);

  ChainWorkspace ws;
  forward_chain(zeta, grid, params, ws);
  const Eigen::VectorXd analytic = backward_chain(w, grid, params, ws);

  auto probe = [&](const Eigen::VectorXd& z) {
    ChainWorkspace tmp;
    return w.dot(forward_chain(z, grid, params, tmp));
  };
  const Eigen::VectorXd fd = oracles::finite_difference_gradient(probe, zeta, 1e-6);
  CHECK((analytic - fd).norm() / fd.norm() < 1e-5);
}

TEST_CASE("backward_chain linearity and symmetry") {
  DesignGrid grid(6, 6, Symmetry::D1Rows, 2);
  ChainParams params{1.0, 8.0};
  Eigen::VectorXd zeta = Eigen::VectorXd::Constant(grid.independent_count(), 0.2);
  ChainWorkspace ws;
  forward_chain(zeta, grid, params, ws);

  CHECK(backward_chain(Field::Zero(grid.pixel_count()), grid, params, ws).norm() == 0.0);

  // The filter adjoint preserves mirror symmetry exactly, so a symmetric
  // upstream gradient reduces to orbit sums of a symmetric full-grid field.
  const Field upstream = testutil::random_symmetric_field(grid, 17);
  const Field adj = gaussian_filter_adjoint(upstream, grid, params.filter_sigma);
  CHECK(is_symmetric(adj, grid, 0.0));

  // A constant upstream gradient keeps the left/right mirror structure of the
  // constant field: the reduced half is symmetric across columns.
  const Eigen::VectorXd g =
      backward_chain(Field::Constant(grid.pixel_count(), 1.0), grid, params, ws);
  const int hc = grid.half_cols();
  for (int r = 0; r < grid.half_rows(); ++r)
    for (int c = 0; c < hc; ++c)
      CHECK(g[r * hc + c] == doctest::Approx(g[r * hc + (hc - 1 - c)]).epsilon(1e-12));
}

TEST_CASE("chain output is equivariant under the grid symmetry") {
  DesignGrid grid(5, 9, Symmetry::D1Cols, 2);
  ChainParams params{1.1, 8.0};
  Eigen::VectorXd zeta(grid.independent_count());
  rng::fill_uniform(zeta, 3, rng::kGeneric, 8, 0, -1.0, 1.0);
  ChainWorkspace ws;
  const Field& reward = forward_chain(zeta, grid, params, ws);
  CHECK(is_symmetric(reward, grid, 0.0));
}
