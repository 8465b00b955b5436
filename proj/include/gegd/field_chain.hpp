#pragma once

#include <Eigen/Core>

#include "gegd/grid.hpp"

namespace gegd {

// Latent-to-reward transform stack: unbounded dummy variables -> bounded
// latent densities -> symmetric full field -> Gaussian filter -> tanh
// projection. All gradients are analytic; backward_chain is the exact adjoint
// of forward_chain.

// rho_L = -1 + 2 / (1 + exp(-zeta)), elementwise; jac = d rho_L / d zeta.
void bound_map(const Eigen::VectorXd& zeta, Eigen::VectorXd& rho_l, Eigen::VectorXd& jac);

// Normalized truncated Gaussian blur (separable, truncated at 4 sigma).
// Outside the grid is zero-padded and the kernel renormalized per pixel, so a
// constant field maps to itself. Mirror-symmetric inputs map to bitwise
// mirror-symmetric outputs.
Field gaussian_filter(const Field& field, const DesignGrid& grid, double sigma_f);

// Adjoint of gaussian_filter under the same boundary renormalization.
Field gaussian_filter_adjoint(const Field& grad, const DesignGrid& grid, double sigma_f);

// p(x) = tanh(beta x) / tanh(beta): odd, endpoint-preserving on [-1, 1].
void tanh_project(const Field& field, double beta, Field& out, Field* deriv = nullptr);

struct ChainParams {
  double filter_sigma = 1.0;
  double proj_beta = 8.0;
};

struct ChainWorkspace {
  Eigen::VectorXd rho_l, bound_jac;  // on the independent half
  Field latent_full, filtered, reward, proj_deriv;
};

// zeta (length N) -> reward field (full grid). Intermediates are kept for the
// backward pass.
const Field& forward_chain(const Eigen::VectorXd& zeta, const DesignGrid& grid,
                           const ChainParams& params, ChainWorkspace& ws);

// Gradient wrt reward -> gradient wrt zeta, using the recorded intermediates:
// projection derivative, filter adjoint, orbit reduction, bound-map Jacobian.
Eigen::VectorXd backward_chain(const Field& grad_reward, const DesignGrid& grid,
                               const ChainParams& params, const ChainWorkspace& ws);

// Same chain for latents already living in [-1, 1] (TF baseline path):
// half latent -> expand -> filter -> project.
const Field& forward_chain_latent(const Eigen::VectorXd& latent_half, const DesignGrid& grid,
                                  const ChainParams& params, ChainWorkspace& ws);

// Gradient wrt reward -> gradient wrt the half latent (no bound map).
Eigen::VectorXd backward_chain_latent(const Field& grad_reward, const DesignGrid& grid,
                                      const ChainParams& params, const ChainWorkspace& ws);

}  // namespace gegd
