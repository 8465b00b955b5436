#include "gegd/field_chain.hpp"

#include <cmath>
#include <vector>

namespace gegd {

void bound_map(const Eigen::VectorXd& zeta, Eigen::VectorXd& rho_l, Eigen::VectorXd& jac) {
  const Eigen::Index n = zeta.size();
  rho_l.resize(n);
  jac.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = 1.0 / (1.0 + std::exp(-zeta[i]));
    rho_l[i] = -1.0 + 2.0 * s;
    jac[i] = 2.0 * s * (1.0 - s);
  }
}

namespace {

std::vector<double> kernel_weights(double sigma) {
  const int radius = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> w(radius + 1);
  for (int k = 0; k <= radius; ++k) w[k] = std::exp(-0.5 * k * k / (sigma * sigma));
  return w;
}

// One separable pass along an axis. Terms are accumulated in +/-k pairs so
// that mirror-symmetric inputs produce bitwise mirror-symmetric outputs.
// `normalize` selects the forward filter (divide by per-pixel kernel mass);
// the adjoint divides first and convolves unnormalized.
void pass_1d(const double* in, double* out, int n, int stride, int lines, int line_stride,
             const std::vector<double>& w, bool normalize) {
  const int radius = static_cast<int>(w.size()) - 1;
  for (int line = 0; line < lines; ++line) {
    const double* x = in + line * line_stride;
    double* y = out + line * line_stride;
    for (int i = 0; i < n; ++i) {
      double acc = w[0] * x[i * stride];
      double mass = w[0];
      for (int k = 1; k <= radius; ++k) {
        const int lo = i - k, hi = i + k;
        double pair = 0.0, pair_mass = 0.0;
        if (lo >= 0) { pair += x[lo * stride]; pair_mass += w[k]; }
        if (hi < n) { pair += x[hi * stride]; pair_mass += w[k]; }
        acc += w[k] * pair;
        mass += pair_mass;
      }
      y[i * stride] = normalize ? acc / mass : acc;
    }
  }
}

// Per-pixel kernel mass along one axis (needed by the adjoint).
void mass_1d(std::vector<double>& mass, int n, const std::vector<double>& w) {
  const int radius = static_cast<int>(w.size()) - 1;
  mass.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double m = w[0];
    for (int k = 1; k <= radius; ++k) {
      double pm = 0.0;
      if (i - k >= 0) pm += w[k];
      if (i + k < n) pm += w[k];
      m += pm;
    }
    mass[i] = m;
  }
}

}  // namespace

Field gaussian_filter(const Field& field, const DesignGrid& grid, double sigma_f) {
  if (sigma_f <= 0.0) throw ParameterError("filter sigma must be positive");
  if (field.size() != grid.pixel_count())
    throw DimensionError("field length does not match grid");
  const auto w = kernel_weights(sigma_f);
  Field tmp(field.size()), out(field.size());
  // Rows pass (along columns of each row line), then columns pass.
  pass_1d(field.data(), tmp.data(), grid.cols, 1, grid.rows, grid.cols, w, true);
  pass_1d(tmp.data(), out.data(), grid.rows, grid.cols, grid.cols, 1, w, true);
  return out;
}

Field gaussian_filter_adjoint(const Field& grad, const DesignGrid& grid, double sigma_f) {
  if (sigma_f <= 0.0) throw ParameterError("filter sigma must be positive");
  if (grad.size() != grid.pixel_count())
    throw DimensionError("field length does not match grid");
  const auto w = kernel_weights(sigma_f);
  // Forward is y = conv(x) / mass with mass separable across axes; the adjoint
  // is conv(grad / mass) with no output normalization.
  std::vector<double> mass_r, mass_c;
  mass_1d(mass_r, grid.rows, w);
  mass_1d(mass_c, grid.cols, w);
  Field scaled(grad.size());
  for (int r = 0; r < grid.rows; ++r)
    for (int c = 0; c < grid.cols; ++c)
      scaled[grid.index(r, c)] = grad[grid.index(r, c)] / (mass_r[r] * mass_c[c]);
  Field tmp(grad.size()), out(grad.size());
  pass_1d(scaled.data(), tmp.data(), grid.cols, 1, grid.rows, grid.cols, w, false);
  pass_1d(tmp.data(), out.data(), grid.rows, grid.cols, grid.cols, 1, w, false);
  return out;
}

void tanh_project(const Field& field, double beta, Field& out, Field* deriv) {
  if (beta <= 0.0) throw ParameterError("projection strength must be positive");
  const double norm = std::tanh(beta);
  const Eigen::Index n = field.size();
  out.resize(n);
  if (deriv) deriv->resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = std::tanh(beta * field[i]);
    out[i] = t / norm;
    if (deriv) (*deriv)[i] = beta * (1.0 - t * t) / norm;
  }
}

const Field& forward_chain(const Eigen::VectorXd& zeta, const DesignGrid& grid,
                           const ChainParams& params, ChainWorkspace& ws) {
  if (zeta.size() != grid.independent_count())
    throw DimensionError("zeta length does not match independent parameter count");
  bound_map(zeta, ws.rho_l, ws.bound_jac);
  ws.latent_full = expand_symmetric(ws.rho_l, grid);
  ws.filtered = gaussian_filter(ws.latent_full, grid, params.filter_sigma);
  tanh_project(ws.filtered, params.proj_beta, ws.reward, &ws.proj_deriv);
  return ws.reward;
}

Eigen::VectorXd backward_chain(const Field& grad_reward, const DesignGrid& grid,
                               const ChainParams& params, const ChainWorkspace& ws) {
  Eigen::VectorXd half = backward_chain_latent(grad_reward, grid, params, ws);
  if (half.size() != ws.bound_jac.size())
    throw DimensionError("workspace does not match grid");
  return half.cwiseProduct(ws.bound_jac);
}

const Field& forward_chain_latent(const Eigen::VectorXd& latent_half, const DesignGrid& grid,
                                  const ChainParams& params, ChainWorkspace& ws) {
  if (latent_half.size() != grid.independent_count())
    throw DimensionError("latent length does not match independent parameter count");
  ws.latent_full = expand_symmetric(latent_half, grid);
  ws.filtered = gaussian_filter(ws.latent_full, grid, params.filter_sigma);
  tanh_project(ws.filtered, params.proj_beta, ws.reward, &ws.proj_deriv);
  return ws.reward;
}

Eigen::VectorXd backward_chain_latent(const Field& grad_reward, const DesignGrid& grid,
                                      const ChainParams& params, const ChainWorkspace& ws) {
  if (grad_reward.size() != grid.pixel_count())
    throw DimensionError("gradient length does not match grid");
  if (ws.proj_deriv.size() != grad_reward.size())
    throw ContractError("backward_chain requires a recorded forward pass");
  Field g = grad_reward.cwiseProduct(ws.proj_deriv);
  g = gaussian_filter_adjoint(g, grid, params.filter_sigma);
  return reduce_over_orbits(g, grid);
}

}  // namespace gegd
