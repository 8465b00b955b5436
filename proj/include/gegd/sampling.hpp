#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "gegd/grid.hpp"

namespace gegd {

enum class CovarianceMode { Rbf, Isotropic };

// Pixel-space sampling covariance. In RBF mode
//   Sigma_ij = exp(-|x_i - x_j|^2 / sigma_rbf^2) + delta_ij * epsilon
// with epsilon chosen so the condition number equals kappa exactly
// (epsilon = (lmax - kappa*lmin) / (kappa - 1)). Isotropic mode is the
// identity. Immutable after construction; share freely across runs.
class CovarianceModel {
 public:
  static CovarianceModel rbf(const DesignGrid& grid, double kappa);
  static CovarianceModel rbf_params(int rows, int cols, double sigma_rbf, double kappa);
  static CovarianceModel isotropic(int rows, int cols);

  CovarianceMode mode() const { return mode_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int dim() const { return rows_ * cols_; }
  double sigma_rbf() const { return sigma_rbf_; }
  double kappa() const { return kappa_; }
  double epsilon() const { return epsilon_; }
  const Eigen::MatrixXd& cholesky() const { return chol_; }

  // delta = sigma_r * L * z, one column per ensemble member.
  Eigen::MatrixXd correlate(const Eigen::MatrixXd& z, double sigma_r) const;

  // q = sigma_r^-2 * Sigma^-1 * delta via triangular solves; for whitened
  // draws this equals sigma_r^-1 * L^-T * z.
  Eigen::VectorXd score_vector(const Eigen::VectorXd& delta, double sigma_r) const;
  Eigen::MatrixXd score_from_whitened(const Eigen::MatrixXd& z, double sigma_r) const;

  // Binary cache of the factored covariance (little-endian doubles).
  void save_cache(const std::string& path) const;
  static CovarianceModel load_cache(const std::string& path);
  bool matches(int rows, int cols, double sigma_rbf, double kappa) const;

 private:
  CovarianceModel() = default;
  CovarianceMode mode_ = CovarianceMode::Isotropic;
  int rows_ = 0, cols_ = 0;
  double sigma_rbf_ = 0.0, kappa_ = 1.0, epsilon_ = 0.0;
  Eigen::MatrixXd chol_;  // lower triangular; empty in isotropic mode
};

// Paper default length scale in pixels.
double default_sigma_rbf(int min_feature);

// Eigenvalue shift placing the condition number at kappa.
double regularization_epsilon(double lambda_max, double lambda_min, double kappa);

struct SamplingDistribution {
  const CovarianceModel* cov = nullptr;
  Field mean;
  double sigma_r = 0.0;
};

struct PerturbationEnsemble {
  Eigen::MatrixXd z;       // whitened normals, one member per column
  Eigen::MatrixXd deltas;  // sigma_r * L * z
  uint64_t seed = 0;
  uint32_t iteration = 0;
};

// Members are addressed (seed, iteration, member), so the ensemble is
// reproducible regardless of evaluation order or thread count.
PerturbationEnsemble draw_ensemble(const SamplingDistribution& dist, int count,
                                   uint64_t seed, uint32_t iteration);

}  // namespace gegd
