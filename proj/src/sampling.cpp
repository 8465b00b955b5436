#include "gegd/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "gegd/rng.hpp"

namespace gegd {

double default_sigma_rbf(int min_feature) { return min_feature * std::sqrt(2.0) / 4.0; }

double regularization_epsilon(double lambda_max, double lambda_min, double kappa) {
  if (kappa <= 1.0) throw ParameterError("target condition number must exceed 1");
  return (lambda_max - kappa * lambda_min) / (kappa - 1.0);
}

CovarianceModel CovarianceModel::rbf(const DesignGrid& grid, double kappa) {
  return rbf_params(grid.rows, grid.cols, default_sigma_rbf(grid.min_feature), kappa);
}

CovarianceModel CovarianceModel::rbf_params(int rows, int cols, double sigma_rbf,
                                            double kappa) {
  if (rows < 1 || cols < 1) throw ParameterError("grid must be nonempty");
  if (sigma_rbf <= 0.0) throw ParameterError("sigma_rbf must be positive");
  if (kappa <= 1.0) throw ParameterError("target condition number must exceed 1");
  const int n = rows * cols;
  Eigen::MatrixXd sigma(n, n);
  const double inv_s2 = 1.0 / (sigma_rbf * sigma_rbf);
  for (int i = 0; i < n; ++i) {
    const int ri = i / cols, ci = i % cols;
    for (int j = 0; j <= i; ++j) {
      const int rj = j / cols, cj = j % cols;
      const double d2 = double(ri - rj) * (ri - rj) + double(ci - cj) * (ci - cj);
      const double v = std::exp(-d2 * inv_s2);
      sigma(i, j) = v;
      sigma(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("covariance eigensolve failed");
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  const double eps = regularization_epsilon(lmax, lmin, kappa);
  sigma.diagonal().array() += eps;
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw NumericalError("covariance Cholesky failed after regularization");

  CovarianceModel m;
  m.mode_ = CovarianceMode::Rbf;
  m.rows_ = rows;
  m.cols_ = cols;
  m.sigma_rbf_ = sigma_rbf;
  m.kappa_ = kappa;
  m.epsilon_ = eps;
  m.chol_ = llt.matrixL();
  return m;
}

CovarianceModel CovarianceModel::isotropic(int rows, int cols) {
  if (rows < 1 || cols < 1) throw ParameterError("grid must be nonempty");
  CovarianceModel m;
  m.mode_ = CovarianceMode::Isotropic;
  m.rows_ = rows;
  m.cols_ = cols;
  m.kappa_ = 1.0;
  return m;
}

Eigen::MatrixXd CovarianceModel::correlate(const Eigen::MatrixXd& z, double sigma_r) const {
  if (z.rows() != dim()) throw DimensionError("whitened draw dimension mismatch");
  if (mode_ == CovarianceMode::Isotropic) return sigma_r * z;
  Eigen::MatrixXd out = chol_.triangularView<Eigen::Lower>() * z;
  out *= sigma_r;
  return out;
}

Eigen::VectorXd CovarianceModel::score_vector(const Eigen::VectorXd& delta,
                                              double sigma_r) const {
  if (delta.size() != dim()) throw DimensionError("perturbation dimension mismatch");
  const double inv_var = 1.0 / (sigma_r * sigma_r);
  if (mode_ == CovarianceMode::Isotropic) return inv_var * delta;
  Eigen::VectorXd q = delta;
  chol_.triangularView<Eigen::Lower>().solveInPlace(q);
  chol_.triangularView<Eigen::Lower>().transpose().solveInPlace(q);
  return inv_var * q;
}

Eigen::MatrixXd CovarianceModel::score_from_whitened(const Eigen::MatrixXd& z,
                                                     double sigma_r) const {
  if (z.rows() != dim()) throw DimensionError("whitened draw dimension mismatch");
  const double inv_sigma = 1.0 / sigma_r;
  if (mode_ == CovarianceMode::Isotropic) return inv_sigma * z;
  Eigen::MatrixXd q = z;
  chol_.triangularView<Eigen::Lower>().transpose().solveInPlace(q);
  return inv_sigma * q;
}

namespace {
constexpr char kCacheMagic[8] = {'G', 'E', 'G', 'D', 'C', 'O', 'V', '1'};
}

void CovarianceModel::save_cache(const std::string& path) const {
  if (mode_ != CovarianceMode::Rbf) throw ParameterError("only RBF covariances are cached");
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw BackendError("cannot open covariance cache for writing: " + path);
  std::fwrite(kCacheMagic, 1, 8, f);
  uint32_t r = rows_, c = cols_;
  std::fwrite(&r, 4, 1, f);
  std::fwrite(&c, 4, 1, f);
  std::fwrite(&sigma_rbf_, 8, 1, f);
  std::fwrite(&kappa_, 8, 1, f);
  std::fwrite(&epsilon_, 8, 1, f);
  const int n = dim();
  std::vector<double> tri;
  tri.reserve(size_t(n) * (n + 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) tri.push_back(chol_(i, j));
  std::fwrite(tri.data(), 8, tri.size(), f);
  std::fclose(f);
}

CovarianceModel CovarianceModel::load_cache(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw BackendError("cannot open covariance cache: " + path);
  char magic[8];
  uint32_t r = 0, c = 0;
  double sigma_rbf = 0, kappa = 0, eps = 0;
  bool ok = std::fread(magic, 1, 8, f) == 8 && std::memcmp(magic, kCacheMagic, 8) == 0 &&
            std::fread(&r, 4, 1, f) == 1 && std::fread(&c, 4, 1, f) == 1 &&
            std::fread(&sigma_rbf, 8, 1, f) == 1 && std::fread(&kappa, 8, 1, f) == 1 &&
            std::fread(&eps, 8, 1, f) == 1;
  if (!ok || r == 0 || c == 0) {
    std::fclose(f);
    throw BackendError("covariance cache is corrupt: " + path);
  }
  const int n = int(r) * int(c);
  std::vector<double> tri(size_t(n) * (n + 1) / 2);
  ok = std::fread(tri.data(), 8, tri.size(), f) == tri.size();
  std::fclose(f);
  if (!ok) throw BackendError("covariance cache is truncated: " + path);

  CovarianceModel m;
  m.mode_ = CovarianceMode::Rbf;
  m.rows_ = int(r);
  m.cols_ = int(c);
  m.sigma_rbf_ = sigma_rbf;
  m.kappa_ = kappa;
  m.epsilon_ = eps;
  m.chol_ = Eigen::MatrixXd::Zero(n, n);
  size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) m.chol_(i, j) = tri[k++];
  return m;
}

bool CovarianceModel::matches(int rows, int cols, double sigma_rbf, double kappa) const {
  return rows_ == rows && cols_ == cols && sigma_rbf_ == sigma_rbf && kappa_ == kappa;
}

PerturbationEnsemble draw_ensemble(const SamplingDistribution& dist, int count,
                                   uint64_t seed, uint32_t iteration) {
  if (count < 1) throw ParameterError("ensemble size must be >= 1");
  if (!dist.cov) throw ContractError("sampling distribution has no covariance model");
  const int n = dist.cov->dim();
  PerturbationEnsemble out;
  out.seed = seed;
  out.iteration = iteration;
  out.z.resize(n, count);
  for (int m = 0; m < count; ++m)
    rng::fill_normal(out.z.col(m), seed, rng::kEnsemble, iteration, uint32_t(m));
  out.deltas = dist.cov->correlate(out.z, dist.sigma_r);
  return out;
}

}  // namespace gegd
