#pragma once

#include <Eigen/Core>

#include "gegd/fdg.hpp"

namespace gegd {

enum class Fidelity { High, Low };

// Cost backend contract. cost() must be pure and thread-safe; everything the
// optimizers consume goes through it (or the batch dispatcher on top of it).
// Gradient capabilities are optional and only exercised by TF / AF-STE.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual double cost(const FeasibleDesign& design, Fidelity fidelity) const = 0;
  virtual bool has_lowfi() const { return false; }

  // Grayscale path (TF): cost and gradient on densities in [0, 1].
  virtual bool has_gray() const { return false; }
  virtual double gray_cost(const Field& /*density01*/) const {
    throw ContractError("problem has no grayscale cost");
  }
  virtual Eigen::VectorXd gray_grad(const Field& /*density01*/) const {
    throw ContractError("problem has no grayscale gradient");
  }

  // d cost / d rho_F evaluated at a binary design (AF-STE).
  virtual bool has_binary_grad() const { return false; }
  virtual Eigen::VectorXd binary_grad(const FeasibleDesign& /*design*/) const {
    throw ContractError("problem has no binary-design gradient");
  }
};

}  // namespace gegd
