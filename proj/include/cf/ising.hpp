#pragma once

#include <Eigen/Dense>

#include "cf/qubo.hpp"

namespace cf {

/// Spin form over sigma in {-1,+1}^D: energy(sigma) = sigma^T j sigma
/// + h^T sigma + offset, equal to the QUBO energy of z = (sigma + 1)/2.
struct IsingModel {
  Eigen::VectorXd h;
  Eigen::MatrixXd j;  // symmetric, zero diagonal
  double offset = 0.0;

  int dim() const { return static_cast<int>(h.size()); }
};

IsingModel qubo_to_ising(const QuboModel& model);

double ising_energy(const IsingModel& ising, const Eigen::VectorXd& spins);

/// sign with sign(0) = +1, the project-wide tie rule.
inline double spin_sign(double v) { return v < 0.0 ? -1.0 : 1.0; }

Bits spins_to_bits(const Eigen::VectorXd& spins);

}  // namespace cf
