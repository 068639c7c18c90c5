#include "cf/ising.hpp"

namespace cf {

IsingModel qubo_to_ising(const QuboModel& model) {
  // z = (sigma + 1)/2:
  //   z^T Q z = (1/4) sigma^T Q0 sigma + (1/2) (Q 1)^T sigma
  //             + (1/4) (tr Q + 1^T Q 1)
  // with Q0 the off-diagonal part of Q (sigma_i^2 = 1 folds the diagonal
  // into the constant).
  IsingModel ising;
  ising.j = model.q / 4.0;
  ising.j.diagonal().setZero();
  ising.h = 0.5 * model.q.rowwise().sum();
  ising.offset = model.offset + 0.25 * model.q.trace() + 0.25 * model.q.sum();
  return ising;
}

double ising_energy(const IsingModel& ising, const Eigen::VectorXd& spins) {
  return spins.dot(ising.j * spins) + ising.h.dot(spins) + ising.offset;
}

Bits spins_to_bits(const Eigen::VectorXd& spins) {
  Bits z(spins.size());
  for (Eigen::Index i = 0; i < spins.size(); ++i)
    z[i] = spin_sign(spins[i]) > 0.0 ? 1 : 0;
  return z;
}

}  // namespace cf
