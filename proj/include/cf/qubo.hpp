#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "cf/problem.hpp"

namespace cf {

using Bits = std::vector<int>;  // entries 0/1

/// Bijection between logical variables (x_ij, y_j, a_lj, b_lj) and flat
/// indices 0..dim-1. Blocks in order: x (n*m), y (m), a (m*s), b (m*k).
///
/// Slack widths: s = ceil(log2(p_max + 1)) so an unused canister's slack
/// of exactly p_max is representable; the minimum-fill block is dropped
/// (k = 0) when n_min == 1 and otherwise sized to cover slacks up to
/// n - n_min.
struct VariableLayout {
  int n = 0;
  int m = 0;
  int s = 0;
  int k = 0;

  int dim() const { return m * (1 + n + s + k); }

  int x(int i, int j) const { return i * m + j; }
  int y(int j) const { return n * m + j; }
  int a(int l, int j) const { return n * m + m + j * s + l; }
  int b(int l, int j) const { return n * m + m + m * s + j * k + l; }
};

VariableLayout build_layout(const ProblemInstance& inst);

/// A scales the canister-count objective, B the constraint penalties.
struct PenaltyWeights {
  double a_weight = 1.0;
  double b_weight = 0.0;
};

/// B = 2*A*m keeps any single constraint violation costlier than the
/// objective gain of freeing every canister.
PenaltyWeights default_weights(const ProblemInstance& inst,
                               double a_weight = 1.0);

/// Symmetric coefficient matrix with linear terms on the diagonal;
/// energy(z) = z^T q z + offset.
struct QuboModel {
  Eigen::MatrixXd q;
  double offset = 0.0;
  VariableLayout layout;
  PenaltyWeights weights;

  int dim() const { return static_cast<int>(q.rows()); }
};

/// Composite Hamiltonian A*sum(y_j) + B*(H1 + H2 + H3 + H4): capacity
/// equalities with binary slack, exactly-one-canister, minimum fill
/// (only when n_min > 1), and the x<=y coupling.
QuboModel build_qubo(const ProblemInstance& inst, const PenaltyWeights& w);

double energy(const QuboModel& model, const Bits& z);

/// B-weighted penalty part: energy minus the objective contribution of
/// the set y bits. Zero exactly on encodings of feasible assignments.
double penalty_energy(const QuboModel& model, const Bits& z);

/// Zero-penalty bitstring for a feasible assignment: x from canister_of,
/// y from used, slack bits from the binary expansions of the constraint
/// residuals. Throws std::invalid_argument if the assignment is infeasible.
Bits encode_assignment(const ProblemInstance& inst, const VariableLayout& layout,
                       const Assignment& asg);

struct DecodeFailure {
  std::string reason;
};

/// Reads the x block only; y and slack bits are ignored and usage is
/// re-derived, so inconsistent solver outputs still get a best-effort
/// interpretation. Fails when some element has zero or multiple canisters.
std::variant<Assignment, DecodeFailure> decode_bits(const ProblemInstance& inst,
                                                    const VariableLayout& layout,
                                                    const Bits& z);

/// Text export: "D offset" header, then row-major nonzero upper-triangle
/// entries "i j value". Byte-stable for golden tests.
void export_qubo(const QuboModel& model, std::ostream& out);

}  // namespace cf
