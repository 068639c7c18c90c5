#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cf/ising.hpp"
#include "cf/problem.hpp"
#include "cf/qubo.hpp"

namespace cf {

enum class Algorithm { SA, SimCIM, SB };

Algorithm algorithm_from_name(const std::string& name);
std::string algorithm_name(Algorithm alg);

/// Shared solver knobs. Zero-valued scale parameters (sa_beta_*, cim_zeta,
/// sb_coupling) mean "derive from the model", keeping the defaults usable
/// across instances of different P_max.
struct SolverConfig {
  std::uint64_t seed = 1;
  int iterations = 0;  // sweeps (SA) or integration steps (SimCIM/SB)
  int attempts = 1;
  int restarts = 1;  // independent runs per attempt; the best one is kept

  // SA: geometric inverse-temperature schedule
  double sa_beta_start = 0.0;  // 0 = 0.1 / mean nonzero |Q|
  double sa_beta_end = 0.0;    // 0 = 10 / min nonzero |Q|

  // SimCIM: amplitude dynamics with a linear pump ramp
  double cim_dt = 0.02;
  double cim_pump_start = -1.0;
  double cim_pump_end = 1.0;
  double cim_zeta = 0.0;  // 0 = 1 / max_i (sum_j |2 J_ij| + |h_i|)
  double cim_noise = 0.1;

  // SB: ballistic variant, a(t) ramped 0 -> detuning
  double sb_dt = 0.1;
  double sb_detuning = 1.0;
  double sb_coupling = 0.0;  // 0 = detuning / (2 max_i (sum_j |2 J_ij| + |h_i|))

  void check() const;
};

/// Defaults per algorithm; printed verbatim by the describe command.
SolverConfig default_config(Algorithm alg);

struct Attempt {
  Bits bits;
  double energy = 0.0;
  double wall_us = 0.0;
};

struct SolveResult {
  Bits best_bits;
  double best_energy = 0.0;
  std::vector<Attempt> per_attempt;
  double wall_total_s = 0.0;
};

struct OracleResult {
  int optimal_m = 0;
  Assignment witness;
};

/// Exhaustive search over canonical (first-fit labeled) assignments,
/// quotienting out the m! canister symmetry. Returns nullopt when no
/// feasible assignment exists. Refuses n > 16.
std::optional<OracleResult> oracle_exact(const ProblemInstance& inst);

/// Global minimum over all 2^D bitstrings via Gray-code enumeration;
/// ties broken toward the lexicographically smallest bitstring.
/// Refuses D > 24.
std::pair<Bits, double> brute_force_bits(const QuboModel& model);

SolveResult solve_sa(const QuboModel& model, const SolverConfig& cfg);
SolveResult solve_simcim(const QuboModel& model, const SolverConfig& cfg);
SolveResult solve_sb(const QuboModel& model, const SolverConfig& cfg);

SolveResult solve(Algorithm alg, const QuboModel& model, const SolverConfig& cfg);

/// Flat key=value dump of every default, one algorithm per block.
std::string describe_defaults();

/// Parses a flat key=value config file body; unknown keys are errors.
SolverConfig parse_config(const std::string& text, SolverConfig base);

}  // namespace cf
