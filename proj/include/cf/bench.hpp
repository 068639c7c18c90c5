#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cf/dataset.hpp"
#include "cf/solvers.hpp"

namespace cf {

/// Repetitions to 99% cumulative success: log(0.01) / log(1 - theta).
/// Real-valued, not rounded. nullopt when theta = 0 (unreachable);
/// theta = 1 gives 1 (a single run already suffices).
std::optional<double> r99(double theta);

/// Time-to-solution t_a * R99 in the units of t_a.
std::optional<double> tts(double t_a_us, double theta);

struct BenchRecord {
  std::string instance;
  std::string solver;
  std::uint64_t seed = 0;
  int attempts = 0;
  int successes = 0;
  double theta = 0.0;
  double theta_smooth = 0.0;  // (successes+1)/(attempts+2); theta is canonical
  double t_a_us = 0.0;
  std::optional<double> r99;
  std::optional<double> tts_us;
  int best_m = -1;      // decoded M of the best attempt, -1 on decode failure
  bool feasible = false;
  double wall_total_s = 0.0;
  int n = 0;  // grouping key
};

struct BenchSummary {
  int n = 0;
  std::string solver;
  int instances = 0;
  int solved = 0;  // instances with at least one success
  double tts_mean_us = 0.0;
  double tts_std_us = 0.0;  // sample std over per-instance TTS, finite only
};

struct BenchOptions {
  /// > 0: use this nominal per-attempt time instead of measured wall time
  /// (makes every output field deterministic).
  double fixed_ta_us = 0.0;
  int jobs = 1;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  std::vector<BenchSummary> summaries;
};

/// An attempt is a success iff its best bitstring decodes to a feasible
/// assignment whose M equals the manifest optimum; successes are always
/// re-validated against the constraints, never trusted from energies.
BenchResult run_benchmark(const std::vector<DatasetEntry>& entries,
                          const std::map<std::string, SolverConfig>& solvers,
                          const BenchOptions& opts);

struct SweepRow {
  int budget = 0;
  int attempts = 0;
  int successes = 0;
  double theta = 0.0;
  double t_a_us = 0.0;
  std::optional<double> tts_us;
};

/// Success probability and TTS of one solver on one instance across
/// iteration budgets. With fixed_ta_us set, t_a is taken as a nominal
/// per-iteration cost, so t_a = fixed_ta_us * budget.
std::vector<SweepRow> sweep(const std::vector<int>& budgets, const DatasetEntry& entry,
                            Algorithm alg, const SolverConfig& cfg,
                            const BenchOptions& opts);

std::string records_csv(const std::vector<BenchRecord>& records);
std::string summaries_csv(const std::vector<BenchSummary>& summaries);
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace cf
