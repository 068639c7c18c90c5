#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cf/problem.hpp"

namespace cf {

struct DatasetRow {
  int n = 0;
  int count = 0;
  int s = 0;  // slack width; p_max = 2^s - 1
};

/// Recipe for the synthetic benchmark family: m=3 instances whose known
/// optimum is 2 canisters, plus one trivial m=2, D=10 instance.
struct DatasetSpec {
  std::vector<DatasetRow> sizes;
  int m = 3;
  int n_min = 1;
  std::uint64_t seed = 1;
  bool include_trivial = true;
  int rejection_budget = 4'000'000;  // heat-output draws per instance
};

/// n = 3..10, ten instances each, slack widths following the reference
/// QUBO sizes (s = 3 up to n = 5, s = 4 from n = 6).
DatasetSpec reference_dataset_spec(std::uint64_t seed = 1, int count_per_size = 10);

struct DatasetEntry {
  ProblemInstance inst;
  int optimal_m = 0;
  std::vector<int> witness;  // one optimal canister_of
  std::string file;
};

/// Rejection-samples heat outputs uniform on [1, p_max] until the exact
/// oracle confirms the target optimum. Deterministic for a fixed seed.
std::vector<DatasetEntry> generate_dataset(const DatasetSpec& spec);

/// Writes one JSON file per instance plus manifest.json.
void write_dataset(const std::vector<DatasetEntry>& entries, const DatasetSpec& spec,
                   const std::filesystem::path& dir);

/// Reads manifest.json and every listed instance file, re-checking the
/// core invariants. Errors name the offending file.
std::vector<DatasetEntry> load_dataset(const std::filesystem::path& dir);

ProblemInstance load_instance(const std::filesystem::path& file);
void write_instance(const ProblemInstance& inst, const std::filesystem::path& file);

}  // namespace cf
