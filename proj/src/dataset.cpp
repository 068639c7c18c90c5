#include "cf/dataset.hpp"

#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "cf/qubo.hpp"
#include "cf/solvers.hpp"

namespace cf {
namespace {

using nlohmann::json;

std::string two_digits(int v) {
  std::string s = std::to_string(v);
  return s.size() < 2 ? "0" + s : s;
}

json instance_to_json(const ProblemInstance& inst) {
  return json{{"name", inst.name}, {"n", inst.n},        {"m", inst.m},
              {"p", inst.p},       {"p_max", inst.p_max}, {"n_min", inst.n_min}};
}

ProblemInstance instance_from_json(const json& j, const std::string& where) {
  try {
    ProblemInstance inst;
    inst.name = j.at("name").get<std::string>();
    inst.n = j.at("n").get<int>();
    inst.m = j.at("m").get<int>();
    inst.p = j.at("p").get<std::vector<long long>>();
    inst.p_max = j.at("p_max").get<long long>();
    inst.n_min = j.at("n_min").get<int>();
    inst.check();
    return inst;
  } catch (const json::exception& e) {
    throw std::runtime_error(where + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(where + ": " + e.what());
  }
}

json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(file.string() + ": " + e.what());
  }
}

}  // namespace

DatasetSpec reference_dataset_spec(std::uint64_t seed, int count_per_size) {
  DatasetSpec spec;
  spec.seed = seed;
  for (int n = 3; n <= 10; ++n)
    spec.sizes.push_back({n, count_per_size, n <= 5 ? 3 : 4});
  return spec;
}

std::vector<DatasetEntry> generate_dataset(const DatasetSpec& spec) {
  std::vector<DatasetEntry> entries;
  std::mt19937_64 rng(spec.seed);

  if (spec.include_trivial) {
    // smallest D = 10 case: two elements that must share one canister
    DatasetEntry trivial;
    trivial.inst = {"n02_trivial", 2, 2, {1, 1}, 3, 2};
    trivial.file = "n02_trivial.json";
    auto oracle = oracle_exact(trivial.inst);
    if (!oracle) throw std::logic_error("trivial instance must be feasible");
    trivial.optimal_m = oracle->optimal_m;
    trivial.witness = oracle->witness.canister_of();
    entries.push_back(std::move(trivial));
  }

  for (const DatasetRow& row : spec.sizes) {
    const long long p_max = (1LL << row.s) - 1;
    std::uniform_int_distribution<long long> heat(1, p_max);
    for (int c = 0; c < row.count; ++c) {
      DatasetEntry entry;
      entry.inst.name = "n" + two_digits(row.n) + "_" + two_digits(c);
      entry.inst.n = row.n;
      entry.inst.m = spec.m;
      entry.inst.p_max = p_max;
      entry.inst.n_min = spec.n_min;
      entry.file = entry.inst.name + ".json";

      bool accepted = false;
      for (int trial = 0; trial < spec.rejection_budget; ++trial) {
        entry.inst.p.resize(row.n);
        long long total = 0;
        for (int i = 0; i < row.n; ++i) {
          entry.inst.p[i] = heat(rng);
          total += entry.inst.p[i];
        }
        // cheap bounds: M = 1 must be impossible and M = 2 not ruled out
        if (total <= p_max || total > 2 * p_max) continue;
        auto oracle = oracle_exact(entry.inst);
        if (!oracle || oracle->optimal_m != 2) continue;
        entry.optimal_m = 2;
        entry.witness = oracle->witness.canister_of();
        accepted = true;
        break;
      }
      if (!accepted)
        throw std::runtime_error("rejection budget exhausted for row n = " +
                                 std::to_string(row.n));
      entries.push_back(std::move(entry));
    }
  }
  return entries;
}

void write_dataset(const std::vector<DatasetEntry>& entries, const DatasetSpec& spec,
                   const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  json manifest;
  manifest["seed"] = spec.seed;
  manifest["distribution"] = "uniform integers on [1, p_max]";
  manifest["instances"] = json::array();
  for (const DatasetEntry& entry : entries) {
    write_instance(entry.inst, dir / entry.file);
    manifest["instances"].push_back(
        {{"file", entry.file},
         {"n", entry.inst.n},
         {"m", entry.inst.m},
         {"s", build_layout(entry.inst).s},
         {"p_max", entry.inst.p_max},
         {"n_min", entry.inst.n_min},
         {"optimal_m", entry.optimal_m},
         {"witness", entry.witness}});
  }
  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
  out << manifest.dump(2) << "\n";
}

std::vector<DatasetEntry> load_dataset(const std::filesystem::path& dir) {
  json manifest = read_json_file(dir / "manifest.json");
  std::vector<DatasetEntry> entries;
  for (const json& rec : manifest.at("instances")) {
    DatasetEntry entry;
    entry.file = rec.at("file").get<std::string>();
    const std::filesystem::path file = dir / entry.file;
    if (!std::filesystem::exists(file))
      throw std::runtime_error("manifest lists missing file " + file.string());
    entry.inst = load_instance(file);
    entry.optimal_m = rec.at("optimal_m").get<int>();
    entry.witness = rec.at("witness").get<std::vector<int>>();
    if (entry.inst.n != rec.at("n").get<int>() ||
        entry.inst.m != rec.at("m").get<int>() ||
        entry.inst.p_max != rec.at("p_max").get<long long>())
      throw std::runtime_error(file.string() + ": fields disagree with manifest");
    // the stored witness must still certify the recorded optimum
    FeasibilityReport report = validate_assignment(entry.inst, Assignment(entry.witness));
    if (!report.feasible || report.objective_m != entry.optimal_m)
      throw std::runtime_error(file.string() + ": manifest witness is not optimal");
    entries.push_back(std::move(entry));
  }
  return entries;
}

ProblemInstance load_instance(const std::filesystem::path& file) {
  return instance_from_json(read_json_file(file), file.string());
}

void write_instance(const ProblemInstance& inst, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << instance_to_json(inst).dump(2) << "\n";
}

}  // namespace cf
