#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cf/dataset.hpp"
#include "cf/qubo.hpp"
#include "cf/solvers.hpp"

using namespace cf;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& file) {
  std::ifstream in(file);
  std::stringstream body;
  body << in.rdbuf();
  return body.str();
}

fs::path temp_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("cf_dataset_" + tag);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("generated sizes follow the reference QUBO size table") {
  DatasetSpec spec = reference_dataset_spec(5, 1);
  auto entries = generate_dataset(spec);

  const std::map<int, int> expected = {{2, 10}, {3, 21}, {4, 24},  {5, 27}, {6, 33},
                                       {7, 36}, {8, 39}, {9, 42}, {10, 45}};
  REQUIRE(entries.size() == 9);
  for (const auto& entry : entries)
    CHECK(build_layout(entry.inst).dim() == expected.at(entry.inst.n));
}

TEST_CASE("generated optima are oracle-verified with stored witnesses") {
  DatasetSpec spec = reference_dataset_spec(11, 2);
  for (const auto& entry : generate_dataset(spec)) {
    auto oracle = oracle_exact(entry.inst);
    REQUIRE(oracle);
    CHECK(oracle->optimal_m == entry.optimal_m);
    CHECK(entry.optimal_m == (entry.inst.n == 2 ? 1 : 2));
    auto report = validate_assignment(entry.inst, Assignment(entry.witness));
    CHECK(report.feasible);
    CHECK(report.objective_m == entry.optimal_m);
    if (entry.inst.n > 2) {
      long long total = 0;
      for (long long p : entry.inst.p) total += p;
      CHECK(total > entry.inst.p_max);  // one canister never suffices
    }
  }
}

TEST_CASE("generation is deterministic and files byte-identical") {
  DatasetSpec spec = reference_dataset_spec(21, 1);
  auto first = generate_dataset(spec);
  auto second = generate_dataset(spec);
  REQUIRE(first.size() == second.size());
  for (size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].inst.p == second[i].inst.p);
    CHECK(first[i].witness == second[i].witness);
  }

  auto dir_a = temp_dir("a"), dir_b = temp_dir("b");
  write_dataset(first, spec, dir_a);
  write_dataset(second, spec, dir_b);
  for (const auto& entry : first)
    CHECK(slurp(dir_a / entry.file) == slurp(dir_b / entry.file));
  CHECK(slurp(dir_a / "manifest.json") == slurp(dir_b / "manifest.json"));
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

TEST_CASE("different seeds give different heat outputs") {
  auto a = generate_dataset(reference_dataset_spec(1, 1));
  auto b = generate_dataset(reference_dataset_spec(2, 1));
  bool any_diff = false;
  for (size_t i = 1; i < a.size(); ++i)  // skip the fixed trivial entry
    if (a[i].inst.p != b[i].inst.p) any_diff = true;
  CHECK(any_diff);
}

TEST_CASE("write/load round-trips every field") {
  DatasetSpec spec = reference_dataset_spec(33, 1);
  auto entries = generate_dataset(spec);
  auto dir = temp_dir("roundtrip");
  write_dataset(entries, spec, dir);
  auto loaded = load_dataset(dir);
  REQUIRE(loaded.size() == entries.size());
  for (size_t i = 0; i < entries.size(); ++i) {
    CHECK(loaded[i].inst.name == entries[i].inst.name);
    CHECK(loaded[i].inst.n == entries[i].inst.n);
    CHECK(loaded[i].inst.m == entries[i].inst.m);
    CHECK(loaded[i].inst.p == entries[i].inst.p);
    CHECK(loaded[i].inst.p_max == entries[i].inst.p_max);
    CHECK(loaded[i].inst.n_min == entries[i].inst.n_min);
    CHECK(loaded[i].optimal_m == entries[i].optimal_m);
    CHECK(loaded[i].witness == entries[i].witness);
  }
  fs::remove_all(dir);
}

TEST_CASE("load errors name the offending file") {
  DatasetSpec spec = reference_dataset_spec(44, 1);
  auto entries = generate_dataset(spec);

  SUBCASE("missing file") {
    auto dir = temp_dir("missing");
    write_dataset(entries, spec, dir);
    fs::remove(dir / entries[2].file);
    try {
      load_dataset(dir);
      FAIL("expected an error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find(entries[2].file) != std::string::npos);
    }
    fs::remove_all(dir);
  }

  SUBCASE("tampered p_max violates instance invariants") {
    auto dir = temp_dir("tampered");
    write_dataset(entries, spec, dir);
    std::string body = slurp(dir / entries[1].file);
    auto pos = body.find("\"p_max\"");
    REQUIRE(pos != std::string::npos);
    body.replace(pos, body.find_first_of(",}", pos) - pos, "\"p_max\": 1");
    std::ofstream(dir / entries[1].file) << body;
    CHECK_THROWS_AS(load_dataset(dir), std::runtime_error);
    fs::remove_all(dir);
  }
}
