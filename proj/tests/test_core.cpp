#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "cf/problem.hpp"

using namespace cf;

namespace {

ProblemInstance make(int n, int m, std::vector<long long> p, long long p_max,
                     int n_min = 1) {
  ProblemInstance inst{"test", n, m, std::move(p), p_max, n_min};
  inst.check();
  return inst;
}

}  // namespace

TEST_CASE("single shared canister is feasible") {
  auto inst = make(2, 2, {1, 1}, 3);
  auto report = validate_assignment(inst, Assignment({0, 0}));
  CHECK(report.feasible);
  CHECK(report.objective_m == 1);
}

TEST_CASE("capacity overload is reported per canister") {
  auto inst = make(3, 3, {2, 2, 2}, 3);
  auto report = validate_assignment(inst, Assignment({0, 0, 1}));
  CHECK_FALSE(report.feasible);
  REQUIRE(report.capacity_violations.size() == 1);
  CHECK(report.capacity_violations[0].canister == 0);
  CHECK(report.capacity_violations[0].load == 4);
  CHECK(report.underfill_violations.empty());
}

TEST_CASE("underfilled used canister is reported") {
  auto inst = make(3, 3, {1, 1, 2}, 3, 2);
  auto report = validate_assignment(inst, Assignment({0, 1, 1}));
  CHECK_FALSE(report.feasible);
  REQUIRE(report.underfill_violations.size() == 1);
  CHECK(report.underfill_violations[0].canister == 0);
  CHECK(report.underfill_violations[0].count == 1);
  CHECK(report.capacity_violations.empty());
}

TEST_CASE("objective counts used canisters") {
  CHECK(objective(Assignment({0, 0})) == 1);
  CHECK(objective(Assignment({0, 1, 2})) == 3);
  CHECK(objective(Assignment({2, 2, 0, 0})) == 2);
}

TEST_CASE("input errors") {
  auto inst = make(2, 2, {1, 1}, 3);
  CHECK_THROWS_AS(validate_assignment(inst, Assignment({0})), std::invalid_argument);
  CHECK_THROWS_AS(validate_assignment(inst, Assignment({0, 5})), std::invalid_argument);
  CHECK_THROWS_AS(Assignment(std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("instance invariants are enforced") {
  CHECK_THROWS_AS(make(2, 2, {1, 5}, 3), std::invalid_argument);   // p_max < max p
  CHECK_THROWS_AS(make(2, 2, {1, 0}, 3), std::invalid_argument);   // p_i < 1
  CHECK_THROWS_AS(make(2, 2, {1, 1}, 3, 3), std::invalid_argument);  // n_min > n
}

TEST_CASE("objective invariant under canister relabeling") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + int(rng() % 8);
    int m = 1 + int(rng() % 4);
    std::vector<int> canister_of(n);
    for (int& c : canister_of) c = int(rng() % m);
    std::vector<int> perm(m);
    for (int j = 0; j < m; ++j) perm[j] = j;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> relabeled(n);
    for (int i = 0; i < n; ++i) relabeled[i] = perm[canister_of[i]];
    CHECK(objective(Assignment(canister_of)) == objective(Assignment(relabeled)));
  }
}

TEST_CASE("feasibility is monotone in capacity") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + int(rng() % 6);
    int m = 1 + int(rng() % 3);
    std::vector<long long> p(n);
    for (auto& v : p) v = 1 + rng() % 7;
    long long p_max = *std::max_element(p.begin(), p.end()) + rng() % 10;
    auto inst = make(n, m, p, p_max);
    std::vector<int> canister_of(n);
    for (int& c : canister_of) c = int(rng() % m);
    Assignment asg(canister_of);
    if (validate_assignment(inst, asg).feasible) {
      auto bigger = make(n, m, p, p_max + 1 + rng() % 5);
      CHECK(validate_assignment(bigger, asg).feasible);
    }
  }
}
