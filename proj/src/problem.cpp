#include "cf/problem.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cf {

void ProblemInstance::check() const {
  if (n < 1) throw std::invalid_argument("instance '" + name + "': n must be >= 1");
  if (m < 1) throw std::invalid_argument("instance '" + name + "': m must be >= 1");
  if (static_cast<int>(p.size()) != n)
    throw std::invalid_argument("instance '" + name + "': p has " +
                                std::to_string(p.size()) + " entries, expected " +
                                std::to_string(n));
  for (long long pi : p)
    if (pi < 1)
      throw std::invalid_argument("instance '" + name + "': heat outputs must be >= 1");
  long long pmax_elem = *std::max_element(p.begin(), p.end());
  if (p_max < pmax_elem)
    throw std::invalid_argument("instance '" + name +
                                "': p_max smaller than the largest heat output");
  if (n_min < 1 || n_min > n)
    throw std::invalid_argument("instance '" + name + "': n_min must be in [1, n]");
}

Assignment::Assignment(std::vector<int> canister_of)
    : canister_of_(std::move(canister_of)) {
  if (canister_of_.empty())
    throw std::invalid_argument("assignment must place at least one element");
  used_ = canister_of_;
  std::sort(used_.begin(), used_.end());
  used_.erase(std::unique(used_.begin(), used_.end()), used_.end());
}

int objective(const Assignment& asg) {
  return static_cast<int>(asg.used().size());
}

FeasibilityReport validate_assignment(const ProblemInstance& inst,
                                      const Assignment& asg) {
  if (static_cast<int>(asg.canister_of().size()) != inst.n)
    throw std::invalid_argument("assignment length does not match instance n");
  for (int j : asg.canister_of())
    if (j < 0 || j >= inst.m)
      throw std::invalid_argument("canister index out of range");

  std::vector<long long> load(inst.m, 0);
  std::vector<int> count(inst.m, 0);
  for (int i = 0; i < inst.n; ++i) {
    load[asg.canister_of()[i]] += inst.p[i];
    count[asg.canister_of()[i]] += 1;
  }

  FeasibilityReport report;
  for (int j : asg.used()) {
    if (load[j] > inst.p_max)
      report.capacity_violations.push_back({j, load[j], inst.p_max});
    if (count[j] < inst.n_min)
      report.underfill_violations.push_back({j, count[j], inst.n_min});
  }
  report.objective_m = objective(asg);
  report.feasible = report.capacity_violations.empty() &&
                    report.underfill_violations.empty();
  return report;
}

}  // namespace cf
