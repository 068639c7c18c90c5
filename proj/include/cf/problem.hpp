#pragma once

#include <string>
#include <vector>

namespace cf {

/// One canister-filling task: n fuel elements with integer heat outputs p,
/// m available canisters of capacity p_max, and a minimum fill n_min per
/// used canister. Heat outputs are opaque integers.
struct ProblemInstance {
  std::string name;
  int n = 0;
  int m = 0;
  std::vector<long long> p;
  long long p_max = 0;
  int n_min = 1;

  /// Throws std::invalid_argument if any invariant is violated.
  void check() const;
};

/// Element -> canister map with the used-canister set derived at
/// construction. Immutable; every element lives in exactly one canister
/// by representation.
class Assignment {
 public:
  explicit Assignment(std::vector<int> canister_of);

  const std::vector<int>& canister_of() const { return canister_of_; }
  const std::vector<int>& used() const { return used_; }

 private:
  std::vector<int> canister_of_;
  std::vector<int> used_;  // sorted, unique
};

/// Number of used canisters M.
int objective(const Assignment& asg);

struct CapacityViolation {
  int canister;
  long long load;
  long long p_max;
};

struct UnderfillViolation {
  int canister;
  int count;
  int n_min;
};

struct FeasibilityReport {
  bool feasible = false;
  std::vector<CapacityViolation> capacity_violations;
  std::vector<UnderfillViolation> underfill_violations;
  int objective_m = 0;
};

/// Checks the capacity and minimum-fill constraints canister by canister.
/// Throws std::invalid_argument on length mismatch or out-of-range index.
FeasibilityReport validate_assignment(const ProblemInstance& inst,
                                      const Assignment& asg);

}  // namespace cf
