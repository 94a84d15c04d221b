#pragma once

#include "pnetkit/linear.hpp"
#include "pnetkit/net.hpp"
#include "pnetkit/verdict.hpp"

namespace pnetkit {

struct FeasibilityBudget {
  Tokens max_component = 64;      // bound on unknown vector components
  long long step_cap = 2000000;   // enumeration/search steps
};

struct Semiflow {
  enum class Kind { T, P };
  Kind kind;
  std::vector<Tokens> vec;
  bool prime = false;
  bool minimal = false;
};

struct SemiflowList {
  std::vector<Semiflow> flows;
  Tokens bound_used = 0;
  bool box_exhausted = false;  // the whole [0,bound]^n box was searched
};

// Defaults for the bounded semiflow search; all fixture semiflows fit.
inline FeasibilityBudget semiflow_budget() { return {8, 5000000}; }

// All minimal semiflows with components <= budget.max_component
// (bounded exhaustive search + exact minimality filtering).
SemiflowList minimal_t_semiflows(const Net& net, const FeasibilityBudget& budget = semiflow_budget());
SemiflowList minimal_p_semiflows(const Net& net, const FeasibilityBudget& budget = semiflow_budget());

struct ConservativenessReport {
  Verdict<PVector> verdict;      // Yes(X) with X >= 1 and X^T I = 0
  bool one_conservative = false; // X = 1 works
};

ConservativenessReport conservativeness(const Net& net);
Verdict<TVector> consistency(const Net& net);  // Yes(Y) with Y >= 1 and I Y = 0

// Yes = structurally bounded; No(Y) returns Y >= 0, Y != 0 with I*Y >= 0, != 0.
Verdict<TVector> structurally_bounded(const Net& net);

// Exact decision of  M = m0 + I*Y,  Y >= 0 integer.
Verdict<TVector> solve_state_equation(const System& sys, const Marking& target,
                                      const FeasibilityBudget& budget = {});

// Same decision with the lattice and recession analysis precomputed once;
// used for potential-reachability enumeration.
class StateEquationSolver {
 public:
  explicit StateEquationSolver(const System& sys, const FeasibilityBudget& budget = {});
  Verdict<TVector> solve(const Marking& target) const;

  bool consistent() const { return consistent_; }
  const std::vector<BigInt>& full_support_semiflow() const { return semiflow_; }

 private:
  Verdict<TVector> solve_on(const std::vector<BigInt>& d, const std::vector<BigInt>& base) const;
  const System& sys_;
  FeasibilityBudget budget_;
  IntMatrix inc_;
  std::vector<int> semiflow_support_;      // S* = union of T-semiflow supports
  std::vector<int> outside_;               // T \ S*
  std::vector<BigInt> semiflow_;           // integer semiflow, full support on S*
  bool consistent_ = false;                // S* = T
  std::optional<PreparedLattice> lattice_; // over the S* columns
};

// True when some transitions admit no nonzero semiflow through them; used by
// analyses that must know whether {Y >= 0 : I Y = d} can be unbounded.
std::vector<int> semiflow_support_union(const IntMatrix& inc);

}  // namespace pnetkit
