#pragma once

#include "pnetkit/algebra.hpp"
#include "pnetkit/net.hpp"
#include "pnetkit/pcmg.hpp"
#include "pnetkit/rg.hpp"
#include "pnetkit/structure.hpp"
#include "pnetkit/verdict.hpp"

namespace pnetkit {

struct AnalysisBudget {
  ExplorationBudget explore;
  FeasibilityBudget feasibility;
  CircuitBudget circuits;
  Tokens pr_bound = 8;             // Y box for non-conservative PR enumeration
  long long pr_marking_cap = 2000000;  // marking-box size cap for conservative PR
  Tokens tsequence_multiples = 4;  // semiflow multiples tried by the DFS
};

// -- generic liveness ----------------------------------------------------

struct DeadTransition {
  int transition;
  Marking from;  // a reachable marking from which `transition` is dead
};

Verdict<DeadTransition> live(const System& sys, const AnalysisBudget& budget = {});

// -- class-specific liveness ---------------------------------------------

struct CfLivenessWitness {
  Marking from;          // reachable marking
  FiringSequence sigma;  // feasible from `from`, P >= 1, I*P >= 0
};

Verdict<CfLivenessWitness> live_cf(const System& sys, const AnalysisBudget& budget = {});

// Witness of non-liveness per the circuit ILP: a (possibly signed) dead
// marking plus the (possibly signed) transition-count vector producing it.
struct CircuitIlpWitness {
  std::vector<Tokens> dead_marking;
  std::vector<Tokens> y;
};

// Exact. `conservative_variant` relaxes Y to signed integers (valid for
// conservative circuits only).
Verdict<CircuitIlpWitness> live_circuit_ilp(const System& sys, bool conservative_variant = false);

struct WmgCircuitWitness {
  std::vector<std::string> circuit_places;
  CircuitIlpWitness ilp;
};

Verdict<WmgCircuitWitness> live_wmg(const System& sys, const AnalysisBudget& budget = {});

Verdict<std::set<int>> live_pcmg_acyclic(const System& sys, const PcmgSpec& spec);

struct SiphonDeadlockWitness {
  std::set<int> siphon;
  Marking at;
};

Verdict<SiphonDeadlockWitness> live_h1s(const System& sys, const AnalysisBudget& budget = {});

// -- property E, deadlock vector ------------------------------------------

Verdict<std::pair<Marking, TVector>> property_E_check(const System& sys,
                                                      const AnalysisBudget& budget = {});

struct DeadlockReport {
  Marking m_d;
  TVector y_d;
  FiringSequence sigma_d;
};

Verdict<DeadlockReport> wmg_deadlock_vector(const System& sys, const AnalysisBudget& budget = {});

// -- boundedness, reversibility -------------------------------------------

struct BoundedReport {
  Outcome outcome = Outcome::Unknown;
  std::optional<Tokens> bound;                    // exact when the RG completed
  std::optional<std::pair<Marking, Marking>> pump;  // M <= M' pump when unbounded
  std::string reason;
};

BoundedReport bounded(const System& sys, const AnalysisBudget& budget = {});

Verdict<Marking> reversible(const System& sys, const AnalysisBudget& budget = {});

// -- T-sequences -----------------------------------------------------------

Verdict<FiringSequence> find_t_sequence(const System& sys, const AnalysisBudget& budget = {});

enum class TSequencePre { LiveH1s, LivePcmgWellStructured };

Verdict<FiringSequence> reversible_by_tsequence(const System& sys, TSequencePre tag,
                                                const AnalysisBudget& budget = {},
                                                const PcmgSpec* spec = nullptr);

// -- properties L, R, B ------------------------------------------------------

struct LrbReport {
  Verdict<DeadTransition> live_fwd, live_rev;
  BoundedReport bounded_fwd, bounded_rev;
  Verdict<Marking> reversible_fwd, reversible_rev;
  Outcome property_L = Outcome::Unknown;
  Outcome property_R = Outcome::Unknown;
  Outcome property_B = Outcome::Unknown;
};

LrbReport lrb_report(const System& sys, const AnalysisBudget& budget = {});

// -- Keller, realization -----------------------------------------------------

// Verifies the confluence instance: tau(sigma - tau) and sigma(tau - sigma)
// both feasible with equal endpoints. Throws precondition_error when the net
// is not choice-free or an input sequence is infeasible.
bool keller_check(const System& sys, const FiringSequence& tau, const FiringSequence& sigma);

Verdict<FiringSequence> realize_tvector_wmg(const System& sys, const TVector& y,
                                            const FiringSequence& sigma_hint);

// Greedy realization without an explicit hint; sound on live WMG<=.
std::optional<FiringSequence> greedy_realize(const Net& net, const Marking& m0, const TVector& y,
                                             long long step_cap = 1000000);

// -- directedness ------------------------------------------------------------

Verdict<std::pair<Marking, Marking>> directedness(const System& sys,
                                                  const AnalysisBudget& budget = {});
Verdict<Marking> initial_directedness(const System& sys, const AnalysisBudget& budget = {});

Verdict<Marking> strongly_live(const System& sys, const AnalysisBudget& budget = {});

}  // namespace pnetkit
