#pragma once

#include "pnetkit/behavior.hpp"
#include "pnetkit/prset.hpp"

namespace pnetkit {

enum class PrrRule {
  LiveWMG,
  PcmgAcyclic,
  LiveH1sR,
  LiveHfcR,
  AmgConsSiphons,
  RPlusInitDir,
  ExhaustiveEqual,
};

const char* to_string(PrrRule rule);

struct PrrPrecondition {
  std::string name;
  Outcome outcome;
  std::string note;
};

struct PrrCertificate {
  PrrRule rule;
  std::vector<PrrPrecondition> established;  // all Yes
};

// Tries the rules in fixed order (cheapest preconditions first):
// LiveWMG, PcmgAcyclic, LiveH1sR, LiveHfcR, AmgConsSiphons, RPlusInitDir.
Verdict<PrrCertificate> certificate_ladder(const System& sys, const AnalysisBudget& budget = {},
                                           const PcmgSpec* spec = nullptr);

struct PrrVerdict {
  enum class Kind { Equal, NotEqual, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<PrrCertificate> certificate;          // Equal
  std::optional<std::pair<Marking, TVector>> witness; // NotEqual: PR \ R member + its Y
  std::string reason;
};

PrrVerdict prr_decide(const System& sys, const AnalysisBudget& budget = {},
                      const PcmgSpec* spec = nullptr);

struct ReachAnswer {
  Outcome outcome = Outcome::Unknown;
  std::optional<FiringSequence> sequence;  // witness when reachable
  std::optional<TVector> parikh;           // state-equation solution when one exists
  std::string method;
};

// Pipeline: state equation (necessary), then a PR-R certificate when one
// applies, then explicit graph search.
ReachAnswer is_reachable(const System& sys, const Marking& target,
                         const AnalysisBudget& budget = {}, const PcmgSpec* spec = nullptr);

// -- AMG reachability properties ------------------------------------------

struct AmgHomeStateReport {
  FiringSequence to_m_star;       // witness that M* is reachable
  bool resources_marked = false;  // M*(r) > 0 for all r
  Outcome home_state = Outcome::Unknown;
};

// Requires H1-H3 plus C1 (state equation) and C2 (an admissible pairing
// whose paths are unmarked at M*); throws precondition_error otherwise.
Verdict<AmgHomeStateReport> amg_home_state_check(const System& sys, const Marking& m_star,
                                                 const AnalysisBudget& budget = {});

struct AmgInvariantReport {
  // per resource: the conserved quantity M(r) + sum over O-path places
  std::vector<std::pair<int, Tokens>> constants;
};

Verdict<AmgInvariantReport> amg_resource_invariant_check(const System& sys,
                                                         const AnalysisBudget& budget = {});

}  // namespace pnetkit
