#pragma once

#include "pnetkit/algebra.hpp"
#include "pnetkit/net.hpp"

namespace pnetkit {

// Potentially reachable markings M = m0 + I*Y, Y >= 0.
// complete=true only for conservative nets, where the weighted-token
// invariant confines PR to a finite marking box that is fully decided.
struct PrSet {
  std::vector<Marking> markings;   // deterministic order
  std::vector<TVector> generators; // one witnessing Y per marking
  bool complete = false;
  Tokens bound_used = 0;
  std::string note;

  bool contains(const Marking& m) const {
    for (const auto& x : markings)
      if (x == m) return true;
    return false;
  }
};

PrSet enumerate_pr(const System& sys, Tokens y_bound = 8, long long marking_cap = 2000000);

}  // namespace pnetkit
