#pragma once

#include <set>

#include "pnetkit/algebra.hpp"
#include "pnetkit/net.hpp"
#include "pnetkit/verdict.hpp"

namespace pnetkit {

struct ClassReport {
  bool ordinary = false;
  bool homogeneous = false;
  bool choice_free = false;
  bool wmg_le = false;        // |p•| <= 1 and |•p| <= 1
  bool wmg = false;           // |p•| == 1 and |•p| == 1
  bool marked_graph = false;  // wmg + ordinary
  bool free_choice = false;
  bool asymmetric_choice = false;
  bool state_machine = false;
  bool hfc = false;  // homogeneous + free choice
  std::vector<int> shared_places;
  int k = 0;                 // |shared places|
  bool ks_wmg_le = false;    // deleting the shared places yields a WMG<=
  bool h1s = false;          // homogeneous and k <= 1
  bool h1s_wmg_le = false;   // h1s and ks_wmg_le
};

ClassReport classify(const Net& net);

// -- siphons and traps --------------------------------------------------

bool is_siphon(const Net& net, const std::set<int>& places);
bool is_trap(const Net& net, const std::set<int>& places);

// Greatest siphon (trap) contained in Q, by fixpoint removal. Polynomial.
std::set<int> max_siphon_in(const Net& net, const std::set<int>& q);
std::set<int> max_trap_in(const Net& net, const std::set<int>& q);

struct SiphonOrTrap {
  enum class Kind { Siphon, Trap };
  Kind kind;
  std::set<int> places;
  bool minimal = true;
};

struct SiphonList {
  std::vector<SiphonOrTrap> items;
  bool complete = true;  // false when the subset cap was hit
};

struct SiphonBudget {
  int max_places = 16;  // exhaustive subset search cap
};

// All minimal non-empty siphons (traps).
SiphonList minimal_siphons(const Net& net, const SiphonBudget& budget = {});
SiphonList minimal_traps(const Net& net, const SiphonBudget& budget = {});

// -- augmented marked graphs --------------------------------------------

struct AmgWitness {
  std::vector<int> resources;  // R = shared places
  struct Pairing {
    int resource;
    // matched (a, b) with a in r•, b in •r; path = alternating node ids
    // t p t p ... t in the underlying MG (empty when a == b)
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::vector<std::string>> paths;
  };
  std::vector<Pairing> pairings;
  Net underlying_mg;  // G = net minus R
};

struct CircuitBudget {
  long long max_circuits = 100000;
};

// Full H1-H4 check; R is fixed as the set of shared places.
Verdict<AmgWitness> check_amg(const System& sys, const CircuitBudget& budget = {});
// H1-H3 only (paths in H2 may be marked); used by the home-state checks.
Verdict<AmgWitness> check_amg_h123(const System& sys, const CircuitBudget& budget = {});
// Pairing whose connecting paths are unmarked at `eval_marking` (condition C2
// of the home-state checks). Requires the H1 shape; skips H3/H4.
std::optional<AmgWitness> amg_c2_pairing(const System& sys, const Marking& eval_marking,
                                         const CircuitBudget& budget = {});

// Elementary circuits of the net's directed graph, as node-id sequences
// (place and transition ids, cycle not repeated). Capped.
struct CircuitList {
  std::vector<std::vector<std::string>> circuits;
  bool complete = true;
};
CircuitList elementary_circuits(const Net& net, const CircuitBudget& budget = {});

}  // namespace pnetkit
