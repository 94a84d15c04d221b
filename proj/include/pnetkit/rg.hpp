#pragma once

#include <cstdint>
#include <unordered_map>

#include "pnetkit/net.hpp"

namespace pnetkit {

struct ExplorationBudget {
  std::size_t max_states = 50000;
  Tokens max_token_bound = 1000000;  // per-place cutoff
  std::size_t max_sequence_len = 1000000;  // BFS depth cutoff
};

struct MarkingHash {
  std::size_t operator()(const Marking& m) const {
    std::size_t h = 1469598103934665603ull;
    for (Tokens t : m) {
      h ^= static_cast<std::size_t>(t) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Explored rooted labeled graph of markings. Vertex 0 is the root; vertex
// order is deterministic (BFS, transitions in declaration order).
struct ReachabilityGraph {
  std::vector<Marking> states;
  std::vector<std::vector<std::pair<int, int>>> succ;  // per state: (transition, target)
  bool complete = true;
  std::string reason;        // why incomplete
  std::size_t arc_count = 0;
  ExplorationBudget budget_used;
  std::unordered_map<Marking, int, MarkingHash> index;

  int find(const Marking& m) const {
    auto it = index.find(m);
    return it == index.end() ? -1 : it->second;
  }
};

ReachabilityGraph build_rg(const System& sys, const ExplorationBudget& budget = {});

std::vector<int> deadlocks(const Net& net, const ReachabilityGraph& rg);

// BFS path from the root to `target`; empty optional if absent.
std::optional<FiringSequence> rg_path(const ReachabilityGraph& rg, int target);

// Tarjan. Returns per-state component id; ids are in reverse topological
// order of the condensation (successors have smaller ids).
std::vector<int> strongly_connected_components(const ReachabilityGraph& rg, int& num_components);

std::string to_dot(const Net& net, const ReachabilityGraph& rg);

}  // namespace pnetkit
