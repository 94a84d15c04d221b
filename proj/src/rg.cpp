#include "pnetkit/rg.hpp"

#include <algorithm>
#include <sstream>

namespace pnetkit {

ReachabilityGraph build_rg(const System& sys, const ExplorationBudget& budget) {
  const Net& net = sys.net;
  ReachabilityGraph rg;
  rg.budget_used = budget;
  rg.states.push_back(sys.m0);
  rg.succ.emplace_back();
  rg.index.emplace(sys.m0, 0);
  std::vector<std::size_t> depth{0};

  for (std::size_t qi = 0; qi < rg.states.size(); ++qi) {
    if (depth[qi] >= budget.max_sequence_len) {
      rg.complete = false;
      rg.reason = "sequence length cap";
      continue;
    }
    Marking cur = rg.states[qi];  // copy: states vector may reallocate
    for (int t = 0; t < net.num_transitions(); ++t) {
      if (!enabled(net, cur, t)) continue;
      Marking next = cur;
      for (const auto& a : net.pre(t)) next[a.node] -= a.weight;
      for (const auto& a : net.post(t)) next[a.node] += a.weight;
      bool over = false;
      for (Tokens v : next)
        if (v > budget.max_token_bound) over = true;
      if (over) {
        rg.complete = false;
        rg.reason = "token bound cap";
        continue;
      }
      auto [it, fresh] = rg.index.emplace(next, static_cast<int>(rg.states.size()));
      if (fresh) {
        if (rg.states.size() >= budget.max_states) {
          rg.index.erase(it);
          rg.complete = false;
          rg.reason = "state cap";
          continue;
        }
        rg.states.push_back(std::move(next));
        rg.succ.emplace_back();
        depth.push_back(depth[qi] + 1);
      }
      rg.succ[qi].emplace_back(t, it->second);
      ++rg.arc_count;
    }
  }
  return rg;
}

std::vector<int> deadlocks(const Net& net, const ReachabilityGraph& rg) {
  std::vector<int> out;
  for (std::size_t i = 0; i < rg.states.size(); ++i)
    if (is_deadlock(net, rg.states[i])) out.push_back(static_cast<int>(i));
  return out;
}

std::optional<FiringSequence> rg_path(const ReachabilityGraph& rg, int target) {
  if (target < 0) return std::nullopt;
  if (target == 0) return FiringSequence{};
  std::vector<int> prev(rg.states.size(), -1), via(rg.states.size(), -1);
  std::vector<int> queue{0};
  prev[0] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (const auto& [t, w] : rg.succ[v]) {
      if (prev[w] >= 0) continue;
      prev[w] = v;
      via[w] = t;
      if (w == target) {
        FiringSequence seq;
        for (int cur = w; cur != 0; cur = prev[cur]) seq.push_back(via[cur]);
        std::reverse(seq.begin(), seq.end());
        return seq;
      }
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

std::vector<int> strongly_connected_components(const ReachabilityGraph& rg, int& num_components) {
  int n = static_cast<int>(rg.states.size());
  std::vector<int> comp(n, -1), low(n), num(n, -1), stk;
  std::vector<bool> on_stack(n, false);
  int counter = 0;
  num_components = 0;
  // iterative Tarjan
  struct Frame {
    int v;
    std::size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (num[root] >= 0) continue;
    std::vector<Frame> frames{{root, 0}};
    while (!frames.empty()) {
      Frame& f = frames.back();
      int v = f.v;
      if (f.edge == 0) {
        num[v] = low[v] = counter++;
        stk.push_back(v);
        on_stack[v] = true;
      }
      if (f.edge < rg.succ[v].size()) {
        int w = rg.succ[v][f.edge].second;
        ++f.edge;
        if (num[w] < 0)
          frames.push_back({w, 0});
        else if (on_stack[w])
          low[v] = std::min(low[v], num[w]);
        continue;
      }
      if (low[v] == num[v]) {
        while (true) {
          int w = stk.back();
          stk.pop_back();
          on_stack[w] = false;
          comp[w] = num_components;
          if (w == v) break;
        }
        ++num_components;
      }
      int child = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[child]);
    }
  }
  return comp;
}

std::string to_dot(const Net& net, const ReachabilityGraph& rg) {
  std::ostringstream os;
  os << "digraph rg {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < rg.states.size(); ++i) {
    os << "  s" << i << " [label=\"";
    for (std::size_t p = 0; p < rg.states[i].size(); ++p)
      os << (p ? "," : "") << rg.states[i][p];
    os << "\"" << (i == 0 ? ",style=filled" : "") << "];\n";
  }
  for (std::size_t i = 0; i < rg.states.size(); ++i)
    for (const auto& [t, j] : rg.succ[i])
      os << "  s" << i << " -> s" << j << " [label=\"" << net.transition_id(t) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace pnetkit
