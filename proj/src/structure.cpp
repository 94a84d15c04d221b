#include "pnetkit/structure.hpp"

#include <algorithm>
#include <functional>

namespace pnetkit {

namespace {

bool outputs_equal(const Net& net, int p1, int p2) {
  const auto& a = net.place_out(p1);
  const auto& b = net.place_out(p2);
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].node != b[i].node) return false;
  return true;
}

bool outputs_subset(const Net& net, int p1, int p2) {
  for (const auto& x : net.place_out(p1)) {
    bool found = false;
    for (const auto& y : net.place_out(p2))
      if (y.node == x.node) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

bool is_wmg_le(const Net& net) {
  for (int p = 0; p < net.num_places(); ++p)
    if (net.place_out(p).size() > 1 || net.place_in(p).size() > 1) return false;
  return true;
}

}  // namespace

ClassReport classify(const Net& net) {
  ClassReport r;
  r.ordinary = true;
  r.homogeneous = true;
  r.choice_free = true;
  bool all_one_one = true;
  for (int t = 0; t < net.num_transitions(); ++t) {
    for (const auto& a : net.pre(t))
      if (a.weight > 1) r.ordinary = false;
    for (const auto& a : net.post(t))
      if (a.weight > 1) r.ordinary = false;
  }
  for (int p = 0; p < net.num_places(); ++p) {
    const auto& outs = net.place_out(p);
    if (outs.size() > 1) {
      r.choice_free = false;
      r.shared_places.push_back(p);
      for (size_t i = 1; i < outs.size(); ++i)
        if (outs[i].weight != outs[0].weight) r.homogeneous = false;
    }
    if (outs.size() != 1 || net.place_in(p).size() != 1) all_one_one = false;
  }
  r.wmg_le = is_wmg_le(net);
  r.wmg = all_one_one;
  r.marked_graph = r.wmg && r.ordinary;

  r.free_choice = true;
  r.asymmetric_choice = true;
  for (int t = 0; t < net.num_transitions(); ++t) {
    const auto& ins = net.pre(t);
    for (size_t i = 0; i < ins.size(); ++i) {
      for (size_t j = i + 1; j < ins.size(); ++j) {
        int p1 = ins[i].node, p2 = ins[j].node;
        if (!outputs_equal(net, p1, p2)) r.free_choice = false;
        if (!outputs_subset(net, p1, p2) && !outputs_subset(net, p2, p1))
          r.asymmetric_choice = false;
      }
    }
  }
  r.hfc = r.homogeneous && r.free_choice;

  r.state_machine = r.ordinary;
  for (int t = 0; t < net.num_transitions() && r.state_machine; ++t)
    if (net.pre(t).size() != 1 || net.post(t).size() != 1) r.state_machine = false;

  r.k = static_cast<int>(r.shared_places.size());
  r.ks_wmg_le = is_wmg_le(delete_places(net, r.shared_places));
  r.h1s = r.homogeneous && r.k <= 1;
  r.h1s_wmg_le = r.h1s && r.ks_wmg_le;
  return r;
}

bool is_siphon(const Net& net, const std::set<int>& places) {
  // •D ⊆ D•
  std::set<int> outputs;
  for (int p : places)
    for (const auto& a : net.place_out(p)) outputs.insert(a.node);
  for (int p : places)
    for (const auto& a : net.place_in(p))
      if (!outputs.count(a.node)) return false;
  return true;
}

bool is_trap(const Net& net, const std::set<int>& places) {
  // Q• ⊆ •Q
  std::set<int> inputs;
  for (int p : places)
    for (const auto& a : net.place_in(p)) inputs.insert(a.node);
  for (int p : places)
    for (const auto& a : net.place_out(p))
      if (!inputs.count(a.node)) return false;
  return true;
}

std::set<int> max_siphon_in(const Net& net, const std::set<int>& q) {
  std::set<int> d = q;
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<int> outputs;
    for (int p : d)
      for (const auto& a : net.place_out(p)) outputs.insert(a.node);
    for (auto it = d.begin(); it != d.end();) {
      bool bad = false;
      for (const auto& a : net.place_in(*it))
        if (!outputs.count(a.node)) {
          bad = true;
          break;
        }
      if (bad) {
        it = d.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return d;
}

std::set<int> max_trap_in(const Net& net, const std::set<int>& q) {
  std::set<int> d = q;
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<int> inputs;
    for (int p : d)
      for (const auto& a : net.place_in(p)) inputs.insert(a.node);
    for (auto it = d.begin(); it != d.end();) {
      bool bad = false;
      for (const auto& a : net.place_out(*it))
        if (!inputs.count(a.node)) {
          bad = true;
          break;
        }
      if (bad) {
        it = d.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return d;
}

namespace {

SiphonList minimal_sets(const Net& net, bool siphons, const SiphonBudget& budget) {
  SiphonList list;
  int n = net.num_places();
  if (n > budget.max_places) {
    list.complete = false;
    return list;
  }
  std::vector<std::set<int>> found;
  for (unsigned long long mask = 1; mask < (1ull << n); ++mask) {
    std::set<int> s;
    for (int p = 0; p < n; ++p)
      if (mask & (1ull << p)) s.insert(p);
    bool ok = siphons ? is_siphon(net, s) : is_trap(net, s);
    if (ok) found.push_back(std::move(s));
  }
  // subset-minimality
  for (const auto& s : found) {
    bool minimal = true;
    for (const auto& other : found) {
      if (other.size() >= s.size() || other.empty()) continue;
      if (std::includes(s.begin(), s.end(), other.begin(), other.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal)
      list.items.push_back({siphons ? SiphonOrTrap::Kind::Siphon : SiphonOrTrap::Kind::Trap, s,
                            true});
  }
  return list;
}

}  // namespace

SiphonList minimal_siphons(const Net& net, const SiphonBudget& budget) {
  return minimal_sets(net, true, budget);
}

SiphonList minimal_traps(const Net& net, const SiphonBudget& budget) {
  return minimal_sets(net, false, budget);
}

// -- elementary circuits (Johnson) ---------------------------------------

CircuitList elementary_circuits(const Net& net, const CircuitBudget& budget) {
  // nodes: 0..P-1 places, P..P+T-1 transitions
  int np = net.num_places(), n = np + net.num_transitions();
  std::vector<std::vector<int>> adj(n);
  for (int t = 0; t < net.num_transitions(); ++t) {
    for (const auto& a : net.pre(t)) adj[a.node].push_back(np + t);
    for (const auto& a : net.post(t)) adj[np + t].push_back(a.node);
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());

  CircuitList list;
  std::vector<bool> blocked(n, false);
  std::vector<std::set<int>> block_map(n);
  std::vector<int> stack;
  long long count = 0;

  std::function<void(int)> unblock = [&](int u) {
    blocked[u] = false;
    for (int w : block_map[u])
      if (blocked[w]) unblock(w);
    block_map[u].clear();
  };

  int start = 0;
  std::function<bool(int)> circuit = [&](int v) -> bool {
    bool found = false;
    stack.push_back(v);
    blocked[v] = true;
    for (int w : adj[v]) {
      if (w < start) continue;
      if (w == start) {
        if (count++ >= budget.max_circuits) {
          list.complete = false;
        } else {
          std::vector<std::string> c;
          for (int u : stack)
            c.push_back(u < np ? net.place_id(u) : net.transition_id(u - np));
          list.circuits.push_back(std::move(c));
        }
        found = true;
      } else if (!blocked[w]) {
        if (circuit(w)) found = true;
      }
      if (!list.complete) break;
    }
    if (found) {
      unblock(v);
    } else {
      for (int w : adj[v])
        if (w >= start) block_map[w].insert(v);
    }
    stack.pop_back();
    return found;
  };

  for (start = 0; start < n && list.complete; ++start) {
    std::fill(blocked.begin(), blocked.end(), false);
    for (auto& s : block_map) s.clear();
    circuit(start);
  }
  return list;
}

// -- AMG ------------------------------------------------------------------

namespace {

// Elementary path a -> b in the underlying MG g, alternating transitions and
// places. When `avoid_marked`, marked places may not occur on the path.
std::optional<std::vector<std::string>> find_path(const Net& g, const Marking& gm, int a, int b,
                                                  bool avoid_marked) {
  // nodes are transitions of g; edges t -> t' through a place
  int nt = g.num_transitions();
  std::vector<int> prev(nt, -2), via(nt, -1);
  std::vector<int> queue{a};
  prev[a] = -1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int t = queue[qi];
    if (t == b && qi > 0) break;
    for (const auto& ap : g.post(t)) {
      int p = ap.node;
      if (avoid_marked && gm[p] > 0) continue;
      for (const auto& at : g.place_out(p)) {
        int t2 = at.node;
        if (prev[t2] != -2) continue;
        prev[t2] = t;
        via[t2] = p;
        queue.push_back(t2);
      }
    }
  }
  // b must be reached through at least one arc (a != b here)
  if (prev[b] == -2 || (prev[b] == -1 && via[b] < 0)) return std::nullopt;
  std::vector<std::string> path;
  int cur = b;
  while (cur != a || path.empty()) {
    path.push_back(g.transition_id(cur));
    path.push_back(g.place_id(via[cur]));
    cur = prev[cur];
    if (cur < 0) break;
  }
  path.push_back(g.transition_id(a));
  std::reverse(path.begin(), path.end());
  return path;
}

// Perfect matching between outs and ins where admissible(i,j). Augmenting paths.
std::optional<std::vector<int>> perfect_matching(const std::vector<std::vector<bool>>& adm) {
  int n = static_cast<int>(adm.size());
  std::vector<int> match_right(n, -1), match_left(n, -1);
  std::function<bool(int, std::vector<bool>&)> try_kuhn = [&](int u, std::vector<bool>& used) {
    for (int v = 0; v < n; ++v) {
      if (!adm[u][v] || used[v]) continue;
      used[v] = true;
      if (match_right[v] < 0 || try_kuhn(match_right[v], used)) {
        match_right[v] = u;
        match_left[u] = v;
        return true;
      }
    }
    return false;
  };
  for (int u = 0; u < n; ++u) {
    std::vector<bool> used(n, false);
    if (!try_kuhn(u, used)) return std::nullopt;
  }
  return match_left;
}

Verdict<AmgWitness> amg_impl(const System& sys, const CircuitBudget& budget,
                             const Marking& path_eval, bool unmarked_paths, bool check_h3,
                             bool resources_marked) {
  const Net& net = sys.net;
  ClassReport cls = classify(net);
  if (!cls.ordinary) return Verdict<AmgWitness>::no_because("not ordinary");

  AmgWitness w;
  w.resources = cls.shared_places;

  // non-resource places must have exactly one input and one output for
  // the deletion to be a marked graph (H1)
  Net g = delete_places(net, w.resources);
  for (int p = 0; p < g.num_places(); ++p)
    if (g.place_in(p).size() != 1 || g.place_out(p).size() != 1)
      return Verdict<AmgWitness>::no_because("H1: place " + g.place_id(p) +
                                     " breaks the marked-graph shape");
  Marking gm0(g.num_places(), 0), geval(g.num_places(), 0);
  for (int p = 0; p < g.num_places(); ++p) {
    int orig = net.place_index(g.place_id(p));
    gm0[p] = sys.m0[orig];
    geval[p] = path_eval[orig];
  }

  // H3: each elementary circuit of G marked by M0
  if (check_h3) {
    CircuitList circ = elementary_circuits(g, budget);
    if (!circ.complete) return Verdict<AmgWitness>::unknown("H3: circuit enumeration cap hit");
    for (const auto& c : circ.circuits) {
      bool marked = false;
      for (const auto& id : c)
        if (auto p = g.find_place(id); p && gm0[*p] > 0) marked = true;
      if (!marked) {
        std::string s;
        for (const auto& id : c) s += (s.empty() ? "" : " ") + id;
        return Verdict<AmgWitness>::no_because("H3: unmarked circuit " + s);
      }
    }
  }

  if (resources_marked)
    for (int r : w.resources)
      if (sys.m0[r] <= 0)
        return Verdict<AmgWitness>::no_because("H4: resource " + net.place_id(r) + " unmarked");

  // per-resource perfect matching between r• and •r
  for (int r : w.resources) {
    const auto& outs_arcs = net.place_out(r);
    const auto& ins_arcs = net.place_in(r);
    if (outs_arcs.size() != ins_arcs.size() || outs_arcs.size() < 2)
      return Verdict<AmgWitness>::no_because("H2: resource " + net.place_id(r) +
                                     " has unbalanced or trivial degree");
    int k = static_cast<int>(outs_arcs.size());
    std::vector<int> outs, ins;
    for (const auto& a : outs_arcs) outs.push_back(a.node);
    for (const auto& a : ins_arcs) ins.push_back(a.node);
    std::vector<std::vector<bool>> adm(k, std::vector<bool>(k, false));
    std::vector<std::vector<std::optional<std::vector<std::string>>>> paths(
        k, std::vector<std::optional<std::vector<std::string>>>(k));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        if (outs[i] == ins[j]) {
          adm[i][j] = true;
          continue;
        }
        int ga = g.transition_index(net.transition_id(outs[i]));
        int gb = g.transition_index(net.transition_id(ins[j]));
        auto path = find_path(g, geval, ga, gb, unmarked_paths);
        if (path) {
          adm[i][j] = true;
          paths[i][j] = std::move(path);
        }
      }
    }
    auto match = perfect_matching(adm);
    if (!match)
      return Verdict<AmgWitness>::no_because(std::string(unmarked_paths ? "H2/H4" : "H2") +
                                     ": no admissible pairing for resource " + net.place_id(r));
    AmgWitness::Pairing pairing;
    pairing.resource = r;
    for (int i = 0; i < k; ++i) {
      pairing.pairs.emplace_back(outs[i], ins[(*match)[i]]);
      pairing.paths.push_back(paths[i][(*match)[i]].value_or(std::vector<std::string>{}));
    }
    w.pairings.push_back(std::move(pairing));
  }

  w.underlying_mg = std::move(g);
  return Verdict<AmgWitness>::yes(std::move(w));
}

}  // namespace

Verdict<AmgWitness> check_amg(const System& sys, const CircuitBudget& budget) {
  return amg_impl(sys, budget, sys.m0, true, true, true);
}

Verdict<AmgWitness> check_amg_h123(const System& sys, const CircuitBudget& budget) {
  return amg_impl(sys, budget, sys.m0, false, true, false);
}

std::optional<AmgWitness> amg_c2_pairing(const System& sys, const Marking& eval_marking,
                                         const CircuitBudget& budget) {
  auto v = amg_impl(sys, budget, eval_marking, true, false, false);
  if (v.is_yes()) return *v.witness;
  return std::nullopt;
}

}  // namespace pnetkit
