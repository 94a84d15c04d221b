#include "pnetkit/behavior.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_set>

#include "pnetkit/prset.hpp"

namespace pnetkit {

namespace {

std::vector<bool> bottom_components(const ReachabilityGraph& rg, const std::vector<int>& comp,
                                    int ncomp) {
  std::vector<bool> bottom(ncomp, true);
  for (std::size_t u = 0; u < rg.states.size(); ++u)
    for (const auto& [t, v] : rg.succ[u])
      if (comp[u] != comp[v]) bottom[comp[u]] = false;
  return bottom;
}

// Closed walk inside one SCC, from `start`, firing every transition label
// present in that SCC at least once. Assumes start belongs to the SCC.
FiringSequence closed_walk_all_labels(const Net& net, const ReachabilityGraph& rg,
                                      const std::vector<int>& comp, int start) {
  int c = comp[start];
  auto bfs_to = [&](int from, const std::function<bool(int)>& goal) {
    std::vector<int> prev(rg.states.size(), -2), via(rg.states.size(), -1);
    std::vector<int> queue{from};
    prev[from] = -1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      if (goal(u)) {
        FiringSequence seq;
        for (int cur = u; prev[cur] != -1; cur = prev[cur]) seq.push_back(via[cur]);
        std::reverse(seq.begin(), seq.end());
        return std::make_pair(seq, u);
      }
      for (const auto& [t, v] : rg.succ[u]) {
        if (comp[v] != c || prev[v] != -2) continue;
        prev[v] = u;
        via[v] = t;
        queue.push_back(v);
      }
    }
    throw pnet_error("internal: scc walk failed");
  };

  FiringSequence walk;
  int cur = start;
  for (int t = 0; t < net.num_transitions(); ++t) {
    bool in_comp = false;
    for (std::size_t u = 0; u < rg.states.size() && !in_comp; ++u)
      if (comp[u] == c)
        for (const auto& [lt, v] : rg.succ[u])
          if (lt == t && comp[v] == c) in_comp = true;
    if (!in_comp) continue;  // label absent from this SCC
    auto [seq, u] = bfs_to(cur, [&](int s) {
      if (comp[s] != c) return false;
      for (const auto& [lt, v] : rg.succ[s])
        if (lt == t && comp[v] == c) return true;
      return false;
    });
    walk.insert(walk.end(), seq.begin(), seq.end());
    walk.push_back(t);
    for (const auto& [lt, v] : rg.succ[u])
      if (lt == t && comp[v] == c) {
        cur = v;
        break;
      }
  }
  auto [back, _] = bfs_to(cur, [&](int s) { return s == start; });
  walk.insert(walk.end(), back.begin(), back.end());
  return walk;
}

}  // namespace

// -- generic liveness ----------------------------------------------------

Verdict<DeadTransition> live(const System& sys, const AnalysisBudget& budget) {
  const Net& net = sys.net;
  if (net.num_transitions() == 0) return Verdict<DeadTransition>::yes();
  ReachabilityGraph rg = build_rg(sys, budget.explore);
  if (!rg.complete) {
    // a reachable deadlock kills every transition even on a partial graph
    for (const auto& m : rg.states)
      if (is_deadlock(net, m))
        return Verdict<DeadTransition>::no({0, m}, "reachable deadlock");
    return Verdict<DeadTransition>::unknown("reachability graph incomplete: " + rg.reason);
  }
  int ncomp = 0;
  std::vector<int> comp = strongly_connected_components(rg, ncomp);
  std::vector<bool> bottom = bottom_components(rg, comp, ncomp);
  std::vector<std::vector<bool>> fires(ncomp, std::vector<bool>(net.num_transitions(), false));
  for (std::size_t u = 0; u < rg.states.size(); ++u)
    for (const auto& [t, v] : rg.succ[u]) fires[comp[u]][t] = true;
  for (int c = 0; c < ncomp; ++c) {
    if (!bottom[c]) continue;
    for (int t = 0; t < net.num_transitions(); ++t) {
      if (fires[c][t]) continue;
      for (std::size_t u = 0; u < rg.states.size(); ++u)
        if (comp[u] == c)
          return Verdict<DeadTransition>::no({t, rg.states[u]},
                                             "dead in a bottom strongly connected component");
    }
  }
  return Verdict<DeadTransition>::yes();
}

// -- greedy realization ---------------------------------------------------

std::optional<FiringSequence> greedy_realize(const Net& net, const Marking& m0, const TVector& y,
                                             long long step_cap) {
  FiringSequence seq;
  Marking cur = m0;
  TVector remaining = y;
  Tokens total = std::accumulate(y.begin(), y.end(), Tokens{0});
  if (total > step_cap) return std::nullopt;
  while (total > 0) {
    bool fired = false;
    for (int t = 0; t < net.num_transitions(); ++t) {
      if (remaining[t] <= 0 || !enabled(net, cur, t)) continue;
      for (const auto& a : net.pre(t)) cur[a.node] -= a.weight;
      for (const auto& a : net.post(t)) cur[a.node] += a.weight;
      seq.push_back(t);
      --remaining[t];
      --total;
      fired = true;
      break;
    }
    if (!fired) return std::nullopt;
  }
  return seq;
}

// -- choice-free liveness --------------------------------------------------

Verdict<CfLivenessWitness> live_cf(const System& sys, const AnalysisBudget& budget) {
  const Net& net = sys.net;
  if (!classify(net).choice_free) throw precondition_error("live_cf: net is not choice-free");
  if (net.num_transitions() == 0) return Verdict<CfLivenessWitness>::yes();

  // necessary condition: some Y >= 1 with I*Y >= 0 (rational = integer here)
  IntMatrix inc = incidence(net);
  LinSystem ls;
  ls.nvars = inc.cols;
  for (int r = 0; r < inc.rows; ++r) {
    LinConstraint c;
    c.coeff.resize(inc.cols);
    for (int j = 0; j < inc.cols; ++j) c.coeff[j] = BigRat(inc.at(r, j));
    c.rel = Rel::Ge;
    c.rhs = 0;
    ls.cons.push_back(std::move(c));
  }
  for (int j = 0; j < inc.cols; ++j) ls.add_lower(j, 1);
  FourierMotzkin fm(ls);
  if (!fm.feasible())
    return Verdict<CfLivenessWitness>::no_because("no T-vector Y >= 1 with I*Y >= 0 exists");
  TVector target = to_tokens(scale_to_integers(*fm.sample()));

  ReachabilityGraph rg = build_rg(sys, budget.explore);
  // persistence makes the greedy complete per start marking and target
  for (const auto& m : rg.states)
    if (auto seq = greedy_realize(net, m, target, budget.feasibility.step_cap))
      return Verdict<CfLivenessWitness>::yes({m, *seq});

  if (!rg.complete)
    return Verdict<CfLivenessWitness>::unknown("reachability graph incomplete: " + rg.reason);

  // exact fallback on the complete graph
  Verdict<DeadTransition> generic = live(sys, budget);
  if (generic.is_no())
    return Verdict<CfLivenessWitness>::no_because("transition " +
                                          net.transition_id(generic.witness->transition) +
                                          " dead at " + format_marking(net, generic.witness->from));
  if (generic.is_unknown()) return Verdict<CfLivenessWitness>::unknown(generic.reason);
  int ncomp = 0;
  std::vector<int> comp = strongly_connected_components(rg, ncomp);
  std::vector<bool> bottom = bottom_components(rg, comp, ncomp);
  for (std::size_t u = 0; u < rg.states.size(); ++u) {
    if (!bottom[comp[u]]) continue;
    FiringSequence walk = closed_walk_all_labels(net, rg, comp, static_cast<int>(u));
    return Verdict<CfLivenessWitness>::yes({rg.states[u], walk});
  }
  return Verdict<CfLivenessWitness>::unknown("no bottom component found");
}

// -- circuit liveness --------------------------------------------------------

namespace {

struct CircuitShape {
  // places and transitions in cycle order: p[i] -> t[i] -> p[i+1 mod n]
  std::vector<int> places, transitions;
  std::vector<Tokens> consume;  // a_i = W(p_i, t_i)
  std::vector<Tokens> produce;  // b_i = W(t_{i-1}, p_i)
};

CircuitShape circuit_shape(const Net& net) {
  int n = net.num_places();
  if (n == 0 || net.num_transitions() != n)
    throw precondition_error("live_circuit_ilp: not a circuit (|P| != |T| or empty)");
  for (int p = 0; p < n; ++p)
    if (net.place_in(p).size() != 1 || net.place_out(p).size() != 1)
      throw precondition_error("live_circuit_ilp: place " + net.place_id(p) + " not 1-in/1-out");
  for (int t = 0; t < n; ++t)
    if (net.pre(t).size() != 1 || net.post(t).size() != 1)
      throw precondition_error("live_circuit_ilp: transition " + net.transition_id(t) +
                               " not 1-in/1-out");
  CircuitShape s;
  int p = 0;
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    if (seen[p]) throw precondition_error("live_circuit_ilp: not a single cycle");
    seen[p] = true;
    int t = net.place_out(p)[0].node;
    s.places.push_back(p);
    s.transitions.push_back(t);
    s.consume.push_back(net.place_out(p)[0].weight);
    p = net.post(t)[0].node;
  }
  if (p != s.places[0]) throw precondition_error("live_circuit_ilp: not a single cycle");
  s.produce.resize(n);
  for (int i = 0; i < n; ++i) {
    // producer of p_i is t_{i-1}
    int ti = s.transitions[(i + n - 1) % n];
    s.produce[i] = net.weight_tp(ti, s.places[i]);
  }
  return s;
}

// minimal T-semiflow of a consistent circuit, indexed like s.transitions
std::vector<BigInt> circuit_semiflow(const CircuitShape& s) {
  int n = static_cast<int>(s.places.size());
  std::vector<BigRat> y(n);
  y[0] = 1;
  for (int i = 1; i < n; ++i) {
    // place p_i: b_i * Y_{i-1} = a_i * Y_i
    y[i] = y[i - 1] * BigRat(s.produce[i]) / BigRat(s.consume[i]);
  }
  return scale_to_integers(y);
}

}  // namespace

Verdict<CircuitIlpWitness> live_circuit_ilp(const System& sys, bool conservative_variant) {
  const Net& net = sys.net;
  CircuitShape s = circuit_shape(net);
  int n = static_cast<int>(s.places.size());
  BigInt prod_a = 1, prod_b = 1;
  for (int i = 0; i < n; ++i) {
    prod_a *= s.consume[i];
    prod_b *= s.produce[i];
  }

  auto make_witness = [&](const std::vector<BigInt>& y_cycle) {
    // y_cycle indexed by cycle position; convert to declaration order
    CircuitIlpWitness w;
    w.y.assign(n, 0);
    for (int i = 0; i < n; ++i) w.y[s.transitions[i]] = static_cast<Tokens>(y_cycle[i]);
    w.dead_marking.assign(n, 0);
    IntMatrix inc = incidence(net);
    for (int p = 0; p < n; ++p) {
      BigInt v = sys.m0[p];
      for (int t = 0; t < n; ++t) v += inc.at(p, t) * w.y[t];
      w.dead_marking[p] = static_cast<Tokens>(v);
    }
    return w;
  };

  if (conservative_variant && prod_a != prod_b)
    throw precondition_error("conservative circuit variant requires a conservative circuit");

  if (!conservative_variant && prod_a > prod_b) {
    // consumption dominates: every maximal sequence is finite, so the
    // unique deadlock is reachable; greedy produces the witness
    Marking cur = sys.m0;
    std::vector<BigInt> y(n, 0);
    long long guard = 10000000;
    while (guard-- > 0) {
      bool fired = false;
      for (int i = 0; i < n; ++i) {
        int t = s.transitions[i];
        if (enabled(net, cur, t)) {
          cur = fire(net, cur, t);
          ++y[i];
          fired = true;
          break;
        }
      }
      if (!fired) break;
    }
    if (guard <= 0) throw pnet_error("internal: lossy circuit did not terminate");
    return Verdict<CircuitIlpWitness>::no(make_witness(y), "greedy run reaches a deadlock");
  }

  if (!conservative_variant && prod_a < prod_b) {
    // production dominates: the feasible region has a trivial recession
    // cone, so bounded branch and bound is complete
    IntFeasibilityProblem prob;
    prob.vars.resize(n);
    for (auto& v : prob.vars) v.lower = 0;
    prob.cons.nvars = n;
    IntMatrix inc = incidence(net);
    for (int p = 0; p < n; ++p) {
      LinConstraint c;
      c.coeff.resize(n);
      // variables in cycle order
      for (int i = 0; i < n; ++i) c.coeff[i] = BigRat(inc.at(p, s.transitions[i]));
      c.rel = Rel::Le;
      c.rhs = BigRat(net.place_out(p)[0].weight - 1 - sys.m0[p]);
      prob.cons.cons.push_back(std::move(c));
    }
    auto r = integer_feasible(prob);
    if (r.is_yes()) return Verdict<CircuitIlpWitness>::no(make_witness(*r.witness));
    if (r.is_no()) return Verdict<CircuitIlpWitness>::yes();
    throw pnet_error("internal: bounded circuit search gave up: " + r.reason);
  }

  // consistent circuit (prod_a == prod_b)
  std::vector<BigInt> sf = circuit_semiflow(s);

  // DEAD constraint per place i with y in cycle coordinates:
  //   m0_i + b_i*y_{i-1} - a_i*y_i <= a_i - 1
  auto dead_ok = [&](const std::vector<BigInt>& y) {
    for (int i = 0; i < n; ++i) {
      BigInt md = BigInt(sys.m0[s.places[i]]) + BigInt(s.produce[i]) * y[(i + n - 1) % n] -
                  BigInt(s.consume[i]) * y[i];
      if (md > s.consume[i] - 1) return false;
    }
    return true;
  };

  if (!conservative_variant) {
    // any solution reduces modulo sf to one where some coordinate i* is
    // below sf[i*]; chain the per-place bounds backwards from i*
    long long guard = 20000000;
    for (int istar = 0; istar < n; ++istar) {
      std::vector<BigInt> y(n);
      // assign y_{istar}, then y_{istar-1}, ..., wrapping around
      std::function<bool(int)> assign = [&](int steps_back) -> bool {
        if (--guard <= 0) throw pnet_error("internal: circuit quotient search too large");
        if (steps_back == n) return dead_ok(y);
        int i = (istar - steps_back + n * 2) % n;  // variable being bounded
        BigInt hi;
        if (steps_back == 0) {
          hi = sf[istar] - 1;  // normalization at i*
        } else {
          // place i+1: m0 + b*y_i - a*y_{i+1} <= a - 1
          //   =>  y_i <= (a - 1 - m0 + a*y_{i+1}) / b
          int at = (i + 1) % n;
          BigInt a = s.consume[at], b = s.produce[at];
          BigInt num = a - 1 - sys.m0[s.places[at]] + a * y[at];
          hi = num >= 0 ? BigInt(num / b) : BigInt(-((-num + b - 1) / b));
        }
        for (BigInt v = 0; v <= hi; ++v) {
          y[i] = v;
          if (assign(steps_back + 1)) return true;
        }
        y[i] = 0;
        return false;
      };
      if (assign(0)) return Verdict<CircuitIlpWitness>::no(make_witness(y));
    }
    return Verdict<CircuitIlpWitness>::yes();
  }

  // conservative variant: Y ranges over signed integers; normalize y_0 into
  // [0, sf_0) and chain through the dead-marking box given by the invariant
  // conservativeness weights in cycle order: column t_{i-1} of the
  // incidence matrix forces X_i = X_{i-1} * a_{i-1} / b_i
  std::vector<BigRat> xw(n);
  xw[0] = 1;
  for (int i = 1; i < n; ++i) xw[i] = xw[i - 1] * BigRat(s.consume[i - 1]) / BigRat(s.produce[i]);
  std::vector<BigInt> xi = scale_to_integers(xw);
  BigInt invariant = 0;
  for (int i = 0; i < n; ++i) invariant += xi[i] * sys.m0[s.places[i]];
  std::vector<BigInt> lb(n), ub(n);
  for (int i = 0; i < n; ++i) ub[i] = s.consume[i] - 1;
  for (int i = 0; i < n; ++i) {
    BigInt rest = invariant;
    for (int j = 0; j < n; ++j)
      if (j != i) rest -= xi[j] * ub[j];
    // ceiling division for possibly negative bound
    lb[i] = rest >= 0 ? BigInt((rest + xi[i] - 1) / xi[i]) : BigInt(-((-rest) / xi[i]));
  }
  std::vector<BigInt> y(n);
  std::function<bool(int)> walk = [&](int i) -> bool {
    if (i == n) {
      // wrap: check place 0's dead-marking value
      BigInt md0 = BigInt(sys.m0[s.places[0]]) + BigInt(s.produce[0]) * y[n - 1] -
                   BigInt(s.consume[0]) * y[0];
      return md0 <= s.consume[0] - 1;
    }
    // choose md[i] in its box; derive y_i from y_{i-1}
    BigInt a = s.consume[i], b = s.produce[i];
    for (BigInt m = lb[i]; m <= ub[i]; ++m) {
      BigInt num = BigInt(sys.m0[s.places[i]]) + b * y[i - 1] - m;
      if (num % a != 0) continue;
      y[i] = num / a;
      if (walk(i + 1)) return true;
    }
    return false;
  };
  for (BigInt v0 = 0; v0 < sf[0]; ++v0) {
    y[0] = v0;
    if (walk(1)) return Verdict<CircuitIlpWitness>::no(make_witness(y));
  }
  return Verdict<CircuitIlpWitness>::yes();
}

// -- WMG liveness -------------------------------------------------------------

Verdict<WmgCircuitWitness> live_wmg(const System& sys, const AnalysisBudget& budget) {
  const Net& net = sys.net;
  if (!classify(net).wmg_le) throw precondition_error("live_wmg: not a WMG<=");
  for (int p = 0; p < net.num_places(); ++p)
    if (net.place_in(p).empty() && !net.place_out(p).empty())
      throw precondition_error("live_wmg: source place " + net.place_id(p));

  CircuitList circuits = elementary_circuits(net, budget.circuits);
  if (!circuits.complete)
    return Verdict<WmgCircuitWitness>::unknown("circuit enumeration cap hit");
  std::set<std::vector<std::string>> seen;
  for (const auto& cyc : circuits.circuits) {
    std::vector<std::string> places;
    for (const auto& id : cyc)
      if (net.find_place(id)) places.push_back(id);
    std::vector<std::string> key = places;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) continue;
    System circ = p_subsystem(sys, places);
    auto r = live_circuit_ilp(circ);
    if (r.is_no()) return Verdict<WmgCircuitWitness>::no({places, *r.witness});
  }
  return Verdict<WmgCircuitWitness>::yes();
}

// -- PCMG liveness ------------------------------------------------------------

Verdict<std::set<int>> live_pcmg_acyclic(const System& sys, const PcmgSpec& spec) {
  WellStructuredReport ws = well_structured(spec);
  if (!ws.well_structured)
    throw precondition_error("live_pcmg_acyclic: spec not well-structured");
  if (!ws.acyclic_g) throw precondition_error("live_pcmg_acyclic: graph not acyclic");
  BuiltPcmg built = build_pcmg(spec);
  if (!same_system(built.system, sys))
    throw precondition_error("live_pcmg_acyclic: system does not match the spec");

  std::set<int> unmarked;
  for (int p = 0; p < sys.net.num_places(); ++p)
    if (sys.m0[p] == 0) unmarked.insert(p);
  std::set<int> siph = max_siphon_in(sys.net, unmarked);
  if (!siph.empty())
    return Verdict<std::set<int>>::no(siph, "unmarked siphon");
  std::set<int> trap = max_trap_in(sys.net, unmarked);
  if (!trap.empty())
    return Verdict<std::set<int>>::no(trap, "unmarked trap");
  return Verdict<std::set<int>>::yes();
}

// -- H1S liveness --------------------------------------------------------------

Verdict<SiphonDeadlockWitness> live_h1s(const System& sys, const AnalysisBudget& budget) {
  const Net& net = sys.net;
  if (!classify(net).h1s)
    throw precondition_error("live_h1s: net is not homogeneous with at most one shared place");
  SiphonList siphons = minimal_siphons(net);
  if (!siphons.complete)
    return Verdict<SiphonDeadlockWitness>::unknown("siphon enumeration cap hit");
  ReachabilityGraph rg = build_rg(sys, budget.explore);
  auto deadlocked = [&](const std::set<int>& d, const Marking& m) {
    for (int p : d)
      for (const auto& a : net.place_out(p))
        if (m[p] >= a.weight) return false;
    return true;
  };
  for (const auto& m : rg.states)
    for (const auto& s : siphons.items)
      if (deadlocked(s.places, m))
        return Verdict<SiphonDeadlockWitness>::no({s.places, m}, "deadlocked minimal siphon");
  if (!rg.complete)
    return Verdict<SiphonDeadlockWitness>::unknown("reachability graph incomplete: " + rg.reason);
  return Verdict<SiphonDeadlockWitness>::yes();
}

// -- property E -----------------------------------------------------------------

Verdict<std::pair<Marking, TVector>> property_E_check(const System& sys,
                                                      const AnalysisBudget& budget) {
  const Net& net = sys.net;
  for (int t = 0; t < net.num_transitions(); ++t)
    if (net.pre(t).empty())
      return Verdict<std::pair<Marking, TVector>>::yes();  // no dead marking can exist

  auto cons = conservativeness(net);
  if (cons.verdict.is_yes()) {
    PrSet pr = enumerate_pr(sys, budget.pr_bound, budget.pr_marking_cap);
    if (pr.complete) {
      for (std::size_t i = 0; i < pr.markings.size(); ++i)
        if (is_deadlock(net, pr.markings[i]))
          return Verdict<std::pair<Marking, TVector>>::no({pr.markings[i], pr.generators[i]});
      return Verdict<std::pair<Marking, TVector>>::yes();
    }
  }

  // choice functions: one blocking input place per transition
  long long combos = 1;
  for (int t = 0; t < net.num_transitions() && combos <= 256; ++t)
    combos *= static_cast<long long>(net.pre(t).size());
  if (combos > 256)
    return Verdict<std::pair<Marking, TVector>>::unknown(
        "too many blocking-place combinations for the linear encoding");
  IntMatrix inc = incidence(net);
  std::vector<int> choice(net.num_transitions(), 0);
  bool any_unknown = false;
  std::function<std::optional<Verdict<std::pair<Marking, TVector>>>(int)> rec =
      [&](int t) -> std::optional<Verdict<std::pair<Marking, TVector>>> {
    if (t == net.num_transitions()) {
      IntFeasibilityProblem prob;
      prob.vars.resize(net.num_transitions());
      for (auto& v : prob.vars) {
        v.lower = 0;
        v.upper = BigInt(budget.feasibility.max_component);
      }
      prob.cons.nvars = net.num_transitions();
      for (int p = 0; p < net.num_places(); ++p) {
        LinConstraint c;
        c.coeff.resize(net.num_transitions());
        for (int j = 0; j < net.num_transitions(); ++j) c.coeff[j] = BigRat(inc.at(p, j));
        c.rel = Rel::Ge;
        c.rhs = BigRat(-sys.m0[p]);
        prob.cons.cons.push_back(c);
      }
      for (int j = 0; j < net.num_transitions(); ++j) {
        const auto& arc = net.pre(j)[choice[j]];
        LinConstraint c;
        c.coeff.resize(net.num_transitions());
        for (int k = 0; k < net.num_transitions(); ++k) c.coeff[k] = BigRat(inc.at(arc.node, k));
        c.rel = Rel::Le;
        c.rhs = BigRat(arc.weight - 1 - sys.m0[arc.node]);
        prob.cons.cons.push_back(std::move(c));
      }
      auto r = integer_feasible(prob);
      if (r.is_yes()) {
        TVector y = to_tokens(*r.witness);
        Marking m(net.num_places());
        for (int p = 0; p < net.num_places(); ++p) {
          BigInt v = sys.m0[p];
          for (int j = 0; j < net.num_transitions(); ++j) v += inc.at(p, j) * (*r.witness)[j];
          m[p] = static_cast<Tokens>(v);
        }
        return Verdict<std::pair<Marking, TVector>>::no({m, y});
      }
      if (r.is_unknown()) any_unknown = true;
      return std::nullopt;
    }
    for (choice[t] = 0; choice[t] < static_cast<int>(net.pre(t).size()); ++choice[t]) {
      auto r = rec(t + 1);
      if (r) return r;
    }
    choice[t] = 0;
    return std::nullopt;
  };
  auto res = rec(0);
  if (res) return *res;
  if (any_unknown)
    return Verdict<std::pair<Marking, TVector>>::unknown(
        "bounded search inconclusive (bound " + std::to_string(budget.feasibility.max_component) +
        " exhausted)");
  return Verdict<std::pair<Marking, TVector>>::yes();
}

// -- WMG deadlock vector -----------------------------------------------------------

Verdict<DeadlockReport> wmg_deadlock_vector(const System& sys, const AnalysisBudget& budget) {
  const Net& net = sys.net;
  if (!classify(net).wmg_le) throw precondition_error("wmg_deadlock_vector: not a WMG<=");
  if (!weakly_connected(net)) throw precondition_error("wmg_deadlock_vector: net not connected");
  for (int p = 0; p < net.num_places(); ++p)
    if (net.place_in(p).empty() && !net.place_out(p).empty())
      throw precondition_error("wmg_deadlock_vector: source place " + net.place_id(p));

  Marking cur = sys.m0;
  FiringSequence seq;
  long long steps = budget.feasibility.step_cap;
  while (steps-- > 0) {
    bool fired = false;
    for (int t = 0; t < net.num_transitions(); ++t) {
      if (!enabled(net, cur, t)) continue;
      cur = fire(net, cur, t);
      seq.push_back(t);
      fired = true;
      break;
    }
    if (!fired) {
      DeadlockReport rep{cur, parikh(net, seq), seq};
      return Verdict<DeadlockReport>::yes(std::move(rep));
    }
  }
  return Verdict<DeadlockReport>::unknown("step cap hit (the system may be live)");
}

// -- boundedness ---------------------------------------------------------------------

BoundedReport bounded(const System& sys, const AnalysisBudget& budget) {
  const Net& net = sys.net;
  BoundedReport rep;

  // BFS with ancestor pump detection
  std::vector<Marking> states{sys.m0};
  std::vector<int> parent{-1};
  std::unordered_map<Marking, int, MarkingHash> index{{sys.m0, 0}};
  bool complete = true;
  std::string reason;
  for (std::size_t qi = 0; qi < states.size(); ++qi) {
    Marking cur = states[qi];
    for (int t = 0; t < net.num_transitions(); ++t) {
      if (!enabled(net, cur, t)) continue;
      Marking next = cur;
      for (const auto& a : net.pre(t)) next[a.node] -= a.weight;
      for (const auto& a : net.post(t)) next[a.node] += a.weight;
      if (index.count(next)) continue;
      // strictly growing ancestor => pump
      int anc = static_cast<int>(qi);
      int walk = 4096;
      while (anc >= 0 && walk-- > 0) {
        const Marking& m = states[anc];
        bool le = true, strict = false;
        for (std::size_t p = 0; p < m.size(); ++p) {
          if (m[p] > next[p]) {
            le = false;
            break;
          }
          if (m[p] < next[p]) strict = true;
        }
        if (le && strict) {
          rep.outcome = Outcome::No;
          rep.pump = {m, next};
          rep.reason = "repeatable token pump";
          return rep;
        }
        anc = parent[anc];
      }
      if (states.size() >= budget.explore.max_states) {
        complete = false;
        reason = "state cap";
        continue;
      }
      index.emplace(next, static_cast<int>(states.size()));
      states.push_back(std::move(next));
      parent.push_back(static_cast<int>(qi));
    }
  }

  if (complete) {
    Tokens bound = 0;
    for (const auto& m : states)
      for (Tokens v : m) bound = std::max(bound, v);
    rep.outcome = Outcome::Yes;
    rep.bound = bound;
    return rep;
  }
  if (structurally_bounded(net).is_yes()) {
    rep.outcome = Outcome::Yes;
    rep.reason = "structurally bounded";
    return rep;
  }
  rep.outcome = Outcome::Unknown;
  rep.reason = "exploration incomplete (" + reason + ") and no pump found";
  return rep;
}

// -- reversibility ----------------------------------------------------------------------

Verdict<Marking> reversible(const System& sys, const AnalysisBudget& budget) {
  ReachabilityGraph rg = build_rg(sys, budget.explore);
  if (!rg.complete)
    return Verdict<Marking>::unknown("reachability graph incomplete: " + rg.reason);
  int ncomp = 0;
  std::vector<int> comp = strongly_connected_components(rg, ncomp);
  if (ncomp <= 1) return Verdict<Marking>::yes();
  // find a state that cannot reach m0: reverse reachability from the root
  std::vector<std::vector<int>> rev(rg.states.size());
  for (std::size_t u = 0; u < rg.states.size(); ++u)
    for (const auto& [t, v] : rg.succ[u]) rev[v].push_back(static_cast<int>(u));
  std::vector<bool> reaches(rg.states.size(), false);
  std::vector<int> stack{0};
  reaches[0] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : rev[v])
      if (!reaches[w]) {
        reaches[w] = true;
        stack.push_back(w);
      }
  }
  for (std::size_t u = 0; u < rg.states.size(); ++u)
    if (!reaches[u])
      return Verdict<Marking>::no(rg.states[u], "initial marking unreachable from here");
  return Verdict<Marking>::yes();  // unreachable: ncomp>1 implies some state fails
}

// -- T-sequences ----------------------------------------------------------------------------

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<Marking, TVector>& s) const {
    MarkingHash h;
    return h(s.first) * 31 + h(s.second);
  }
};

std::optional<FiringSequence> dfs_realize(const Net& net, const Marking& m0, const TVector& target,
                                          long long step_cap) {
  std::unordered_set<std::pair<Marking, TVector>, PairHash> visited;
  FiringSequence seq;
  long long steps = 0;
  std::function<bool(const Marking&, const TVector&, Tokens)> rec =
      [&](const Marking& m, const TVector& remaining, Tokens left) -> bool {
    if (left == 0) return true;
    if (++steps > step_cap) return false;
    if (!visited.insert({m, remaining}).second) return false;
    for (int t = 0; t < net.num_transitions(); ++t) {
      if (remaining[t] <= 0 || !enabled(net, m, t)) continue;
      Marking next = m;
      for (const auto& a : net.pre(t)) next[a.node] -= a.weight;
      for (const auto& a : net.post(t)) next[a.node] += a.weight;
      TVector rem = remaining;
      --rem[t];
      seq.push_back(t);
      if (rec(next, rem, left - 1)) return true;
      seq.pop_back();
    }
    return false;
  };
  Tokens total = std::accumulate(target.begin(), target.end(), Tokens{0});
  if (rec(m0, target, total)) return seq;
  return std::nullopt;
}

}  // namespace

Verdict<FiringSequence> find_t_sequence(const System& sys, const AnalysisBudget& budget) {
  const Net& net = sys.net;
  if (net.num_transitions() == 0)
    return Verdict<FiringSequence>::no_because("no transitions");
  auto cons = consistency(net);
  if (cons.is_no())
    return Verdict<FiringSequence>::no_because("inconsistent: no full-support T-semiflow exists");

  // lexicographically least minimal full-support semiflow, if the bounded
  // search finds one; otherwise the consistency witness
  TVector base;
  SemiflowList flows = minimal_t_semiflows(net);
  for (const auto& f : flows.flows) {
    bool full = true;
    for (Tokens v : f.vec)
      if (v == 0) full = false;
    if (full) {
      base = f.vec;
      break;
    }
  }
  if (base.empty()) base = *cons.witness;

  for (Tokens k = 1; k <= budget.tsequence_multiples; ++k) {
    TVector target(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) target[i] = base[i] * k;
    if (auto seq = dfs_realize(net, sys.m0, target, budget.feasibility.step_cap))
      return Verdict<FiringSequence>::yes(*seq);
  }

  ReachabilityGraph rg = build_rg(sys, budget.explore);
  if (!rg.complete)
    return Verdict<FiringSequence>::unknown("realization search exhausted; graph incomplete");
  int ncomp = 0;
  std::vector<int> comp = strongly_connected_components(rg, ncomp);
  int root_comp = comp[0];
  std::vector<bool> fires(net.num_transitions(), false);
  for (std::size_t u = 0; u < rg.states.size(); ++u) {
    if (comp[u] != root_comp) continue;
    for (const auto& [t, v] : rg.succ[u])
      if (comp[v] == root_comp) fires[t] = true;
  }
  for (int t = 0; t < net.num_transitions(); ++t)
    if (!fires[t])
      return Verdict<FiringSequence>::no_because("transition " + net.transition_id(t) +
                                         " lies on no cycle through the initial marking");
  return Verdict<FiringSequence>::yes(closed_walk_all_labels(net, rg, comp, 0));
}

Verdict<FiringSequence> reversible_by_tsequence(const System& sys, TSequencePre tag,
                                                const AnalysisBudget& budget,
                                                const PcmgSpec* spec) {
  if (tag == TSequencePre::LiveH1s) {
    if (!classify(sys.net).h1s)
      throw precondition_error(
          "reversible_by_tsequence: net is not H1S (homogeneous, at most one shared place)");
  } else {
    if (!spec) throw precondition_error("reversible_by_tsequence: PCMG spec required");
    WellStructuredReport ws = well_structured(*spec);
    if (!ws.well_structured)
      throw precondition_error("reversible_by_tsequence: spec not well-structured");
    if (!same_system(build_pcmg(*spec).system, sys))
      throw precondition_error("reversible_by_tsequence: system does not match the spec");
  }
  return find_t_sequence(sys, budget);
}

// -- L, R, B ----------------------------------------------------------------------------------

namespace {

Outcome conj(Outcome a, Outcome b) {
  if (a == Outcome::No || b == Outcome::No) return Outcome::No;
  if (a == Outcome::Yes && b == Outcome::Yes) return Outcome::Yes;
  return Outcome::Unknown;
}

}  // namespace

LrbReport lrb_report(const System& sys, const AnalysisBudget& budget) {
  System rev = reverse_system(sys);
  LrbReport rep;
  rep.live_fwd = live(sys, budget);
  rep.live_rev = live(rev, budget);
  rep.bounded_fwd = bounded(sys, budget);
  rep.bounded_rev = bounded(rev, budget);
  rep.reversible_fwd = reversible(sys, budget);
  rep.reversible_rev = reversible(rev, budget);
  rep.property_L = conj(rep.live_fwd.outcome, rep.live_rev.outcome);
  rep.property_R = conj(rep.reversible_fwd.outcome, rep.reversible_rev.outcome);
  rep.property_B = conj(rep.bounded_fwd.outcome, rep.bounded_rev.outcome);
  return rep;
}

// -- Keller ---------------------------------------------------------------------------------

bool keller_check(const System& sys, const FiringSequence& tau, const FiringSequence& sigma) {
  if (!classify(sys.net).choice_free)
    throw precondition_error("keller_check: net is not choice-free (not persistent)");
  Marking after_tau, after_sigma;
  try {
    after_tau = fire_sequence(sys.net, sys.m0, tau);
    after_sigma = fire_sequence(sys.net, sys.m0, sigma);
  } catch (const not_enabled_error& e) {
    throw precondition_error(std::string("keller_check: input sequence infeasible: ") + e.what());
  }
  FiringSequence ext1 = residue(sigma, tau);  // tau (sigma - tau)
  FiringSequence ext2 = residue(tau, sigma);  // sigma (tau - sigma)
  Marking end1 = fire_sequence(sys.net, after_tau, ext1);
  Marking end2 = fire_sequence(sys.net, after_sigma, ext2);
  return end1 == end2;
}

// -- fireable T-vectors --------------------------------------------------------------------

Verdict<FiringSequence> realize_tvector_wmg(const System& sys, const TVector& y,
                                            const FiringSequence& sigma_hint) {
  const Net& net = sys.net;
  if (!classify(net).wmg_le) throw precondition_error("realize_tvector_wmg: not a WMG<=");
  IntMatrix inc = incidence(net);
  for (int p = 0; p < net.num_places(); ++p) {
    BigInt v = sys.m0[p];
    for (int t = 0; t < net.num_transitions(); ++t) v += inc.at(p, t) * y[t];
    if (v < 0)
      throw precondition_error("realize_tvector_wmg: target marking negative at " +
                               net.place_id(p));
  }
  try {
    fire_sequence(net, sys.m0, sigma_hint);
  } catch (const not_enabled_error& e) {
    throw precondition_error(std::string("realize_tvector_wmg: hint infeasible: ") + e.what());
  }
  TVector hp = parikh(net, sigma_hint);
  for (int t = 0; t < net.num_transitions(); ++t)
    if (hp[t] < y[t])
      throw precondition_error("realize_tvector_wmg: hint Parikh vector below target at " +
                               net.transition_id(t));
  auto seq = greedy_realize(net, sys.m0, y);
  if (!seq) throw std::logic_error("realize_tvector_wmg: greedy stalled despite preconditions");
  return Verdict<FiringSequence>::yes(*seq);
}

// -- directedness ------------------------------------------------------------------------------

namespace {

struct PrContext {
  PrSet pr;
  std::vector<ReachabilityGraph> rgs;
  bool all_complete = true;
};

PrContext pr_context(const System& sys, const AnalysisBudget& budget) {
  PrContext ctx;
  ctx.pr = enumerate_pr(sys, budget.pr_bound, budget.pr_marking_cap);
  if (!ctx.pr.complete) return ctx;
  for (const auto& m : ctx.pr.markings) {
    ctx.rgs.push_back(build_rg({sys.net, m}, budget.explore));
    if (!ctx.rgs.back().complete) ctx.all_complete = false;
  }
  return ctx;
}

}  // namespace

Verdict<std::pair<Marking, Marking>> directedness(const System& sys,
                                                  const AnalysisBudget& budget) {
  PrContext ctx = pr_context(sys, budget);
  if (!ctx.pr.complete)
    return Verdict<std::pair<Marking, Marking>>::unknown("PR enumeration incomplete: " +
                                                         ctx.pr.note);
  if (!ctx.all_complete)
    return Verdict<std::pair<Marking, Marking>>::unknown("a forward graph hit its budget");
  for (std::size_t i = 0; i < ctx.pr.markings.size(); ++i) {
    for (std::size_t j = i + 1; j < ctx.pr.markings.size(); ++j) {
      const auto& small = ctx.rgs[i].states.size() <= ctx.rgs[j].states.size() ? ctx.rgs[i] : ctx.rgs[j];
      const auto& large = ctx.rgs[i].states.size() <= ctx.rgs[j].states.size() ? ctx.rgs[j] : ctx.rgs[i];
      bool meet = false;
      for (const auto& m : small.states)
        if (large.find(m) >= 0) {
          meet = true;
          break;
        }
      if (!meet)
        return Verdict<std::pair<Marking, Marking>>::no(
            {ctx.pr.markings[i], ctx.pr.markings[j]}, "no common reachable marking");
    }
  }
  return Verdict<std::pair<Marking, Marking>>::yes();
}

Verdict<Marking> initial_directedness(const System& sys, const AnalysisBudget& budget) {
  PrContext ctx = pr_context(sys, budget);
  if (!ctx.pr.complete)
    return Verdict<Marking>::unknown("PR enumeration incomplete: " + ctx.pr.note);
  if (!ctx.all_complete) return Verdict<Marking>::unknown("a forward graph hit its budget");
  ReachabilityGraph root = build_rg(sys, budget.explore);
  if (!root.complete) return Verdict<Marking>::unknown("root graph incomplete");
  for (std::size_t i = 0; i < ctx.pr.markings.size(); ++i) {
    bool meet = false;
    for (const auto& m : ctx.rgs[i].states)
      if (root.find(m) >= 0) {
        meet = true;
        break;
      }
    if (!meet)
      return Verdict<Marking>::no(ctx.pr.markings[i],
                                  "shares no reachable marking with the initial one");
  }
  return Verdict<Marking>::yes();
}

Verdict<Marking> strongly_live(const System& sys, const AnalysisBudget& budget) {
  PrSet pr = enumerate_pr(sys, budget.pr_bound, budget.pr_marking_cap);
  if (!pr.complete) return Verdict<Marking>::unknown("PR enumeration incomplete: " + pr.note);
  bool unknown = false;
  for (const auto& m : pr.markings) {
    auto v = live({sys.net, m}, budget);
    if (v.is_no()) return Verdict<Marking>::no(m, "not live from this potentially reachable marking");
    if (v.is_unknown()) unknown = true;
  }
  if (unknown) return Verdict<Marking>::unknown("some liveness check was inconclusive");
  return Verdict<Marking>::yes();
}

}  // namespace pnetkit
