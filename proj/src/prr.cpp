#include "pnetkit/prr.hpp"

#include <algorithm>

namespace pnetkit {

const char* to_string(PrrRule rule) {
  switch (rule) {
    case PrrRule::LiveWMG: return "LiveWMG";
    case PrrRule::PcmgAcyclic: return "PcmgAcyclic";
    case PrrRule::LiveH1sR: return "LiveH1sR";
    case PrrRule::LiveHfcR: return "LiveHfcR";
    case PrrRule::AmgConsSiphons: return "AmgConsSiphons";
    case PrrRule::RPlusInitDir: return "RPlusInitDir";
    default: return "ExhaustiveEqual";
  }
}

namespace {

// Shared lazily computed facts for the ladder.
struct LadderContext {
  const System& sys;
  const AnalysisBudget& budget;
  ClassReport cls;
  std::optional<Verdict<DeadTransition>> live_v;
  std::optional<Outcome> property_r;
  std::string property_r_note;

  explicit LadderContext(const System& s, const AnalysisBudget& b)
      : sys(s), budget(b), cls(classify(s.net)) {}

  const Verdict<DeadTransition>& liveness() {
    if (!live_v) live_v = live(sys, budget);
    return *live_v;
  }

  Outcome property_R() {
    if (!property_r) {
      auto fwd = reversible(sys, budget);
      auto rev = reversible(reverse_system(sys), budget);
      if (fwd.is_yes() && rev.is_yes())
        property_r = Outcome::Yes;
      else if (fwd.is_no() || rev.is_no())
        property_r = Outcome::No;
      else
        property_r = Outcome::Unknown;
      property_r_note = std::string("S ") + to_string(fwd.outcome) + ", -S " +
                        to_string(rev.outcome);
    }
    return *property_r;
  }
};

bool has_output_source_place(const Net& net) {
  for (int p = 0; p < net.num_places(); ++p)
    if (net.place_in(p).empty() && !net.place_out(p).empty()) return true;
  return false;
}

}  // namespace

Verdict<PrrCertificate> certificate_ladder(const System& sys, const AnalysisBudget& budget,
                                           const PcmgSpec* spec) {
  LadderContext ctx(sys, budget);
  std::string notes;

  // LiveWMG
  if (ctx.cls.wmg_le) {
    Outcome live_out;
    std::string how;
    if (!has_output_source_place(sys.net)) {
      auto v = live_wmg(sys, budget);
      live_out = v.outcome;
      how = "per-circuit liveness";
    } else {
      live_out = ctx.liveness().outcome;
      how = "reachability graph";
    }
    if (live_out == Outcome::Yes) {
      PrrCertificate cert{PrrRule::LiveWMG,
                          {{"wmg_le", Outcome::Yes, "syntactic"}, {"live", Outcome::Yes, how}}};
      return Verdict<PrrCertificate>::yes(std::move(cert));
    }
    notes += "LiveWMG: live=" + std::string(to_string(live_out)) + "; ";
  } else {
    notes += "LiveWMG: not WMG<=; ";
  }

  // PcmgAcyclic
  if (spec) {
    try {
      WellStructuredReport ws = well_structured(*spec);
      if (ws.well_structured && ws.acyclic_g && same_system(build_pcmg(*spec).system, sys)) {
        auto v = live_pcmg_acyclic(sys, *spec);
        if (v.is_yes()) {
          PrrCertificate cert{PrrRule::PcmgAcyclic,
                              {{"well_structured", Outcome::Yes, ""},
                               {"acyclic_graph", Outcome::Yes, ""},
                               {"live", Outcome::Yes, "marked minimal siphons and traps"}}};
          return Verdict<PrrCertificate>::yes(std::move(cert));
        }
        notes += "PcmgAcyclic: live=" + std::string(to_string(v.outcome)) + "; ";
      } else {
        notes += "PcmgAcyclic: spec not applicable; ";
      }
    } catch (const pnet_error&) {
      notes += "PcmgAcyclic: spec invalid; ";
    }
  }

  // LiveH1sR
  if (ctx.cls.h1s_wmg_le) {
    auto lv = live_h1s(sys, budget);
    if (lv.is_yes() && ctx.property_R() == Outcome::Yes) {
      PrrCertificate cert{PrrRule::LiveH1sR,
                          {{"h1s_wmg_le", Outcome::Yes, "syntactic"},
                           {"live", Outcome::Yes, "no deadlocked minimal siphon"},
                           {"property_R", Outcome::Yes, ctx.property_r_note}}};
      return Verdict<PrrCertificate>::yes(std::move(cert));
    }
    notes += "LiveH1sR: live=" + std::string(to_string(lv.outcome)) +
             " R=" + (lv.is_yes() ? to_string(ctx.property_R()) : "skipped") + "; ";
  }

  // LiveHfcR
  if (ctx.cls.hfc) {
    if (ctx.liveness().is_yes() && ctx.property_R() == Outcome::Yes) {
      PrrCertificate cert{PrrRule::LiveHfcR,
                          {{"hfc", Outcome::Yes, "syntactic"},
                           {"live", Outcome::Yes, "reachability graph"},
                           {"property_R", Outcome::Yes, ctx.property_r_note}}};
      return Verdict<PrrCertificate>::yes(std::move(cert));
    }
    notes += "LiveHfcR: live=" + std::string(to_string(ctx.liveness().outcome)) + "; ";
  }

  // AmgConsSiphons
  {
    auto amg = check_amg(sys, budget.circuits);
    if (amg.is_yes()) {
      SiphonList siphons = minimal_siphons(sys.net);
      bool all_conservative = siphons.complete;
      for (const auto& s : siphons.items) {
        if (!all_conservative) break;
        std::vector<std::string> ids;
        for (int p : s.places) ids.push_back(sys.net.place_id(p));
        if (!conservativeness(p_subnet(sys.net, ids)).verdict.is_yes()) all_conservative = false;
      }
      if (all_conservative && ctx.liveness().is_yes() && ctx.property_R() == Outcome::Yes) {
        PrrCertificate cert{PrrRule::AmgConsSiphons,
                            {{"amg", Outcome::Yes, "H1-H4"},
                             {"live", Outcome::Yes, "reachability graph"},
                             {"property_R", Outcome::Yes, ctx.property_r_note},
                             {"conservative_min_siphons", Outcome::Yes,
                              std::to_string(siphons.items.size()) + " siphons"}}};
        return Verdict<PrrCertificate>::yes(std::move(cert));
      }
      notes += "AmgConsSiphons: failed a precondition; ";
    } else {
      notes += "AmgConsSiphons: " + amg.reason + "; ";
    }
  }

  // RPlusInitDir
  if (ctx.property_R() == Outcome::Yes) {
    auto dir = initial_directedness(sys, budget);
    if (dir.is_yes()) {
      PrrCertificate cert{PrrRule::RPlusInitDir,
                          {{"property_R", Outcome::Yes, ctx.property_r_note},
                           {"initially_directed", Outcome::Yes, "complete PR set"}}};
      return Verdict<PrrCertificate>::yes(std::move(cert));
    }
    notes += "RPlusInitDir: initially_directed=" + std::string(to_string(dir.outcome)) + "; ";
  } else {
    notes += "RPlusInitDir: property_R=" + std::string(to_string(ctx.property_R())) + "; ";
  }

  return Verdict<PrrCertificate>::no_because(notes);
}

PrrVerdict prr_decide(const System& sys, const AnalysisBudget& budget, const PcmgSpec* spec) {
  PrrVerdict out;
  auto cert = certificate_ladder(sys, budget, spec);
  if (cert.is_yes()) {
    out.kind = PrrVerdict::Kind::Equal;
    out.certificate = *cert.witness;
    out.reason = std::string("certificate ") + to_string(cert.witness->rule);
    return out;
  }

  ReachabilityGraph rg = build_rg(sys, budget.explore);
  PrSet pr = enumerate_pr(sys, budget.pr_bound, budget.pr_marking_cap);
  if (rg.complete) {
    for (std::size_t i = 0; i < pr.markings.size(); ++i) {
      if (rg.find(pr.markings[i]) < 0) {
        out.kind = PrrVerdict::Kind::NotEqual;
        out.witness = {pr.markings[i], pr.generators[i]};
        out.reason = "potentially reachable marking absent from the complete reachability graph";
        return out;
      }
    }
    if (pr.complete) {
      out.kind = PrrVerdict::Kind::Equal;
      out.certificate = PrrCertificate{PrrRule::ExhaustiveEqual,
                                       {{"complete_rg", Outcome::Yes,
                                         std::to_string(rg.states.size()) + " states"},
                                        {"complete_pr", Outcome::Yes,
                                         std::to_string(pr.markings.size()) + " markings"}}};
      out.reason = "exhaustive comparison";
      return out;
    }
    out.kind = PrrVerdict::Kind::Unknown;
    out.reason = "no certificate; PR enumeration incomplete (" + pr.note + ")";
    return out;
  }
  out.kind = PrrVerdict::Kind::Unknown;
  out.reason = "no certificate; reachability graph incomplete (" + rg.reason + ")";
  return out;
}

ReachAnswer is_reachable(const System& sys, const Marking& target, const AnalysisBudget& budget,
                         const PcmgSpec* spec) {
  ReachAnswer ans;
  auto se = solve_state_equation(sys, target, budget.feasibility);
  if (se.is_no()) {
    ans.outcome = Outcome::No;
    ans.method = "state equation infeasible: " + se.reason;
    return ans;
  }
  if (se.is_yes()) ans.parikh = se.witness;

  auto cert = certificate_ladder(sys, budget, spec);
  if (cert.is_yes() && se.is_yes()) {
    ans.outcome = Outcome::Yes;
    ans.method = std::string("PR-R certificate ") + to_string(cert.witness->rule) +
                 " + state equation";
    // witness sequence: greedy realization in the persistent classes,
    // otherwise graph search
    if (classify(sys.net).wmg_le) {
      if (auto seq = greedy_realize(sys.net, sys.m0, *se.witness, budget.feasibility.step_cap)) {
        ans.sequence = *seq;
        return ans;
      }
    }
    ReachabilityGraph rg = build_rg(sys, budget.explore);
    int idx = rg.find(target);
    if (idx >= 0) ans.sequence = rg_path(rg, idx);
    return ans;
  }

  ReachabilityGraph rg = build_rg(sys, budget.explore);
  int idx = rg.find(target);
  if (idx >= 0) {
    ans.outcome = Outcome::Yes;
    ans.sequence = rg_path(rg, idx);
    ans.method = "explicit graph search";
    return ans;
  }
  if (rg.complete) {
    ans.outcome = Outcome::No;
    ans.method = "absent from the complete reachability graph";
    return ans;
  }
  ans.outcome = Outcome::Unknown;
  ans.method = "graph incomplete (" + rg.reason + ") and no certificate applies";
  return ans;
}

// -- AMG property checks -----------------------------------------------------

Verdict<AmgHomeStateReport> amg_home_state_check(const System& sys, const Marking& m_star,
                                                 const AnalysisBudget& budget) {
  auto h123 = check_amg_h123(sys, budget.circuits);
  if (h123.is_unknown()) return Verdict<AmgHomeStateReport>::unknown(h123.reason);
  if (h123.is_no())
    throw precondition_error("amg_home_state_check: H1-H3 fail: " + h123.reason);

  auto c1 = solve_state_equation(sys, m_star, budget.feasibility);
  if (!c1.is_yes())
    throw precondition_error("amg_home_state_check: C1 fails (state equation " +
                             std::string(to_string(c1.outcome)) + ")");

  // C2: an admissible pairing whose connecting paths are unmarked at M*
  auto pairing = amg_c2_pairing(sys, m_star, budget.circuits);
  if (!pairing)
    throw precondition_error("amg_home_state_check: C2 fails (no pairing with M*-unmarked paths)");

  AmgHomeStateReport rep;
  ReachabilityGraph rg = build_rg(sys, budget.explore);
  int idx = rg.find(m_star);
  if (idx < 0) {
    if (rg.complete)
      return Verdict<AmgHomeStateReport>::no(rep, "M* not reachable (conclusion violated)");
    return Verdict<AmgHomeStateReport>::unknown("reachability graph incomplete");
  }
  rep.to_m_star = *rg_path(rg, idx);
  rep.resources_marked = true;
  for (int r : pairing->resources)
    if (m_star[r] <= 0) rep.resources_marked = false;

  if (rg.complete) {
    // home state: M* reachable from every reachable marking
    std::vector<std::vector<int>> rev(rg.states.size());
    for (std::size_t u = 0; u < rg.states.size(); ++u)
      for (const auto& [t, v] : rg.succ[u]) rev[v].push_back(static_cast<int>(u));
    std::vector<bool> reaches(rg.states.size(), false);
    std::vector<int> stack{idx};
    reaches[idx] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : rev[v])
        if (!reaches[w]) {
          reaches[w] = true;
          stack.push_back(w);
        }
    }
    rep.home_state = Outcome::Yes;
    for (bool b : reaches)
      if (!b) rep.home_state = Outcome::No;
  }
  if (!rep.resources_marked)
    return Verdict<AmgHomeStateReport>::no(rep, "a resource is unmarked at M*");
  return Verdict<AmgHomeStateReport>::yes(rep);
}

Verdict<AmgInvariantReport> amg_resource_invariant_check(const System& sys,
                                                         const AnalysisBudget& budget) {
  auto amg = check_amg(sys, budget.circuits);
  if (amg.is_unknown()) return Verdict<AmgInvariantReport>::unknown(amg.reason);
  if (amg.is_no()) throw precondition_error("amg_resource_invariant_check: not an AMG");
  ReachabilityGraph rg = build_rg(sys, budget.explore);
  if (!rg.complete)
    return Verdict<AmgInvariantReport>::unknown("reachability graph incomplete: " + rg.reason);

  AmgInvariantReport rep;
  for (const auto& pairing : amg.witness->pairings) {
    // multiset of O-path place indices (a place may appear on several paths)
    std::vector<int> path_places;
    for (const auto& path : pairing.paths)
      for (const auto& id : path)
        if (auto p = sys.net.find_place(id)) path_places.push_back(*p);
    auto value = [&](const Marking& m) {
      Tokens v = m[pairing.resource];
      for (int p : path_places) v += m[p];
      return v;
    };
    Tokens c = value(sys.m0);
    for (const auto& m : rg.states)
      if (value(m) != c)
        return Verdict<AmgInvariantReport>::no(rep, "invariant broken for resource " +
                                                        sys.net.place_id(pairing.resource) +
                                                        " at " + format_marking(sys.net, m));
    rep.constants.emplace_back(pairing.resource, c);
  }
  return Verdict<AmgInvariantReport>::yes(rep);
}

}  // namespace pnetkit
