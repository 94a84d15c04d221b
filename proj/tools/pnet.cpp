#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pnetkit/corpus.hpp"
#include "pnetkit/format.hpp"
#include "pnetkit/prr.hpp"

using json = nlohmann::json;
using namespace pnetkit;

namespace {

constexpr const char* kSchema = "pnetkit/1";

struct Options {
  std::string file;
  std::string pcmg_spec;
  std::string marking;
  std::string method = "auto";
  std::string dot_out;
  bool json_out = false;
  bool strict = false;
  bool traps = false;
  std::size_t max_states = 50000;
  Tokens y_bound = 8;
  Tokens token_bound = 1000000;
};

AnalysisBudget budget_of(const Options& o) {
  AnalysisBudget b;
  b.explore.max_states = o.max_states;
  b.explore.max_token_bound = o.token_bound;
  b.pr_bound = o.y_bound;
  return b;
}

json marking_json(const Net& net, const Marking& m) {
  json out = json::object();
  for (int p = 0; p < net.num_places(); ++p) out[net.place_id(p)] = m[p];
  return out;
}

json sequence_json(const Net& net, const FiringSequence& seq) {
  json out = json::array();
  for (int t : seq) out.push_back(net.transition_id(t));
  return out;
}

std::string sequence_str(const Net& net, const FiringSequence& seq) {
  std::string s;
  for (int t : seq) s += (s.empty() ? "" : " ") + net.transition_id(t);
  return s.empty() ? "(empty)" : s;
}

int emit(const Options& o, const json& body, Outcome outcome, const std::string& text) {
  if (o.json_out) {
    json out = body;
    out["schema"] = kSchema;
    out["outcome"] = to_string(outcome);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text << "\n";
  }
  return o.strict && outcome == Outcome::Unknown ? 1 : 0;
}

System load_input(const Options& o) { return load_net_file(o.file); }

std::optional<PcmgSpec> load_spec(const Options& o) {
  if (o.pcmg_spec.empty()) return std::nullopt;
  return load_pcmg_file(o.pcmg_spec);
}

int cmd_validate(const Options& o) {
  System sys = load_input(o);
  std::string round = serialize_net(sys);
  json body{{"command", "validate"},
            {"net", sys.net.name()},
            {"places", sys.net.num_places()},
            {"transitions", sys.net.num_transitions()}};
  return emit(o, body, Outcome::Yes,
              "OK: " + sys.net.name() + " (" + std::to_string(sys.net.num_places()) +
                  " places, " + std::to_string(sys.net.num_transitions()) + " transitions)");
}

int cmd_classify(const Options& o) {
  System sys = load_input(o);
  ClassReport r = classify(sys.net);
  json body{{"command", "classify"},
            {"net", sys.net.name()},
            {"ordinary", r.ordinary},
            {"homogeneous", r.homogeneous},
            {"choice_free", r.choice_free},
            {"wmg_le", r.wmg_le},
            {"wmg", r.wmg},
            {"marked_graph", r.marked_graph},
            {"free_choice", r.free_choice},
            {"asymmetric_choice", r.asymmetric_choice},
            {"state_machine", r.state_machine},
            {"hfc", r.hfc},
            {"shared_places", json::array()},
            {"k", r.k},
            {"ks_wmg_le", r.ks_wmg_le},
            {"h1s", r.h1s},
            {"h1s_wmg_le", r.h1s_wmg_le}};
  std::string text = sys.net.name() + ":";
  auto flag = [&](const char* n, bool v) {
    if (v) text += std::string(" ") + n;
  };
  for (int p : r.shared_places) body["shared_places"].push_back(sys.net.place_id(p));
  flag("ordinary", r.ordinary);
  flag("homogeneous", r.homogeneous);
  flag("choice-free", r.choice_free);
  flag("wmg<=", r.wmg_le);
  flag("wmg", r.wmg);
  flag("marked-graph", r.marked_graph);
  flag("free-choice", r.free_choice);
  flag("asymmetric-choice", r.asymmetric_choice);
  flag("state-machine", r.state_machine);
  flag("hfc", r.hfc);
  flag("h1s-wmg<=", r.h1s_wmg_le);
  text += " | shared: " + std::to_string(r.k);
  return emit(o, body, Outcome::Yes, text);
}

int cmd_siphons(const Options& o) {
  System sys = load_input(o);
  SiphonList list = o.traps ? minimal_traps(sys.net) : minimal_siphons(sys.net);
  json body{{"command", o.traps ? "traps" : "siphons"},
            {"net", sys.net.name()},
            {"complete", list.complete},
            {"minimal", json::array()}};
  std::string text = std::string(o.traps ? "minimal traps" : "minimal siphons") + " of " +
                     sys.net.name() + ":";
  for (const auto& s : list.items) {
    json one = json::array();
    std::string line = "\n  {";
    bool first = true;
    for (int p : s.places) {
      one.push_back(sys.net.place_id(p));
      line += (first ? "" : ",") + sys.net.place_id(p);
      first = false;
    }
    body["minimal"].push_back(one);
    text += line + "}";
  }
  if (!list.complete) text += "\n  (enumeration capped)";
  return emit(o, body, list.complete ? Outcome::Yes : Outcome::Unknown, text);
}

int cmd_rg(const Options& o) {
  System sys = load_input(o);
  ReachabilityGraph rg = build_rg(sys, budget_of(o).explore);
  if (!o.dot_out.empty()) {
    std::ofstream out(o.dot_out);
    out << to_dot(sys.net, rg);
  }
  json body{{"command", "rg"},
            {"net", sys.net.name()},
            {"states", rg.states.size()},
            {"arcs", rg.arc_count},
            {"complete", rg.complete},
            {"deadlocks", deadlocks(sys.net, rg).size()}};
  std::string text = sys.net.name() + ": " + std::to_string(rg.states.size()) + " states, " +
                     std::to_string(rg.arc_count) + " arcs" +
                     (rg.complete ? "" : " (incomplete: " + rg.reason + ")");
  return emit(o, body, rg.complete ? Outcome::Yes : Outcome::Unknown, text);
}

int cmd_live(const Options& o) {
  System sys = load_input(o);
  AnalysisBudget b = budget_of(o);
  Outcome outcome;
  std::string detail;
  std::string method = o.method;
  if (method == "auto") {
    ClassReport r = classify(sys.net);
    bool circuitish = true;
    for (int p = 0; p < sys.net.num_places() && circuitish; ++p)
      if (sys.net.place_in(p).size() != 1 || sys.net.place_out(p).size() != 1) circuitish = false;
    for (int t = 0; t < sys.net.num_transitions() && circuitish; ++t)
      if (sys.net.pre(t).size() != 1 || sys.net.post(t).size() != 1) circuitish = false;
    circuitish = circuitish && sys.net.num_places() == sys.net.num_transitions() &&
                 sys.net.num_places() > 0;
    bool sources = false;
    for (int p = 0; p < sys.net.num_places(); ++p)
      if (sys.net.place_in(p).empty() && !sys.net.place_out(p).empty()) sources = true;
    if (circuitish)
      method = "circuit";
    else if (r.wmg_le && !sources)
      method = "wmg";
    else if (r.h1s)
      method = "h1s";
    else
      method = "rg";
  }
  if (method == "circuit") {
    auto v = live_circuit_ilp(sys);
    outcome = v.outcome;
    if (v.is_no())
      detail = "ILP witness: dead marking " + format_marking(sys.net, v.witness->dead_marking);
  } else if (method == "wmg") {
    auto v = live_wmg(sys, b);
    outcome = v.outcome;
    if (v.is_no()) {
      detail = "dead circuit {";
      for (const auto& p : v.witness->circuit_places) detail += p + " ";
      detail += "}";
    }
  } else if (method == "cf") {
    auto v = live_cf(sys, b);
    outcome = v.outcome;
    if (v.is_yes())
      detail = "repeatable sequence from " + format_marking(sys.net, v.witness->from);
    else
      detail = v.reason;
  } else if (method == "h1s") {
    auto v = live_h1s(sys, b);
    outcome = v.outcome;
    if (v.is_no()) detail = "deadlocked minimal siphon at " + format_marking(sys.net, v.witness->at);
  } else if (method == "pcmg") {
    auto spec = load_spec(o);
    if (!spec) throw pnet_error("--method pcmg needs --pcmg-spec");
    auto v = live_pcmg_acyclic(sys, *spec);
    outcome = v.outcome;
    if (v.is_no()) {
      detail = "unmarked siphon/trap {";
      for (int p : *v.witness) detail += sys.net.place_id(p) + " ";
      detail += "}";
    }
  } else {
    auto v = live(sys, b);
    outcome = v.outcome;
    if (v.is_no())
      detail = "transition " + sys.net.transition_id(v.witness->transition) + " dead at " +
               format_marking(sys.net, v.witness->from);
    else
      detail = v.reason;
  }
  json body{{"command", "live"}, {"net", sys.net.name()}, {"method", method}, {"detail", detail}};
  std::string text = outcome == Outcome::Yes  ? "LIVE"
                     : outcome == Outcome::No ? "NOT LIVE"
                                              : "UNKNOWN";
  if (!detail.empty()) text += " — " + detail;
  return emit(o, body, outcome, text);
}

int cmd_bounded(const Options& o) {
  System sys = load_input(o);
  BoundedReport rep = bounded(sys, budget_of(o));
  json body{{"command", "bounded"}, {"net", sys.net.name()}};
  std::string text;
  if (rep.outcome == Outcome::Yes) {
    text = "BOUNDED";
    if (rep.bound) {
      text += " (bound " + std::to_string(*rep.bound) + ")";
      body["bound"] = *rep.bound;
    } else {
      text += " (" + rep.reason + ")";
    }
  } else if (rep.outcome == Outcome::No) {
    text = "UNBOUNDED — pump from " + format_marking(sys.net, rep.pump->first) + " to " +
           format_marking(sys.net, rep.pump->second);
  } else {
    text = "UNKNOWN — " + rep.reason;
  }
  return emit(o, body, rep.outcome, text);
}

int cmd_reversible(const Options& o) {
  System sys = load_input(o);
  auto v = reversible(sys, budget_of(o));
  json body{{"command", "reversible"}, {"net", sys.net.name()}};
  std::string text = v.is_yes()  ? "REVERSIBLE"
                     : v.is_no() ? "NOT REVERSIBLE — stuck at " + format_marking(sys.net, *v.witness)
                                 : "UNKNOWN — " + v.reason;
  return emit(o, body, v.outcome, text);
}

int cmd_tsequence(const Options& o) {
  System sys = load_input(o);
  auto v = find_t_sequence(sys, budget_of(o));
  json body{{"command", "tsequence"}, {"net", sys.net.name()}};
  std::string text;
  if (v.is_yes()) {
    body["sequence"] = sequence_json(sys.net, *v.witness);
    text = "T-SEQUENCE " + sequence_str(sys.net, *v.witness);
  } else if (v.is_no()) {
    text = "NONE — " + v.reason;
  } else {
    text = "UNKNOWN — " + v.reason;
  }
  return emit(o, body, v.outcome, text);
}

int cmd_lrb(const Options& o) {
  System sys = load_input(o);
  LrbReport rep = lrb_report(sys, budget_of(o));
  json body{{"command", "lrb"},
            {"net", sys.net.name()},
            {"live", to_string(rep.live_fwd.outcome)},
            {"bounded", to_string(rep.bounded_fwd.outcome)},
            {"reversible", to_string(rep.reversible_fwd.outcome)},
            {"reverse_live", to_string(rep.live_rev.outcome)},
            {"reverse_bounded", to_string(rep.bounded_rev.outcome)},
            {"reverse_reversible", to_string(rep.reversible_rev.outcome)},
            {"property_L", to_string(rep.property_L)},
            {"property_R", to_string(rep.property_R)},
            {"property_B", to_string(rep.property_B)}};
  std::string text = "S: live=" + std::string(to_string(rep.live_fwd.outcome)) +
                     " bounded=" + to_string(rep.bounded_fwd.outcome) +
                     " reversible=" + to_string(rep.reversible_fwd.outcome) + "\n-S: live=" +
                     to_string(rep.live_rev.outcome) + " bounded=" +
                     to_string(rep.bounded_rev.outcome) + " reversible=" +
                     to_string(rep.reversible_rev.outcome) + "\nproperty L=" +
                     to_string(rep.property_L) + " R=" + to_string(rep.property_R) +
                     " B=" + to_string(rep.property_B);
  Outcome worst = Outcome::Yes;
  for (Outcome x : {rep.property_L, rep.property_R, rep.property_B})
    if (x == Outcome::Unknown) worst = Outcome::Unknown;
  return emit(o, body, worst, text);
}

int cmd_prr(const Options& o) {
  System sys = load_input(o);
  auto spec = load_spec(o);
  PrrVerdict v = prr_decide(sys, budget_of(o), spec ? &*spec : nullptr);
  json body{{"command", "prr"}, {"net", sys.net.name()}, {"reason", v.reason}};
  std::string text;
  Outcome outcome;
  if (v.kind == PrrVerdict::Kind::Equal) {
    outcome = Outcome::Yes;
    body["equal"] = true;
    if (v.certificate) body["rule"] = to_string(v.certificate->rule);
    text = "EQUAL — " + v.reason;
  } else if (v.kind == PrrVerdict::Kind::NotEqual) {
    outcome = Outcome::No;
    body["equal"] = false;
    body["witness"] = marking_json(sys.net, v.witness->first);
    json y = json::object();
    std::string ytext;
    for (int t = 0; t < sys.net.num_transitions(); ++t) {
      y[sys.net.transition_id(t)] = v.witness->second[t];
      ytext += (t ? "," : "") + sys.net.transition_id(t) + "=" +
               std::to_string(v.witness->second[t]);
    }
    body["witness_parikh"] = y;
    text = "NOT EQUAL — witness " + format_marking(sys.net, v.witness->first) + ", Y=(" +
           ytext + ")";
  } else {
    outcome = Outcome::Unknown;
    text = "UNKNOWN — " + v.reason;
  }
  return emit(o, body, outcome, text);
}

int cmd_reach(const Options& o) {
  System sys = load_input(o);
  if (o.marking.empty()) throw pnet_error("reach needs --marking");
  Marking target = parse_marking(sys.net, o.marking);
  auto spec = load_spec(o);
  ReachAnswer ans = is_reachable(sys, target, budget_of(o), spec ? &*spec : nullptr);
  json body{{"command", "reach"},
            {"net", sys.net.name()},
            {"target", marking_json(sys.net, target)},
            {"method", ans.method}};
  std::string text;
  if (ans.outcome == Outcome::Yes) {
    text = "REACHABLE";
    if (ans.sequence) {
      text += " via " + sequence_str(sys.net, *ans.sequence);
      body["sequence"] = sequence_json(sys.net, *ans.sequence);
    }
  } else if (ans.outcome == Outcome::No) {
    text = "UNREACHABLE — " + ans.method;
  } else {
    text = "UNKNOWN — " + ans.method;
  }
  return emit(o, body, ans.outcome, text);
}

int cmd_reverse(const Options& o) {
  System sys = load_input(o);
  System rev = reverse_system(sys);
  std::cout << serialize_net(rev);
  return 0;
}

int cmd_fixtures(const Options& o, const std::string& key) {
  if (!key.empty()) {
    const Fixture& f = fixture(key);
    System sys = load_fixture(f);
    std::cout << serialize_net(sys);
    return 0;
  }
  json body = json::array();
  for (const auto& f : fixtures()) {
    if (o.json_out) {
      json claims = json::object();
      for (const auto& [name, claim] : f.expected) claims[name] = claim.value;
      body.push_back({{"key", f.key}, {"file", f.file}, {"claims", claims}});
    } else {
      std::cout << f.key << " — " << f.summary << "\n";
      for (const auto& [name, claim] : f.expected)
        std::cout << "    " << name << ": " << claim.value << "\n";
    }
  }
  if (o.json_out) std::cout << json{{"schema", kSchema}, {"fixtures", body}}.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted Petri net analysis toolkit"};
  app.require_subcommand(1);
  Options o;
  std::string fixture_key;

  auto add_common = [&](CLI::App* cmd, bool needs_file = true) {
    if (needs_file) cmd->add_option("file", o.file, "net file (.pnet)")->required();
    cmd->add_flag("--json", o.json_out, "machine-readable output");
    cmd->add_flag("--strict", o.strict, "exit 1 on unknown verdicts");
    cmd->add_option("--max-states", o.max_states, "state cap for graph exploration");
    cmd->add_option("--y-bound", o.y_bound, "component bound for transition-count vectors");
    cmd->add_option("--token-bound", o.token_bound, "per-place token cutoff");
    cmd->add_option("--pcmg-spec", o.pcmg_spec, "place-composition spec (.pcmg)");
  };

  add_common(app.add_subcommand("validate", "parse and check a net file"));
  add_common(app.add_subcommand("classify", "structural subclass flags"));
  auto* siphons = app.add_subcommand("siphons", "minimal siphons (or traps)");
  add_common(siphons);
  siphons->add_flag("--traps", o.traps, "list traps instead");
  auto* rg = app.add_subcommand("rg", "build the reachability graph");
  add_common(rg);
  rg->add_option("--dot", o.dot_out, "write a dot rendering");
  auto* live_cmd = app.add_subcommand("live", "liveness");
  add_common(live_cmd);
  live_cmd->add_option("--method", o.method, "auto|rg|cf|circuit|wmg|pcmg|h1s")
      ->check(CLI::IsMember({"auto", "rg", "cf", "circuit", "wmg", "pcmg", "h1s"}));
  add_common(app.add_subcommand("bounded", "boundedness"));
  add_common(app.add_subcommand("reversible", "reversibility"));
  add_common(app.add_subcommand("tsequence", "find a feasible T-sequence"));
  add_common(app.add_subcommand("lrb", "liveness/boundedness/reversibility of S and -S"));
  add_common(app.add_subcommand("prr", "decide the PR-R equality"));
  auto* reach = app.add_subcommand("reach", "is a marking reachable");
  add_common(reach);
  reach->add_option("--marking", o.marking, "target, e.g. \"p1=1,p2=0\"")->required();
  add_common(app.add_subcommand("reverse", "print the arc-reversed net"));
  auto* fix = app.add_subcommand("fixtures", "list the bundled corpus");
  fix->add_option("key", fixture_key, "print one fixture as .pnet");
  fix->add_flag("--json", o.json_out, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string& sub = app.get_subcommands().front()->get_name();
    if (sub == "validate") return cmd_validate(o);
    if (sub == "classify") return cmd_classify(o);
    if (sub == "siphons") return cmd_siphons(o);
    if (sub == "rg") return cmd_rg(o);
    if (sub == "live") return cmd_live(o);
    if (sub == "bounded") return cmd_bounded(o);
    if (sub == "reversible") return cmd_reversible(o);
    if (sub == "tsequence") return cmd_tsequence(o);
    if (sub == "lrb") return cmd_lrb(o);
    if (sub == "prr") return cmd_prr(o);
    if (sub == "reach") return cmd_reach(o);
    if (sub == "reverse") return cmd_reverse(o);
    if (sub == "fixtures") return cmd_fixtures(o, fixture_key);
    std::cerr << "unknown subcommand\n";
    return 2;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const pnet_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
