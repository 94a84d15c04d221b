#include "pnetkit/pcmg.hpp"

#include <algorithm>
#include <set>

namespace pnetkit {

namespace {

bool strongly_connected_graph(const Net& net) {
  int np = net.num_places(), n = np + net.num_transitions();
  if (n == 0) return true;
  std::vector<std::vector<int>> fwd(n), bwd(n);
  for (int t = 0; t < net.num_transitions(); ++t) {
    for (const auto& a : net.pre(t)) {
      fwd[a.node].push_back(np + t);
      bwd[np + t].push_back(a.node);
    }
    for (const auto& a : net.post(t)) {
      fwd[np + t].push_back(a.node);
      bwd[a.node].push_back(np + t);
    }
  }
  auto reach_all = [&](const std::vector<std::vector<int>>& adj) {
    std::vector<bool> vis(n, false);
    std::vector<int> stack{0};
    vis[0] = true;
    int cnt = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++cnt;
      for (int w : adj[v])
        if (!vis[w]) {
          vis[w] = true;
          stack.push_back(w);
        }
    }
    return cnt == n;
  };
  return reach_all(fwd) && reach_all(bwd);
}

bool is_mg(const Net& net, std::string* why) {
  for (int t = 0; t < net.num_transitions(); ++t) {
    for (const auto& a : net.pre(t))
      if (a.weight != 1) {
        if (why) *why = "weighted arc at " + net.transition_id(t);
        return false;
      }
    for (const auto& a : net.post(t))
      if (a.weight != 1) {
        if (why) *why = "weighted arc at " + net.transition_id(t);
        return false;
      }
  }
  for (int p = 0; p < net.num_places(); ++p)
    if (net.place_in(p).size() != 1 || net.place_out(p).size() != 1) {
      if (why) *why = "place " + net.place_id(p) + " not 1-in/1-out";
      return false;
    }
  return true;
}

bool is_mg_le(const Net& net) {
  for (int t = 0; t < net.num_transitions(); ++t) {
    for (const auto& a : net.pre(t))
      if (a.weight != 1) return false;
    for (const auto& a : net.post(t))
      if (a.weight != 1) return false;
  }
  for (int p = 0; p < net.num_places(); ++p)
    if (net.place_in(p).size() > 1 || net.place_out(p).size() > 1) return false;
  return true;
}

int vertex_index(const PcmgSpec& spec, const std::string& id) {
  for (size_t i = 0; i < spec.vertices.size(); ++i)
    if (spec.vertices[i] == id) return static_cast<int>(i);
  throw precondition_error("pcmg: unknown vertex " + id);
}

}  // namespace

void validate(const PcmgSpec& spec) {
  if (spec.vertices.empty()) throw precondition_error("pcmg: no vertices");
  if (spec.edges.empty()) throw precondition_error("pcmg: no edges to refine");
  std::set<std::string> vs(spec.vertices.begin(), spec.vertices.end());
  if (vs.size() != spec.vertices.size()) throw precondition_error("pcmg: duplicate vertex");
  std::set<std::string> es;
  for (const auto& e : spec.edges) {
    if (!es.insert(e.id).second) throw precondition_error("pcmg: duplicate edge " + e.id);
    if (e.a == e.b) throw precondition_error("pcmg: self-loop edge " + e.id);
    vertex_index(spec, e.a);
    vertex_index(spec, e.b);
  }
  if (spec.components.size() != spec.edges.size())
    throw precondition_error("pcmg: components and edges must be in bijection");
  std::set<std::string> covered;
  std::set<std::string> ids(vs);
  for (const auto& c : spec.components) {
    if (!es.count(c.edge)) throw precondition_error("pcmg: component for unknown edge " + c.edge);
    if (!covered.insert(c.edge).second)
      throw precondition_error("pcmg: duplicate component for edge " + c.edge);
    if (c.system.net.num_places() < 2)
      throw precondition_error("pcmg: component " + c.edge + " has fewer than 2 places");
    if (!weakly_connected(c.system.net))
      throw precondition_error("pcmg: component " + c.edge + " is not connected");
    if (!is_mg_le(c.system.net))
      throw precondition_error("pcmg: component " + c.edge + " is not an MG<=");
    if (c.place_a == c.place_b)
      throw precondition_error("pcmg: component " + c.edge + " gamma places must differ");
    c.system.net.place_index(c.place_a);
    c.system.net.place_index(c.place_b);
    for (const auto& id : c.system.net.place_ids()) {
      bool gamma = id == c.place_a || id == c.place_b;
      if (!gamma && !ids.insert(id).second)
        throw precondition_error("pcmg: duplicate place id " + id);
      if (gamma && vs.count(id)) throw precondition_error("pcmg: gamma place clashes with vertex " + id);
    }
    for (const auto& id : c.system.net.transition_ids())
      if (!ids.insert(id).second) throw precondition_error("pcmg: duplicate transition id " + id);
  }
  // connectedness of G
  int n = static_cast<int>(spec.vertices.size());
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : spec.edges) {
    int a = vertex_index(spec, e.a), b = vertex_index(spec, e.b);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> vis(n, false);
  std::vector<int> stack{0};
  vis[0] = true;
  int cnt = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++cnt;
    for (int w : adj[v])
      if (!vis[w]) {
        vis[w] = true;
        stack.push_back(w);
      }
  }
  if (cnt != n) throw precondition_error("pcmg: graph not connected");
}

BuiltPcmg build_pcmg(const PcmgSpec& spec) {
  validate(spec);
  // disjoint union, components in edge order
  std::vector<std::string> places, transitions;
  std::vector<std::tuple<std::string, std::string, Tokens>> arcs;
  std::map<std::string, Tokens> tokens;
  std::vector<MergeGroup> groups;
  std::map<std::string, std::vector<std::string>> vertex_members;

  auto component_of = [&](const std::string& edge) -> const PcmgSpec::Component& {
    for (const auto& c : spec.components)
      if (c.edge == edge) return c;
    throw precondition_error("pcmg: missing component " + edge);
  };

  for (const auto& e : spec.edges) {
    const auto& c = component_of(e.id);
    const Net& cn = c.system.net;
    // gamma places get edge-qualified temporary names to stay unique
    auto local = [&](const std::string& id) {
      if (id == c.place_a || id == c.place_b) return e.id + ":" + id;
      return id;
    };
    for (int p = 0; p < cn.num_places(); ++p) {
      places.push_back(local(cn.place_id(p)));
      tokens[places.back()] = c.system.m0[p];
    }
    for (const auto& id : cn.transition_ids()) transitions.push_back(id);
    for (int t = 0; t < cn.num_transitions(); ++t) {
      for (const auto& a : cn.pre(t))
        arcs.emplace_back(local(cn.place_id(a.node)), cn.transition_id(t), a.weight);
      for (const auto& a : cn.post(t))
        arcs.emplace_back(cn.transition_id(t), local(cn.place_id(a.node)), a.weight);
    }
    vertex_members[e.a].push_back(e.id + ":" + c.place_a);
    vertex_members[e.b].push_back(e.id + ":" + c.place_b);
  }
  Net united(spec.name, places, transitions, arcs);
  Marking united_m0(united.num_places(), 0);
  for (int p = 0; p < united.num_places(); ++p) united_m0[p] = tokens[united.place_id(p)];

  for (const auto& v : spec.vertices) groups.push_back({v, vertex_members[v]});
  MergeResult merged = merge_places(united, groups);
  Marking m0 = merge_marking(united, groups, united_m0);

  BuiltPcmg out;
  out.system = {std::move(merged.net), std::move(m0)};
  for (auto& [old_id, new_id] : merged.place_map) {
    // strip the edge qualifier in the provenance keys
    auto colon = old_id.find(':');
    out.place_provenance[colon == std::string::npos ? old_id : old_id.substr(colon + 1)] = new_id;
  }
  return out;
}

bool graph_acyclic(const PcmgSpec& spec) {
  // connected graph: acyclic iff |E| = |V| - 1
  return spec.edges.size() + 1 == spec.vertices.size();
}

WellStructuredReport well_structured(const PcmgSpec& spec) {
  validate(spec);
  WellStructuredReport rep;
  rep.well_structured = true;
  for (const auto& c : spec.components) {
    WellStructuredReport::ComponentVerdict v;
    v.edge = c.edge;
    std::string why;
    bool mg = is_mg(c.system.net, &why);
    bool sc = mg && strongly_connected_graph(c.system.net);
    v.strongly_connected_mg = mg && sc;
    if (!mg)
      v.detail = why;
    else if (!sc)
      v.detail = "not strongly connected";
    rep.well_structured = rep.well_structured && v.strongly_connected_mg;
    rep.components.push_back(std::move(v));
  }
  rep.acyclic_g = graph_acyclic(spec);
  return rep;
}

namespace {

bool state_machine_subnet(const Net& sub, std::string* why) {
  for (int t = 0; t < sub.num_transitions(); ++t) {
    if (sub.pre(t).size() != 1 || sub.post(t).size() != 1) {
      if (why)
        *why = "transition " + sub.transition_id(t) + " is not 1-in/1-out in the subnet";
      return false;
    }
    if (sub.pre(t)[0].weight != 1 || sub.post(t)[0].weight != 1) {
      if (why) *why = "weighted arc at " + sub.transition_id(t);
      return false;
    }
  }
  if (!strongly_connected_graph(sub)) {
    if (why) *why = "subnet not strongly connected";
    return false;
  }
  return true;
}

}  // namespace

SiphonStructureReport siphon_structure_check(const System& sys, const PcmgSpec& spec) {
  SiphonStructureReport rep;
  WellStructuredReport ws = well_structured(spec);
  rep.applicable = ws.well_structured && ws.acyclic_g;

  auto run = [&](SiphonOrTrap::Kind kind) {
    SiphonList list = kind == SiphonOrTrap::Kind::Siphon ? minimal_siphons(sys.net)
                                                         : minimal_traps(sys.net);
    for (const auto& item : list.items) {
      std::vector<std::string> ids;
      for (int p : item.places) ids.push_back(sys.net.place_id(p));
      Net sub = p_subnet(sys.net, ids);
      std::string why;
      if (!state_machine_subnet(sub, &why)) rep.violations.push_back({kind, item.places, why});
    }
  };
  run(SiphonOrTrap::Kind::Siphon);
  run(SiphonOrTrap::Kind::Trap);
  rep.all_state_machines = rep.violations.empty();
  return rep;
}

}  // namespace pnetkit
