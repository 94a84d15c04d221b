#include "pnetkit/net.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace pnetkit {

Net::Net(std::string name, std::vector<std::string> places,
         std::vector<std::string> transitions,
         const std::vector<std::tuple<std::string, std::string, Tokens>>& arcs)
    : name_(std::move(name)),
      place_ids_(std::move(places)),
      transition_ids_(std::move(transitions)) {
  for (int i = 0; i < num_places(); ++i) {
    if (!place_index_.emplace(place_ids_[i], i).second)
      throw pnet_error("duplicate place id: " + place_ids_[i]);
  }
  for (int i = 0; i < num_transitions(); ++i) {
    if (place_index_.count(transition_ids_[i]))
      throw pnet_error("id used for both place and transition: " + transition_ids_[i]);
    if (!transition_index_.emplace(transition_ids_[i], i).second)
      throw pnet_error("duplicate transition id: " + transition_ids_[i]);
  }
  pre_.resize(num_transitions());
  post_.resize(num_transitions());
  place_in_.resize(num_places());
  place_out_.resize(num_places());
  for (const auto& [from, to, w] : arcs) {
    if (w <= 0) throw pnet_error("zero or negative arc weight on " + from + " -> " + to);
    auto fp = find_place(from);
    if (fp) {
      int t = transition_index(to);
      pre_[t].push_back({*fp, w});
      place_out_[*fp].push_back({t, w});
    } else {
      int t = transition_index(from);
      int p = place_index(to);
      post_[t].push_back({p, w});
      place_in_[p].push_back({t, w});
    }
  }
  auto tidy = [](std::vector<std::vector<Arc>>& v, const char* what) {
    for (auto& arcs : v) {
      std::sort(arcs.begin(), arcs.end(),
                [](const Arc& a, const Arc& b) { return a.node < b.node; });
      for (size_t i = 1; i < arcs.size(); ++i)
        if (arcs[i].node == arcs[i - 1].node)
          throw pnet_error(std::string("duplicate arc in ") + what);
    }
  };
  tidy(pre_, "pre");
  tidy(post_, "post");
  tidy(place_in_, "place_in");
  tidy(place_out_, "place_out");
}

int Net::place_index(const std::string& id) const {
  auto it = place_index_.find(id);
  if (it == place_index_.end()) throw unknown_id_error(id);
  return it->second;
}

int Net::transition_index(const std::string& id) const {
  auto it = transition_index_.find(id);
  if (it == transition_index_.end()) throw unknown_id_error(id);
  return it->second;
}

std::optional<int> Net::find_place(const std::string& id) const {
  auto it = place_index_.find(id);
  if (it == place_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Net::find_transition(const std::string& id) const {
  auto it = transition_index_.find(id);
  if (it == transition_index_.end()) return std::nullopt;
  return it->second;
}

Tokens Net::weight_pt(int p, int t) const {
  for (const Arc& a : pre_[t])
    if (a.node == p) return a.weight;
  return 0;
}

Tokens Net::weight_tp(int t, int p) const {
  for (const Arc& a : post_[t])
    if (a.node == p) return a.weight;
  return 0;
}

bool Net::same_structure(const Net& other) const {
  if (num_places() != other.num_places() || num_transitions() != other.num_transitions())
    return false;
  for (const auto& id : place_ids_)
    if (!other.find_place(id)) return false;
  for (const auto& id : transition_ids_)
    if (!other.find_transition(id)) return false;
  for (int t = 0; t < num_transitions(); ++t) {
    int ot = *other.find_transition(transition_ids_[t]);
    for (int p = 0; p < num_places(); ++p) {
      int op = *other.find_place(place_ids_[p]);
      if (weight_pt(p, t) != other.weight_pt(op, ot)) return false;
      if (weight_tp(t, p) != other.weight_tp(ot, op)) return false;
    }
  }
  return true;
}

bool same_system(const System& a, const System& b) {
  if (!a.net.same_structure(b.net)) return false;
  for (int p = 0; p < a.net.num_places(); ++p)
    if (a.m0[p] != b.m0[*b.net.find_place(a.net.place_id(p))]) return false;
  return true;
}

std::vector<std::string> preset(const Net& net, const std::string& node) {
  std::vector<std::string> out;
  if (auto p = net.find_place(node)) {
    for (const auto& a : net.place_in(*p)) out.push_back(net.transition_id(a.node));
    return out;
  }
  int t = net.transition_index(node);
  for (const auto& a : net.pre(t)) out.push_back(net.place_id(a.node));
  return out;
}

std::vector<std::string> postset(const Net& net, const std::string& node) {
  std::vector<std::string> out;
  if (auto p = net.find_place(node)) {
    for (const auto& a : net.place_out(*p)) out.push_back(net.transition_id(a.node));
    return out;
  }
  int t = net.transition_index(node);
  for (const auto& a : net.post(t)) out.push_back(net.place_id(a.node));
  return out;
}

bool enabled(const Net& net, const Marking& m, int t) {
  for (const auto& a : net.pre(t))
    if (m[a.node] < a.weight) return false;
  return true;
}

static int blocking_place(const Net& net, const Marking& m, int t) {
  for (const auto& a : net.pre(t))
    if (m[a.node] < a.weight) return a.node;
  return -1;
}

Marking fire(const Net& net, const Marking& m, int t) {
  int blk = blocking_place(net, m, t);
  if (blk >= 0) throw not_enabled_error(net.transition_id(t), net.place_id(blk), -1);
  Marking out = m;
  for (const auto& a : net.pre(t)) out[a.node] -= a.weight;
  for (const auto& a : net.post(t)) out[a.node] += a.weight;
  return out;
}

Marking fire_sequence(const Net& net, const Marking& m, const FiringSequence& seq) {
  Marking cur = m;
  for (size_t k = 0; k < seq.size(); ++k) {
    int t = seq[k];
    int blk = blocking_place(net, cur, t);
    if (blk >= 0)
      throw not_enabled_error(net.transition_id(t), net.place_id(blk), static_cast<int>(k));
    for (const auto& a : net.pre(t)) cur[a.node] -= a.weight;
    for (const auto& a : net.post(t)) cur[a.node] += a.weight;
  }
  return cur;
}

bool is_deadlock(const Net& net, const Marking& m) {
  for (int t = 0; t < net.num_transitions(); ++t)
    if (enabled(net, m, t)) return false;
  return true;
}

TVector parikh(const Net& net, const FiringSequence& seq) {
  TVector out(net.num_transitions(), 0);
  for (int t : seq) ++out[t];
  return out;
}

FiringSequence residue_tvector(const Net&, const FiringSequence& tau, const TVector& y) {
  TVector remaining = y;
  std::vector<bool> erased(tau.size(), false);
  for (size_t i = 0; i < tau.size(); ++i) {
    if (remaining[tau[i]] > 0) {
      erased[i] = true;
      --remaining[tau[i]];
    }
  }
  FiringSequence out;
  for (size_t i = 0; i < tau.size(); ++i)
    if (!erased[i]) out.push_back(tau[i]);
  return out;
}

FiringSequence reverse_sequence(const FiringSequence& seq) {
  return FiringSequence(seq.rbegin(), seq.rend());
}

static std::vector<std::tuple<std::string, std::string, Tokens>> all_arcs(const Net& net) {
  std::vector<std::tuple<std::string, std::string, Tokens>> arcs;
  for (int t = 0; t < net.num_transitions(); ++t) {
    for (const auto& a : net.pre(t))
      arcs.emplace_back(net.place_id(a.node), net.transition_id(t), a.weight);
    for (const auto& a : net.post(t))
      arcs.emplace_back(net.transition_id(t), net.place_id(a.node), a.weight);
  }
  return arcs;
}

Net reverse_net(const Net& net) {
  std::vector<std::tuple<std::string, std::string, Tokens>> arcs;
  for (int t = 0; t < net.num_transitions(); ++t) {
    for (const auto& a : net.pre(t))
      arcs.emplace_back(net.transition_id(t), net.place_id(a.node), a.weight);
    for (const auto& a : net.post(t))
      arcs.emplace_back(net.place_id(a.node), net.transition_id(t), a.weight);
  }
  return Net(net.name(), net.place_ids(), net.transition_ids(), arcs);
}

System reverse_system(const System& sys) { return {reverse_net(sys.net), sys.m0}; }

Net p_subnet(const Net& net, const std::vector<std::string>& places) {
  std::set<int> keep;
  for (const auto& id : places) keep.insert(net.place_index(id));
  std::set<int> trans;  // •P' ∪ P'•
  for (int p : keep) {
    for (const auto& a : net.place_in(p)) trans.insert(a.node);
    for (const auto& a : net.place_out(p)) trans.insert(a.node);
  }
  std::vector<std::string> ps, ts;
  for (int p = 0; p < net.num_places(); ++p)
    if (keep.count(p)) ps.push_back(net.place_id(p));
  for (int t = 0; t < net.num_transitions(); ++t)
    if (trans.count(t)) ts.push_back(net.transition_id(t));
  std::vector<std::tuple<std::string, std::string, Tokens>> arcs;
  for (int t : trans) {
    for (const auto& a : net.pre(t))
      if (keep.count(a.node))
        arcs.emplace_back(net.place_id(a.node), net.transition_id(t), a.weight);
    for (const auto& a : net.post(t))
      if (keep.count(a.node))
        arcs.emplace_back(net.transition_id(t), net.place_id(a.node), a.weight);
  }
  return Net(net.name(), ps, ts, arcs);
}

Net t_subnet(const Net& net, const std::vector<std::string>& transitions) {
  std::set<int> keep;
  for (const auto& id : transitions) keep.insert(net.transition_index(id));
  std::set<int> places;  // •T' ∪ T'•
  for (int t : keep) {
    for (const auto& a : net.pre(t)) places.insert(a.node);
    for (const auto& a : net.post(t)) places.insert(a.node);
  }
  std::vector<std::string> ps, ts;
  for (int p = 0; p < net.num_places(); ++p)
    if (places.count(p)) ps.push_back(net.place_id(p));
  for (int t = 0; t < net.num_transitions(); ++t)
    if (keep.count(t)) ts.push_back(net.transition_id(t));
  std::vector<std::tuple<std::string, std::string, Tokens>> arcs;
  for (int t : keep) {
    for (const auto& a : net.pre(t))
      arcs.emplace_back(net.place_id(a.node), net.transition_id(t), a.weight);
    for (const auto& a : net.post(t))
      arcs.emplace_back(net.transition_id(t), net.place_id(a.node), a.weight);
  }
  return Net(net.name(), ps, ts, arcs);
}

static Marking restrict_marking(const Net& sub, const Net& net, const Marking& m) {
  Marking out(sub.num_places(), 0);
  for (int p = 0; p < sub.num_places(); ++p) out[p] = m[net.place_index(sub.place_id(p))];
  return out;
}

System p_subsystem(const System& sys, const std::vector<std::string>& places) {
  Net sub = p_subnet(sys.net, places);
  Marking m = restrict_marking(sub, sys.net, sys.m0);
  return {std::move(sub), std::move(m)};
}

System t_subsystem(const System& sys, const std::vector<std::string>& transitions) {
  Net sub = t_subnet(sys.net, transitions);
  Marking m = restrict_marking(sub, sys.net, sys.m0);
  return {std::move(sub), std::move(m)};
}

MergeResult merge_places(const Net& net, const std::vector<MergeGroup>& groups) {
  std::map<std::string, std::string> place_map;
  std::set<std::string> seen;
  for (const auto& g : groups) {
    if (g.members.empty()) throw pnet_error("empty merge group " + g.id);
    for (const auto& m : g.members) {
      net.place_index(m);  // id check
      if (!seen.insert(m).second) throw pnet_error("overlapping merge groups at place " + m);
      place_map[m] = g.id;
    }
  }
  std::vector<std::string> places;
  for (const auto& g : groups) places.push_back(g.id);
  for (const auto& id : net.place_ids()) {
    if (!place_map.count(id)) {
      place_map[id] = id;
      places.push_back(id);
    }
  }
  // Sum weights per (merged place, transition) pair.
  std::map<std::pair<std::string, std::string>, Tokens> in_w, out_w;
  for (const auto& [from, to, w] : all_arcs(net)) {
    if (net.find_place(from))
      in_w[{place_map.at(from), to}] += w;
    else
      out_w[{place_map.at(to), from}] += w;
  }
  std::vector<std::tuple<std::string, std::string, Tokens>> arcs;
  for (const auto& [k, w] : in_w) arcs.emplace_back(k.first, k.second, w);
  for (const auto& [k, w] : out_w) arcs.emplace_back(k.second, k.first, w);
  Net merged(net.name(), places, net.transition_ids(), arcs);
  return {std::move(merged), std::move(place_map)};
}

Marking merge_marking(const Net& net, const std::vector<MergeGroup>& groups, const Marking& m) {
  MergeResult r = merge_places(net, groups);
  Marking out(r.net.num_places(), 0);
  for (int p = 0; p < net.num_places(); ++p)
    out[r.net.place_index(r.place_map.at(net.place_id(p)))] += m[p];
  return out;
}

Marking marking_of(const Net& net, const std::vector<std::pair<std::string, Tokens>>& entries) {
  Marking out(net.num_places(), 0);
  for (const auto& [id, v] : entries) out[net.place_index(id)] = v;
  return out;
}

FiringSequence sequence_of(const Net& net, const std::vector<std::string>& transition_ids) {
  FiringSequence out;
  for (const auto& id : transition_ids) out.push_back(net.transition_index(id));
  return out;
}

std::string format_marking(const Net& net, const Marking& m) {
  std::ostringstream os;
  os << "(";
  for (int p = 0; p < net.num_places(); ++p) {
    if (p) os << ",";
    os << net.place_id(p) << "=" << m[p];
  }
  os << ")";
  return os.str();
}

Net delete_places(const Net& net, const std::vector<int>& places) {
  std::set<int> gone(places.begin(), places.end());
  std::vector<std::string> ps;
  for (int p = 0; p < net.num_places(); ++p)
    if (!gone.count(p)) ps.push_back(net.place_id(p));
  std::vector<std::tuple<std::string, std::string, Tokens>> arcs;
  for (int t = 0; t < net.num_transitions(); ++t) {
    for (const auto& a : net.pre(t))
      if (!gone.count(a.node))
        arcs.emplace_back(net.place_id(a.node), net.transition_id(t), a.weight);
    for (const auto& a : net.post(t))
      if (!gone.count(a.node))
        arcs.emplace_back(net.transition_id(t), net.place_id(a.node), a.weight);
  }
  return Net(net.name(), ps, net.transition_ids(), arcs);
}

bool weakly_connected(const Net& net) {
  int n = net.num_places() + net.num_transitions();
  if (n == 0) return true;
  std::vector<std::vector<int>> adj(n);
  auto pid = [&](int p) { return p; };
  auto tid = [&](int t) { return net.num_places() + t; };
  for (int t = 0; t < net.num_transitions(); ++t) {
    for (const auto& a : net.pre(t)) {
      adj[pid(a.node)].push_back(tid(t));
      adj[tid(t)].push_back(pid(a.node));
    }
    for (const auto& a : net.post(t)) {
      adj[pid(a.node)].push_back(tid(t));
      adj[tid(t)].push_back(pid(a.node));
    }
  }
  std::vector<bool> vis(n, false);
  std::vector<int> stack{0};
  vis[0] = true;
  int count = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++count;
    for (int w : adj[v])
      if (!vis[w]) {
        vis[w] = true;
        stack.push_back(w);
      }
  }
  return count == n;
}

}  // namespace pnetkit
