#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pnetkit {

using Tokens = long long;

// Dense vectors indexed by declaration order.
using Marking = std::vector<Tokens>;
using TVector = std::vector<Tokens>;
using PVector = std::vector<Tokens>;

// Transition indices into Net::transition_ids.
using FiringSequence = std::vector<int>;

struct pnet_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct unknown_id_error : pnet_error {
  explicit unknown_id_error(const std::string& id)
      : pnet_error("unknown id: " + id), id(id) {}
  std::string id;
};

struct not_enabled_error : pnet_error {
  not_enabled_error(const std::string& t, const std::string& p, int step)
      : pnet_error(step < 0 ? "transition " + t + " not enabled (blocked by " + p + ")"
                            : "step " + std::to_string(step) + ": transition " + t +
                                  " not enabled (blocked by " + p + ")"),
        transition(t), blocking_place(p), step(step) {}
  std::string transition;
  std::string blocking_place;
  int step;  // -1 for single fire, else 0-based position in the sequence
};

struct precondition_error : pnet_error {
  using pnet_error::pnet_error;
};

/// Weighted place/transition net. Identifiers are unique strings; dense
/// indices follow declaration order. Absent arc = weight 0; stored arcs
/// always carry a positive weight. Immutable after construction.
class Net {
 public:
  struct Arc {
    int node;       // place index (in pre/post) or transition index (in place views)
    Tokens weight;  // > 0
  };

  Net() = default;
  Net(std::string name, std::vector<std::string> places,
      std::vector<std::string> transitions,
      const std::vector<std::tuple<std::string, std::string, Tokens>>& arcs);

  const std::string& name() const { return name_; }
  int num_places() const { return static_cast<int>(place_ids_.size()); }
  int num_transitions() const { return static_cast<int>(transition_ids_.size()); }

  const std::vector<std::string>& place_ids() const { return place_ids_; }
  const std::vector<std::string>& transition_ids() const { return transition_ids_; }
  const std::string& place_id(int p) const { return place_ids_[p]; }
  const std::string& transition_id(int t) const { return transition_ids_[t]; }

  int place_index(const std::string& id) const;            // throws unknown_id_error
  int transition_index(const std::string& id) const;       // throws unknown_id_error
  std::optional<int> find_place(const std::string& id) const;
  std::optional<int> find_transition(const std::string& id) const;

  // Arcs sorted by node index.
  const std::vector<Arc>& pre(int t) const { return pre_[t]; }    // input places of t
  const std::vector<Arc>& post(int t) const { return post_[t]; }  // output places of t
  const std::vector<Arc>& place_in(int p) const { return place_in_[p]; }    // producers
  const std::vector<Arc>& place_out(int p) const { return place_out_[p]; }  // consumers

  Tokens weight_pt(int p, int t) const;  // W(p,t)
  Tokens weight_tp(int t, int p) const;  // W(t,p)

  bool same_structure(const Net& other) const;  // same ids and weights, order-insensitive

 private:
  std::string name_;
  std::vector<std::string> place_ids_;
  std::vector<std::string> transition_ids_;
  std::vector<std::vector<Arc>> pre_, post_;            // per transition
  std::vector<std::vector<Arc>> place_in_, place_out_;  // per place
  std::map<std::string, int> place_index_, transition_index_;
};

struct System {
  Net net;
  Marking m0;
};

bool same_system(const System& a, const System& b);  // same_structure + same marking by id

// -- pre/post sets ------------------------------------------------------

// The node argument is an identifier; result is the set of neighbour ids.
std::vector<std::string> preset(const Net& net, const std::string& node);
std::vector<std::string> postset(const Net& net, const std::string& node);

// -- firing semantics ---------------------------------------------------

bool enabled(const Net& net, const Marking& m, int t);
Marking fire(const Net& net, const Marking& m, int t);  // throws not_enabled_error
Marking fire_sequence(const Net& net, const Marking& m, const FiringSequence& seq);
bool is_deadlock(const Net& net, const Marking& m);

// -- sequence algebra ---------------------------------------------------

TVector parikh(const Net& net, const FiringSequence& seq);

// Left residue: erase from tau the leftmost occurrences of sigma's symbols,
// read left to right. Works on any symbol type.
template <class Sym>
std::vector<Sym> residue(std::vector<Sym> tau, const std::vector<Sym>& sigma) {
  std::vector<bool> erased(tau.size(), false);
  for (const Sym& s : sigma) {
    for (size_t i = 0; i < tau.size(); ++i) {
      if (!erased[i] && tau[i] == s) {
        erased[i] = true;
        break;
      }
    }
  }
  std::vector<Sym> out;
  for (size_t i = 0; i < tau.size(); ++i)
    if (!erased[i]) out.push_back(tau[i]);
  return out;
}

// T-vector residue: remove min{P(tau)(t), y(t)} leftmost occurrences per t.
FiringSequence residue_tvector(const Net& net, const FiringSequence& tau, const TVector& y);

FiringSequence reverse_sequence(const FiringSequence& seq);

// -- reverse nets -------------------------------------------------------

Net reverse_net(const Net& net);
System reverse_system(const System& sys);

// -- subnets ------------------------------------------------------------

Net p_subnet(const Net& net, const std::vector<std::string>& places);
Net t_subnet(const Net& net, const std::vector<std::string>& transitions);
System p_subsystem(const System& sys, const std::vector<std::string>& places);
System t_subsystem(const System& sys, const std::vector<std::string>& transitions);

// -- place merging ------------------------------------------------------

struct MergeGroup {
  std::string id;                    // id of the merged place
  std::vector<std::string> members;  // mutually disjoint across groups
};

struct MergeResult {
  Net net;
  std::map<std::string, std::string> place_map;  // old id -> new id (identity if untouched)
};

MergeResult merge_places(const Net& net, const std::vector<MergeGroup>& groups);
Marking merge_marking(const Net& net, const std::vector<MergeGroup>& groups, const Marking& m);

// -- misc helpers -------------------------------------------------------

// Marking literal by place name; unlisted places default to 0.
Marking marking_of(const Net& net, const std::vector<std::pair<std::string, Tokens>>& entries);

FiringSequence sequence_of(const Net& net, const std::vector<std::string>& transition_ids);

std::string format_marking(const Net& net, const Marking& m);

// Net with the given places removed (arcs to them dropped). Used by the
// subclass checks that delete shared places.
Net delete_places(const Net& net, const std::vector<int>& places);

bool weakly_connected(const Net& net);

}  // namespace pnetkit
