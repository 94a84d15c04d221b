#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pnetkit/structure.hpp"
#include "testutil.hpp"

using namespace pnetkit;
using namespace pnetkit::testutil;

namespace {

std::set<int> places_of(const Net& net, std::initializer_list<std::string> ids) {
  std::set<int> out;
  for (const auto& id : ids) out.insert(net.place_index(id));
  return out;
}

void check_chain(const ClassReport& r) {
  if (r.ordinary) CHECK(r.homogeneous);
  if (r.marked_graph) CHECK(r.wmg);
  if (r.wmg) CHECK(r.wmg_le);
  if (r.wmg_le) CHECK(r.choice_free);
  if (r.choice_free) CHECK(r.free_choice);
  if (r.free_choice) CHECK(r.asymmetric_choice);
  CHECK(r.hfc == (r.homogeneous && r.free_choice));
}

}  // namespace

TEST_CASE("classification flags") {
  CHECK(classify(fx("fig1").net).wmg_le);
  CHECK(classify(fx("exsubclasses2_hfc").net).hfc);
  CHECK_FALSE(classify(fx("exsubclasses2_hfc").net).choice_free);
  CHECK_FALSE(classify(fx("exsubclasses2_nonac").net).asymmetric_choice);
  CHECK(classify(fx("exsubclasses2_hac").net).asymmetric_choice);
  CHECK_FALSE(classify(fx("exsubclasses2_hac").net).free_choice);
  CHECK(classify(fx("exsubclasses2_sm").net).state_machine);
  CHECK(classify(fx("exsubclasses1_left").net).ordinary);
  CHECK_FALSE(classify(fx("exsubclasses1_right").net).ordinary);
  CHECK(classify(fx("exsubclasses1_right").net).homogeneous);

  ClassReport one = classify(fx("onechoicewmg").net);
  CHECK(one.k == 1);
  CHECK(one.h1s_wmg_le);

  ClassReport two = classify(fx("twoewmg").net);
  CHECK(two.k == 4);
  CHECK(two.ks_wmg_le);
  CHECK_FALSE(two.homogeneous);

  CHECK(classify(fx("nonrev2p_mg").net).marked_graph);
  CHECK(classify(fx("figcomparison_h1s").net).h1s_wmg_le);
  CHECK(classify(fx("figcomparison_hfc").net).hfc);
}

TEST_CASE("classification chain on random nets") {
  Rng rng(61);
  for (int i = 0; i < 1000; ++i) check_chain(classify(random_net(rng).net));
  for (const auto& f : fixtures()) check_chain(classify(load_fixture(f).net));
}

TEST_CASE("siphon and trap membership") {
  System sys = fx("fig1");
  std::set<int> s13 = places_of(sys.net, {"p1", "p3"});
  CHECK(is_siphon(sys.net, s13));
  CHECK(is_trap(sys.net, s13));
  std::set<int> s1 = places_of(sys.net, {"p1"});
  CHECK_FALSE(is_siphon(sys.net, s1));
  CHECK_FALSE(is_trap(sys.net, s1));

  Net middle = t_subnet(sys.net, {"t2"});
  CHECK(is_siphon(middle, places_of(middle, {"p3"})));
  CHECK_FALSE(is_trap(middle, places_of(middle, {"p3"})));
  CHECK(is_trap(middle, places_of(middle, {"p1"})));
  CHECK_FALSE(is_siphon(middle, places_of(middle, {"p1"})));

  // the empty set counts as both
  CHECK(is_siphon(sys.net, {}));
  CHECK(is_trap(sys.net, {}));
}

TEST_CASE("maximal siphon within a subset") {
  System sys = fx("fig1");
  Net middle = t_subnet(sys.net, {"t2"});
  // {p1,p3} is itself a siphon of the one-transition subnet (its only
  // input t2 also consumes from p3), so the fixpoint keeps both places
  CHECK(max_siphon_in(middle, places_of(middle, {"p1", "p3"})) ==
        places_of(middle, {"p1", "p3"}));
  CHECK(max_trap_in(middle, places_of(middle, {"p3"})).empty());

  std::set<int> all = places_of(sys.net, {"p1", "p2", "p3", "p4"});
  CHECK(max_siphon_in(sys.net, all) == all);
  CHECK(max_trap_in(sys.net, all) == all);
  CHECK(max_siphon_in(sys.net, {}).empty());

  // equals the union of all siphons inside Q
  Rng rng(71);
  for (int i = 0; i < 150; ++i) {
    System r = random_net(rng, 6, 5);
    std::set<int> q;
    for (int p = 0; p < r.net.num_places(); ++p)
      if (rng.upto(1)) q.insert(p);
    std::set<int> expect;
    for (const auto& s : all_siphons_in(r.net, q))
      for (int p : s) expect.insert(p);
    CHECK(max_siphon_in(r.net, q) == expect);
  }
}

TEST_CASE("minimal siphons") {
  {
    SiphonList list = minimal_siphons(fx("twoewmg").net);
    REQUIRE(list.complete);
    REQUIRE(list.items.size() == 2);
    const Net& net = fx("twoewmg").net;
    CHECK(list.items[0].places == places_of(net, {"p0", "p1"}));
    CHECK(list.items[1].places == places_of(net, {"p2", "p3"}));
  }
  {
    System sys = fx("ce2choice");
    SiphonList list = minimal_siphons(sys.net);
    bool found = false;
    for (const auto& s : list.items)
      if (s.places == places_of(sys.net, {"p9", "p10"})) found = true;
    CHECK(found);
  }
  {
    System sys = fx("fig1");
    SiphonList list = minimal_siphons(sys.net);
    REQUIRE(list.items.size() == 2);
    CHECK(list.items[0].places == places_of(sys.net, {"p1", "p3"}));
    CHECK(list.items[1].places == places_of(sys.net, {"p2", "p4"}));
  }
  // every returned set is a siphon and no proper non-empty subset is
  Rng rng(83);
  for (int i = 0; i < 80; ++i) {
    System r = random_net(rng, 7, 5);
    std::set<int> everything;
    for (int p = 0; p < r.net.num_places(); ++p) everything.insert(p);
    for (const auto& s : minimal_siphons(r.net).items) {
      CHECK(is_siphon(r.net, s.places));
      for (const auto& sub : all_siphons_in(r.net, s.places))
        if (!sub.empty() && sub != s.places) CHECK(false);
    }
  }
}

TEST_CASE("amg recognition") {
  {
    System sys = fx("examg_left");
    auto v = check_amg(sys);
    REQUIRE(v.is_yes());
    const AmgWitness& w = *v.witness;
    REQUIRE(w.resources == std::vector<int>{sys.net.place_index("p5")});
    REQUIRE(w.pairings.size() == 1);
    const auto& pairing = w.pairings[0];
    std::set<std::pair<std::string, std::string>> pairs;
    for (auto [a, b] : pairing.pairs)
      pairs.insert({sys.net.transition_id(a), sys.net.transition_id(b)});
    CHECK(pairs == std::set<std::pair<std::string, std::string>>{{"t1", "t3"}, {"t2", "t4"}});
    // paths: elementary, inside G, unmarked
    for (const auto& path : pairing.paths) {
      std::set<std::string> seen;
      for (const auto& id : path) {
        CHECK(seen.insert(id).second);
        CHECK((w.underlying_mg.find_place(id) || w.underlying_mg.find_transition(id)));
        if (w.underlying_mg.find_place(id)) CHECK(sys.m0[sys.net.place_index(id)] == 0);
      }
    }
  }
  // pairings are bijections between the consumers and producers of each
  // resource, on every accepted fixture
  for (const char* key : {"examg_left", "cepramg_left", "cepramg_mid", "ce2choice",
                          "amgvspcmg_right"}) {
    System sys = fx(key);
    auto v = check_amg(sys);
    REQUIRE(v.is_yes());
    for (const auto& pairing : v.witness->pairings) {
      std::set<int> as, bs, outs, ins;
      for (auto [a, b] : pairing.pairs) {
        CHECK(as.insert(a).second);
        CHECK(bs.insert(b).second);
      }
      for (const auto& arc : sys.net.place_out(pairing.resource)) outs.insert(arc.node);
      for (const auto& arc : sys.net.place_in(pairing.resource)) ins.insert(arc.node);
      CHECK(as == outs);
      CHECK(bs == ins);
    }
  }
  CHECK(check_amg(fx("examg_right")).is_no());
  CHECK(check_amg(fx("nonrev_triangle")).is_no());
  CHECK(check_amg(fx("amgvspcmg_mid")).is_no());
  CHECK(check_amg(fx("amgvspcmg_right")).is_yes());
  CHECK(check_amg(fx("cepramg_left")).is_yes());
  CHECK(check_amg(fx("cepramg_mid")).is_yes());
  CHECK(check_amg(fx("ce2choice")).is_yes());
  CHECK(check_amg(fx("fig1")).is_no());  // weighted arcs

  // H1-H3 hold for the right variant too; only H4 fails
  CHECK(check_amg_h123(fx("examg_right")).is_yes());
}

TEST_CASE("elementary circuits") {
  CircuitList c = elementary_circuits(fx("fig1").net);
  REQUIRE(c.complete);
  CHECK(c.circuits.size() == 2);

  // a self-loop place is a circuit of its own
  Net loop("loop", {"p"}, {"t"}, {{"p", "t", 1}, {"t", "p", 1}});
  CHECK(elementary_circuits(loop).circuits.size() == 1);
}
