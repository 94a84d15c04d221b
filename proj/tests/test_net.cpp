#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pnetkit/algebra.hpp"
#include "testutil.hpp"

using namespace pnetkit;
using namespace pnetkit::testutil;

TEST_CASE("preset and postset") {
  System sys = fx("fig1");
  CHECK(preset(sys.net, "t2") == std::vector<std::string>{"p3", "p4"});
  CHECK(postset(sys.net, "t2") == std::vector<std::string>{"p1", "p2"});
  CHECK_THROWS_AS(preset(sys.net, "nope"), unknown_id_error);

  Net isolated("iso", {"p"}, {"t"}, {});
  CHECK(preset(isolated, "p").empty());
  CHECK(postset(isolated, "p").empty());
}

TEST_CASE("enabledness") {
  System sys = fx("fig1");
  CHECK(enabled(sys.net, sys.m0, sys.net.transition_index("t2")));
  CHECK_FALSE(enabled(sys.net, sys.m0, sys.net.transition_index("t1")));

  Net src("src", {"p"}, {"t"}, {{"t", "p", 1}});  // empty preset
  CHECK(enabled(src, {0}, 0));
}

TEST_CASE("firing") {
  System sys = fx("fig1");
  Marking m1 = fire(sys.net, sys.m0, sys.net.transition_index("t2"));
  CHECK(m1 == mk(sys.net, {{"p1", 2}, {"p2", 1}, {"p3", 0}, {"p4", 0}}));
  Marking m2 = fire(sys.net, m1, sys.net.transition_index("t1"));
  CHECK(m2 == mk(sys.net, {{"p1", 1}, {"p2", 1}, {"p3", 2}, {"p4", 0}}));

  // self-loop with equal weights leaves the marking unchanged
  Net loop("loop", {"p"}, {"t"}, {{"p", "t", 1}, {"t", "p", 1}});
  CHECK(fire(loop, {1}, 0) == Marking{1});

  try {
    fire(sys.net, sys.m0, sys.net.transition_index("t1"));
    FAIL("expected not_enabled_error");
  } catch (const not_enabled_error& e) {
    CHECK(e.transition == "t1");
    CHECK(e.blocking_place == "p1");
    CHECK(e.step == -1);
  }
}

TEST_CASE("firing sequences") {
  System sys = fx("fig1");
  Marking end = fire_sequence(sys.net, sys.m0, seq(sys.net, {"t2", "t1", "t3"}));
  CHECK(end == mk(sys.net, {{"p1", 1}, {"p2", 0}, {"p3", 2}, {"p4", 3}}));
  CHECK(fire_sequence(sys.net, sys.m0, {}) == sys.m0);
  try {
    fire_sequence(sys.net, sys.m0, seq(sys.net, {"t1"}));
    FAIL("expected not_enabled_error");
  } catch (const not_enabled_error& e) {
    CHECK(e.step == 0);
    CHECK(e.transition == "t1");
  }
}

TEST_CASE("parikh") {
  System sys = fx("fig1");
  CHECK(parikh(sys.net, seq(sys.net, {"t2", "t1", "t3"})) == TVector{1, 1, 1});
  CHECK(parikh(sys.net, {}) == TVector{0, 0, 0});
  Net n4("n4", {"p"}, {"t1", "t2", "t3"}, {{"t1", "p", 1}, {"t2", "p", 1}, {"t3", "p", 1}});
  CHECK(parikh(n4, sequence_of(n4, {"t1", "t2", "t2", "t3"})) == TVector{1, 2, 1});
}

TEST_CASE("residues") {
  using S = std::vector<std::string>;
  auto word = [](const char* s) {
    S out;
    for (const char* c = s; *c; ++c) out.push_back(std::string(1, *c));
    return out;
  };
  CHECK(residue(word("acbcacbc"), word("abbcb")) == word("cacc"));
  CHECK(residue(word("abbcb"), word("acbcacbc")) == word("b"));
  CHECK(residue(word("abc"), S{}) == word("abc"));

  System sys = fx("fig1");
  FiringSequence tau = seq(sys.net, {"t2", "t1", "t1", "t3"});
  CHECK(residue_tvector(sys.net, tau, {1, 0, 1}) == seq(sys.net, {"t2", "t1"}));
  CHECK(residue_tvector(sys.net, tau, {9, 9, 9}).empty());
}

TEST_CASE("residue parikh law") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    System sys = random_net(rng);
    FiringSequence tau = random_walk(sys.net, sys.m0, 6, rng.g);
    FiringSequence sigma = random_walk(sys.net, sys.m0, 6, rng.g);
    TVector pt = parikh(sys.net, tau), ps = parikh(sys.net, sigma);
    TVector res = parikh(sys.net, residue(tau, sigma));
    for (int t = 0; t < sys.net.num_transitions(); ++t)
      CHECK(res[t] == pt[t] - std::min(pt[t], ps[t]));
  }
}

TEST_CASE("reverse nets and sequences") {
  System sys = fx("fig1");
  Net rev = reverse_net(sys.net);
  CHECK(reverse_net(rev).same_structure(sys.net));
  FiringSequence s = seq(sys.net, {"t1", "t2", "t2", "t3"});
  CHECK(reverse_sequence(s) == seq(sys.net, {"t3", "t2", "t2", "t1"}));
  CHECK(reverse_sequence(reverse_sequence(s)) == s);

  IntMatrix a = incidence(sys.net), b = incidence(rev);
  for (int p = 0; p < a.rows; ++p)
    for (int t = 0; t < a.cols; ++t) CHECK(a.at(p, t) == -b.at(p, t));
}

TEST_CASE("reverse simulation") {
  Rng rng(11);
  for (const char* key : {"fig1", "nonrev2p_a", "campos_merged", "ce2choice", "cepramg_mid"}) {
    System sys = fx(key);
    System rev = reverse_system(sys);
    for (int i = 0; i < 20; ++i) {
      FiringSequence sigma = random_walk(sys.net, sys.m0, 8, rng.g);
      Marking m = fire_sequence(sys.net, sys.m0, sigma);
      // M0[sigma> M in N  iff  M[reverse(sigma)> M0 in -N
      CHECK(fire_sequence(rev.net, m, reverse_sequence(sigma)) == sys.m0);
    }
  }
}

TEST_CASE("subnets") {
  System sys = fx("fig1");
  Net middle = t_subnet(sys.net, {"t2"});
  CHECK(middle.num_places() == 4);
  CHECK(middle.num_transitions() == 1);
  CHECK(middle.weight_pt(middle.place_index("p3"), 0) == 4);
  CHECK(middle.weight_tp(0, middle.place_index("p1")) == 2);

  Net right = p_subnet(sys.net, {"p1", "p3"});
  CHECK(right.num_places() == 2);
  CHECK(right.num_transitions() == 2);
  CHECK(right.weight_pt(right.place_index("p1"), right.transition_index("t1")) == 1);
  CHECK(right.weight_tp(right.transition_index("t1"), right.place_index("p3")) == 2);
  CHECK(right.weight_pt(right.place_index("p3"), right.transition_index("t2")) == 4);

  Net empty = p_subnet(sys.net, {});
  CHECK(empty.num_places() == 0);
  CHECK(empty.num_transitions() == 0);

  // any sequence feasible in a T-subsystem is feasible in the system
  System sub = t_subsystem(sys, {"t2"});
  Marking m = fire(sub.net, sub.m0, 0);
  CHECK(m == mk(sub.net, {{"p1", 2}, {"p2", 1}, {"p3", 0}, {"p4", 0}}));
}

TEST_CASE("place merging reproduces the composed systems") {
  System mg = fx("campos_mg");
  std::vector<MergeGroup> groups{{"p0", {"p0a", "p0b"}},
                                 {"p1", {"p1a", "p1b"}},
                                 {"p2", {"p2a", "p2b"}}};
  MergeResult r = merge_places(mg.net, groups);
  System target = fx("campos_merged");
  CHECK(r.net.same_structure(target.net));
  CHECK(same_system({r.net, merge_marking(mg.net, groups, mg.m0)}, target));
  CHECK(r.place_map.at("p0a") == "p0");
  CHECK(r.place_map.at("p3") == "p3");

  System mg2 = fx("nonrev2p_mg");
  std::vector<MergeGroup> groups2{{"p1", {"p1", "p1b"}}, {"p2", {"p2", "p2b"}}};
  MergeResult r2 = merge_places(mg2.net, groups2);
  System target2 = fx("nonrev2p_a");
  CHECK(r2.net.same_structure(target2.net));
  CHECK(same_system({r2.net, merge_marking(mg2.net, groups2, mg2.m0)}, target2));

  // empty family leaves the net unchanged
  MergeResult id = merge_places(mg.net, {});
  CHECK(id.net.same_structure(mg.net));

  CHECK_THROWS_AS(merge_places(mg.net, {{"a", {"p0a"}}, {"b", {"p0a"}}}), pnet_error);
}

TEST_CASE("place merging column law") {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    System sys = random_net(rng, 6, 4);
    if (sys.net.num_places() < 3) continue;
    std::vector<MergeGroup> groups{{"m", {sys.net.place_id(0), sys.net.place_id(1)}}};
    MergeResult r = merge_places(sys.net, groups);
    IntMatrix before = incidence(sys.net), after = incidence(r.net);
    int merged = r.net.place_index("m");
    for (int t = 0; t < sys.net.num_transitions(); ++t)
      CHECK(after.at(merged, t) == before.at(0, t) + before.at(1, t));
    for (int p = 2; p < sys.net.num_places(); ++p) {
      int q = r.net.place_index(sys.net.place_id(p));
      for (int t = 0; t < sys.net.num_transitions(); ++t)
        CHECK(after.at(q, t) == before.at(p, t));
    }
  }
}

TEST_CASE("firing consistency with the incidence matrix") {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    System sys = random_net(rng);
    FiringSequence sigma = random_walk(sys.net, sys.m0, 10, rng.g);
    CHECK(fire_sequence(sys.net, sys.m0, sigma) == apply_vector(sys, parikh(sys.net, sigma)));
  }
}
