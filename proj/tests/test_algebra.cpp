#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pnetkit/algebra.hpp"
#include "pnetkit/rg.hpp"
#include "testutil.hpp"

using namespace pnetkit;
using namespace pnetkit::testutil;

namespace {

// independent brute force: all semiflows of A within [0,bound]^n, filtered
// to prime vectors with subset-minimal support
std::vector<TVector> brute_minimal_semiflows(const IntMatrix& a, Tokens bound) {
  int n = a.cols;
  std::vector<TVector> all;
  TVector y(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      bool zero = true;
      for (Tokens v : y)
        if (v) zero = false;
      if (zero) return;
      for (int r = 0; r < a.rows; ++r) {
        BigInt s = 0;
        for (int c = 0; c < n; ++c) s += a.at(r, c) * y[c];
        if (s != 0) return;
      }
      all.push_back(y);
      return;
    }
    for (Tokens v = 0; v <= bound; ++v) {
      y[i] = v;
      rec(i + 1);
    }
    y[i] = 0;
  };
  rec(0);
  std::vector<TVector> out;
  for (const auto& cand : all) {
    long long g = 0;
    for (Tokens v : cand) g = std::gcd(g, (long long)v);
    if (g != 1) continue;
    bool minimal = true;
    for (const auto& other : all) {
      bool proper_sub = true, equal = true;
      for (int i = 0; i < n; ++i) {
        if ((other[i] > 0) && !(cand[i] > 0)) proper_sub = false;
        if ((other[i] > 0) != (cand[i] > 0)) equal = false;
      }
      if (proper_sub && !equal) minimal = false;
    }
    if (minimal) out.push_back(cand);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST_CASE("incidence entries") {
  System sys = fx("fig1");
  IntMatrix inc = incidence(sys.net);
  CHECK(inc.at(sys.net.place_index("p3"), sys.net.transition_index("t2")) == -4);
  CHECK(inc.at(sys.net.place_index("p3"), sys.net.transition_index("t1")) == 2);

  Net loop("loop", {"p"}, {"t"}, {{"p", "t", 2}, {"t", "p", 2}});
  CHECK(incidence(loop).at(0, 0) == 0);
}

TEST_CASE("minimal semiflows of the running example") {
  System sys = fx("fig1");
  FeasibilityBudget b{4, 1000000};
  SemiflowList ts = minimal_t_semiflows(sys.net, b);
  REQUIRE(ts.flows.size() == 1);
  CHECK(ts.flows[0].vec == TVector{2, 1, 1});
  CHECK(ts.flows[0].prime);
  CHECK(is_t_semiflow(sys.net, ts.flows[0].vec));

  // the P-kernel splits over the two circuits: {p1,p3} and {p2,p4}
  SemiflowList ps = minimal_p_semiflows(sys.net, b);
  REQUIRE(ps.flows.size() == 2);
  for (const auto& f : ps.flows) CHECK(is_p_semiflow(sys.net, f.vec));
  std::vector<PVector> expect{marking_of(sys.net, {{"p1", 2}, {"p3", 1}}),
                              marking_of(sys.net, {{"p2", 3}, {"p4", 1}})};
  std::sort(expect.begin(), expect.end());
  std::vector<PVector> got{ps.flows[0].vec, ps.flows[1].vec};
  std::sort(got.begin(), got.end());
  CHECK(got == expect);
  // their sum is the conservativeness vector (2,3,1,1)
  PVector sum(4, 0);
  for (int i = 0; i < 4; ++i) sum[i] = expect[0][i] + expect[1][i];
  CHECK(sum == marking_of(sys.net, {{"p1", 2}, {"p2", 3}, {"p3", 1}, {"p4", 1}}));
  CHECK(is_p_semiflow(sys.net, sum));

  // against the independent brute force, T and P side
  std::vector<TVector> oracle = brute_minimal_semiflows(incidence(sys.net), 4);
  REQUIRE(oracle.size() == 1);
  CHECK(oracle[0] == ts.flows[0].vec);
  IntMatrix inc_t(3, 4);
  IntMatrix inc = incidence(sys.net);
  for (int p = 0; p < 4; ++p)
    for (int t = 0; t < 3; ++t) inc_t.at(t, p) = inc.at(p, t);
  std::vector<PVector> p_oracle = brute_minimal_semiflows(inc_t, 4);
  std::sort(p_oracle.begin(), p_oracle.end());
  CHECK(p_oracle == got);

  // a source place whose consumer produces nothing cannot be covered by a
  // P-semiflow: the consumer's column has no positive entry to balance it
  Net src("src", {"s", "q"}, {"t", "u"}, {{"s", "t", 1}, {"u", "q", 1}, {"q", "u", 1}});
  for (const auto& f : minimal_p_semiflows(src, b).flows) CHECK(f.vec[0] == 0);
}

TEST_CASE("conservativeness") {
  System fig1 = fx("fig1");
  auto rep = conservativeness(fig1.net);
  REQUIRE(rep.verdict.is_yes());
  CHECK(is_p_semiflow(fig1.net, *rep.verdict.witness));
  for (Tokens v : *rep.verdict.witness) CHECK(v >= 1);
  CHECK_FALSE(rep.one_conservative);

  auto dead = conservativeness(fx("deadwmg").net);
  CHECK(dead.verdict.is_no());

  auto campos = conservativeness(fx("campos_merged").net);
  REQUIRE(campos.verdict.is_yes());
  CHECK(campos.one_conservative);
  CHECK(*campos.verdict.witness == PVector(7, 1));

  auto twoe = conservativeness(fx("twoewmg").net);
  REQUIRE(twoe.verdict.is_yes());
  CHECK(twoe.one_conservative);
}

TEST_CASE("consistency") {
  System fig1 = fx("fig1");
  auto v = consistency(fig1.net);
  REQUIRE(v.is_yes());
  CHECK(is_t_semiflow(fig1.net, *v.witness));
  for (Tokens y : *v.witness) CHECK(y >= 1);

  CHECK(consistency(fx("deadwmg").net).is_no());
  CHECK(consistency(fx("campos_merged").net).is_yes());
}

TEST_CASE("structural boundedness") {
  CHECK(structurally_bounded(fx("fig1").net).is_yes());

  // exhaustive cross-check on fig1: no violating Y below 3
  {
    System sys = fx("fig1");
    IntMatrix inc = incidence(sys.net);
    for (Tokens a = 0; a <= 3; ++a)
      for (Tokens b = 0; b <= 3; ++b)
        for (Tokens c = 0; c <= 3; ++c) {
          TVector y{a, b, c};
          if (y == TVector{0, 0, 0}) continue;
          bool nonneg = true, strict = false;
          for (int p = 0; p < inc.rows; ++p) {
            BigInt s = 0;
            for (int t = 0; t < 3; ++t) s += inc.at(p, t) * y[t];
            if (s < 0) nonneg = false;
            if (s > 0) strict = true;
          }
          CHECK_FALSE((nonneg && strict));
        }
  }

  auto dead = structurally_bounded(fx("deadwmg").net);
  REQUIRE(dead.is_no());
  CHECK(*dead.witness == TVector{1});

  // the siphon-induced subsystem of cepramg_mid is unbounded
  System sub = p_subsystem(fx("cepramg_mid"), {"p3", "p4"});
  auto v = structurally_bounded(sub.net);
  REQUIRE(v.is_no());
  IntMatrix inc = incidence(sub.net);
  bool strict = false;
  for (int p = 0; p < inc.rows; ++p) {
    BigInt s = 0;
    for (int t = 0; t < inc.cols; ++t) s += inc.at(p, t) * (*v.witness)[t];
    CHECK(s >= 0);
    if (s > 0) strict = true;
  }
  CHECK(strict);

  // conservative implies structurally bounded, on all fixtures
  for (const auto& f : fixtures()) {
    System sys = load_fixture(f);
    if (conservativeness(sys.net).verdict.is_yes())
      CHECK(structurally_bounded(sys.net).is_yes());
  }
}

TEST_CASE("state equation") {
  System dead = fx("deadwmg");
  auto v = solve_state_equation(dead, mk(dead.net, {{"p1", 1}}));
  REQUIRE(v.is_yes());
  CHECK(*v.witness == TVector{1});

  System left = fx("cepramg_left");
  Marking target = mk(left.net, {{"p3", 2}, {"p6", 1}});
  auto v2 = solve_state_equation(left, target);
  REQUIRE(v2.is_yes());
  CHECK(*v2.witness == TVector{2, 0, 2, 2, 2});
  CHECK(state_equation_holds(left, target, *v2.witness));

  // M0 is always potentially reachable, with the zero vector as witness
  for (const char* key : {"fig1", "deadwmg", "cepramg_mid", "twoewmg"}) {
    System sys = fx(key);
    auto self = solve_state_equation(sys, sys.m0);
    REQUIRE(self.is_yes());
    CHECK(state_equation_holds(sys, sys.m0, *self.witness));
    CHECK(*self.witness == TVector(sys.net.num_transitions(), 0));
  }

  // dimension mismatch is an error
  CHECK_THROWS_AS(solve_state_equation(dead, Marking{1}), pnet_error);
}

TEST_CASE("state equation soundness on reachable markings") {
  Rng rng(41);
  for (int i = 0; i < 150; ++i) {
    System sys = random_net(rng);
    FiringSequence sigma = random_walk(sys.net, sys.m0, 8, rng.g);
    Marking m = fire_sequence(sys.net, sys.m0, sigma);
    auto v = solve_state_equation(sys, m);
    REQUIRE(v.is_yes());
    CHECK(state_equation_holds(sys, m, *v.witness));
  }
}

TEST_CASE("state equation no-instances are certified") {
  // unreachable by tokens: nothing produces p
  Net n("n", {"p"}, {"t"}, {{"p", "t", 1}});
  System sys{n, {0}};
  CHECK(solve_state_equation(sys, {1}).is_no());

  // parity argument: t moves 2 tokens at a time
  Net par("par", {"a", "b"}, {"t"}, {{"a", "t", 2}, {"t", "b", 2}});
  System psys{par, {4, 0}};
  CHECK(solve_state_equation(psys, {3, 1}).is_no());
  CHECK(solve_state_equation(psys, {2, 2}).is_yes());
}

TEST_CASE("integer feasibility engine") {
  {
    IntFeasibilityProblem p;
    p.vars.resize(1);
    p.vars[0].lower = 0;
    p.cons.nvars = 1;
    p.cons.add({BigRat(1)}, Rel::Le, BigRat(-1));
    CHECK(integer_feasible(p).is_no());
  }
  {
    IntFeasibilityProblem p;  // 2x = 3
    p.vars.resize(1);
    p.cons.nvars = 1;
    p.cons.add({BigRat(2)}, Rel::Eq, BigRat(3));
    CHECK(integer_feasible(p).is_no());
  }
  {
    // the running example's state equation for (1,0,2,3)
    System sys = fx("fig1");
    IntMatrix inc = incidence(sys.net);
    Marking target = mk(sys.net, {{"p1", 1}, {"p2", 0}, {"p3", 2}, {"p4", 3}});
    IntFeasibilityProblem p;
    p.vars.resize(3);
    for (auto& v : p.vars) {
      v.lower = 0;
      v.upper = 64;
    }
    p.cons.nvars = 3;
    for (int pl = 0; pl < 4; ++pl) {
      LinConstraint c;
      c.coeff = {BigRat(inc.at(pl, 0)), BigRat(inc.at(pl, 1)), BigRat(inc.at(pl, 2))};
      c.rel = Rel::Eq;
      c.rhs = BigRat(target[pl] - sys.m0[pl]);
      p.cons.cons.push_back(c);
    }
    auto v = integer_feasible(p);
    REQUIRE(v.is_yes());
    CHECK(*v.witness == std::vector<BigInt>{1, 1, 1});
  }
}

TEST_CASE("engine agrees with brute force on small boxes") {
  Rng rng(53);
  for (int iter = 0; iter < 120; ++iter) {
    int nvars = static_cast<int>(rng.between(1, 4));
    int ncons = static_cast<int>(rng.between(1, 4));
    IntFeasibilityProblem p;
    p.vars.resize(nvars);
    for (auto& v : p.vars) {
      v.lower = 0;
      v.upper = 6;
    }
    p.cons.nvars = nvars;
    for (int c = 0; c < ncons; ++c) {
      LinConstraint lc;
      for (int i = 0; i < nvars; ++i) lc.coeff.push_back(BigRat(rng.between(-3, 3)));
      lc.rel = rng.upto(2) == 0 ? Rel::Eq : (rng.upto(1) ? Rel::Le : Rel::Ge);
      lc.rhs = BigRat(rng.between(-4, 6));
      p.cons.cons.push_back(lc);
    }
    auto engine = integer_feasible(p);
    // brute force over the box
    bool any = false;
    std::vector<Tokens> y(nvars, 0);
    std::function<void(int)> rec = [&](int i) {
      if (any) return;
      if (i == nvars) {
        for (const auto& lc : p.cons.cons) {
          BigRat s = 0;
          for (int j = 0; j < nvars; ++j) s += lc.coeff[j] * y[j];
          if (lc.rel == Rel::Eq && s != lc.rhs) return;
          if (lc.rel == Rel::Le && s > lc.rhs) return;
          if (lc.rel == Rel::Ge && s < lc.rhs) return;
        }
        any = true;
        return;
      }
      for (Tokens v = 0; v <= 6; ++v) {
        y[i] = v;
        rec(i + 1);
      }
    };
    rec(0);
    REQUIRE_FALSE(engine.is_unknown());
    CHECK(engine.is_yes() == any);
  }
}

TEST_CASE("lattice solver") {
  // x + y = 3, x - y = 1 -> (2,1)
  IntMatrix a(2, 2);
  a.at(0, 0) = 1;
  a.at(0, 1) = 1;
  a.at(1, 0) = 1;
  a.at(1, 1) = -1;
  auto sol = solve_diophantine(a, {3, 1});
  REQUIRE(sol.has_value());
  CHECK(sol->particular == std::vector<BigInt>{2, 1});
  CHECK(sol->kernel.empty());

  // 2x = 3 has no integer solution
  IntMatrix b(1, 1);
  b.at(0, 0) = 2;
  CHECK_FALSE(solve_diophantine(b, {3}).has_value());

  // kernel of the running example is spanned by (2,1,1)
  auto sol2 = solve_diophantine(incidence(fx("fig1").net), {0, 0, 0, 0});
  REQUIRE(sol2.has_value());
  REQUIRE(sol2->kernel.size() == 1);
  std::vector<BigInt> k = sol2->kernel[0];
  if (k[0] < 0)
    for (auto& v : k) v = -v;
  CHECK(k == std::vector<BigInt>{2, 1, 1});
}
