#include "pnetkit/prset.hpp"

#include <functional>
#include <unordered_map>

#include "pnetkit/rg.hpp"

namespace pnetkit {

namespace {

void enumerate_marking_box(const System& sys, const PVector& x, PrSet& out) {
  const Net& net = sys.net;
  int n = net.num_places();
  BigInt weight = 0;
  for (int p = 0; p < n; ++p) weight += BigInt(x[p]) * sys.m0[p];
  StateEquationSolver solver(sys);

  // reachable residual weights per suffix, to skip dead prefixes
  std::size_t w = static_cast<std::size_t>(weight);
  std::vector<std::vector<bool>> can(n + 1, std::vector<bool>(w + 1, false));
  can[n][0] = true;
  for (int p = n - 1; p >= 0; --p)
    for (std::size_t r = 0; r <= w; ++r) {
      for (std::size_t k = 0; k * static_cast<std::size_t>(x[p]) <= r; ++k)
        if (can[p + 1][r - k * static_cast<std::size_t>(x[p])]) {
          can[p][r] = true;
          break;
        }
    }

  Marking m(n, 0);
  std::function<void(int, std::size_t)> rec = [&](int p, std::size_t remaining) {
    if (p == n) {
      auto v = solver.solve(m);
      if (v.is_yes()) {
        out.markings.push_back(m);
        out.generators.push_back(*v.witness);
      }
      return;
    }
    std::size_t step = static_cast<std::size_t>(x[p]);
    for (std::size_t val = 0; val * step <= remaining; ++val) {
      if (!can[p + 1][remaining - val * step]) continue;
      m[p] = static_cast<Tokens>(val);
      rec(p + 1, remaining - val * step);
    }
    m[p] = 0;
  };
  if (weight <= 1000000) rec(0, w);
}

}  // namespace

PrSet enumerate_pr(const System& sys, Tokens y_bound, long long marking_cap) {
  PrSet out;
  out.bound_used = y_bound;

  auto cons = conservativeness(sys.net);
  if (cons.verdict.is_yes()) {
    const PVector& x = *cons.verdict.witness;
    BigInt weight = 0;
    for (int p = 0; p < sys.net.num_places(); ++p) weight += BigInt(x[p]) * sys.m0[p];
    // count the markings with X*M = X*m0 (the candidates actually visited)
    std::vector<BigInt> ways(static_cast<std::size_t>(weight) + 1, 0);
    ways[0] = 1;
    bool overflow = weight > 1000000;
    for (int p = 0; p < sys.net.num_places() && !overflow; ++p) {
      std::vector<BigInt> next(ways.size(), 0);
      for (std::size_t w = 0; w < ways.size(); ++w) {
        if (ways[w] == 0) continue;
        for (BigInt k = 0; w + static_cast<std::size_t>(k * x[p]) < ways.size(); ++k) {
          next[w + static_cast<std::size_t>(k * x[p])] += ways[w];
          if (next.back() > marking_cap) break;
        }
      }
      ways = std::move(next);
      if (ways[static_cast<std::size_t>(weight)] > marking_cap) overflow = true;
    }
    if (!overflow && ways[static_cast<std::size_t>(weight)] <= marking_cap) {
      enumerate_marking_box(sys, x, out);
      out.complete = true;
      out.note = "conservative: full marking box decided";
      return out;
    }
    out.note = "conservative but marking box over cap";
  }

  // bounded Y-box enumeration, lexicographic, first Y per marking kept
  const Net& net = sys.net;
  IntMatrix inc = incidence(net);
  int nt = net.num_transitions();
  std::unordered_map<Marking, int, MarkingHash> seen;
  TVector y(nt, 0);
  long long leaves = 0;
  std::function<void(int)> rec = [&](int t) {
    if (leaves > marking_cap) return;
    if (t == nt) {
      ++leaves;
      Marking m(net.num_places());
      for (int p = 0; p < net.num_places(); ++p) {
        BigInt v = BigInt(sys.m0[p]);
        for (int j = 0; j < nt; ++j)
          if (inc.at(p, j) != 0) v += inc.at(p, j) * y[j];
        if (v < 0) return;
        m[p] = static_cast<Tokens>(v);
      }
      if (seen.emplace(m, 1).second) {
        out.markings.push_back(std::move(m));
        out.generators.push_back(y);
      }
      return;
    }
    for (Tokens val = 0; val <= y_bound; ++val) {
      y[t] = val;
      rec(t + 1);
    }
    y[t] = 0;
  };
  if (nt > 0) rec(0);
  else out.markings.push_back(sys.m0), out.generators.push_back({});
  out.complete = false;
  if (out.note.empty())
    out.note = leaves > marking_cap
                   ? "Y-box enumeration truncated by cap"
                   : "Y-box enumeration up to bound " + std::to_string(y_bound);
  return out;
}

}  // namespace pnetkit
