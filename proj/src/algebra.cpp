#include "pnetkit/algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace pnetkit {

namespace {

// DFS over [0,bound]^n with per-row interval pruning, collecting all
// nonzero Y with A*Y = 0.
void enumerate_kernel_box(const IntMatrix& A, Tokens bound, long long step_cap,
                          std::vector<std::vector<Tokens>>& out, bool& exhausted) {
  int n = A.cols, m = A.rows;
  std::vector<Tokens> y(n, 0);
  std::vector<BigInt> partial(m, 0);
  // per-variable min/max possible contribution of the remaining suffix
  std::vector<std::vector<BigInt>> suf_min(n + 1, std::vector<BigInt>(m, 0));
  std::vector<std::vector<BigInt>> suf_max(n + 1, std::vector<BigInt>(m, 0));
  for (int v = n - 1; v >= 0; --v) {
    for (int r = 0; r < m; ++r) {
      const BigInt& c = A.at(r, v);
      BigInt lo = c < 0 ? c * bound : BigInt(0);
      BigInt hi = c > 0 ? c * bound : BigInt(0);
      suf_min[v][r] = suf_min[v + 1][r] + lo;
      suf_max[v][r] = suf_max[v + 1][r] + hi;
    }
  }
  long long steps = 0;
  exhausted = true;
  std::function<void(int)> rec = [&](int v) {
    if (++steps > step_cap) {
      exhausted = false;
      return;
    }
    if (v == n) {
      bool zero_sum = true, zero_vec = true;
      for (int r = 0; r < m; ++r)
        if (partial[r] != 0) {
          zero_sum = false;
          break;
        }
      for (int i = 0; i < n; ++i)
        if (y[i] != 0) {
          zero_vec = false;
          break;
        }
      if (zero_sum && !zero_vec) out.push_back(y);
      return;
    }
    for (Tokens val = 0; val <= bound; ++val) {
      y[v] = val;
      if (val > 0)
        for (int r = 0; r < m; ++r) partial[r] += A.at(r, v);
      bool ok = true;
      for (int r = 0; r < m; ++r) {
        if (partial[r] + suf_min[v + 1][r] > 0 || partial[r] + suf_max[v + 1][r] < 0) {
          ok = false;
          break;
        }
      }
      if (ok) rec(v + 1);
      if (!exhausted) break;
    }
    for (int r = 0; r < m; ++r) partial[r] -= A.at(r, v) * y[v];
    y[v] = 0;
  };
  rec(0);
}

bool gcd_is_one(const std::vector<Tokens>& v) {
  long long g = 0;
  for (Tokens x : v) g = std::gcd(g, static_cast<long long>(x));
  return g == 1;
}

// Exact: does a nonzero semiflow of A exist with support inside `allowed`?
bool semiflow_within(const IntMatrix& A, const std::vector<bool>& allowed) {
  LinSystem sys;
  sys.nvars = A.cols;
  for (int r = 0; r < A.rows; ++r) {
    LinConstraint c;
    c.coeff.resize(A.cols);
    for (int j = 0; j < A.cols; ++j) c.coeff[j] = BigRat(A.at(r, j));
    c.rel = Rel::Eq;
    c.rhs = 0;
    sys.cons.push_back(std::move(c));
  }
  std::vector<BigRat> sum(A.cols);
  for (int j = 0; j < A.cols; ++j) {
    sys.add_lower(j, 0);
    if (!allowed[j]) sys.add_upper(j, 0);
    sum[j] = allowed[j] ? BigRat(1) : BigRat(0);
  }
  sys.add(sum, Rel::Ge, BigRat(1));  // homogeneous: rational iff integer
  return FourierMotzkin(sys).feasible();
}

SemiflowList minimal_semiflows_impl(const IntMatrix& A, Semiflow::Kind kind,
                                    const FeasibilityBudget& budget) {
  SemiflowList list;
  list.bound_used = budget.max_component;
  std::vector<std::vector<Tokens>> found;
  enumerate_kernel_box(A, budget.max_component, budget.step_cap, found, list.box_exhausted);

  for (const auto& y : found) {
    if (!gcd_is_one(y)) continue;  // not prime
    std::vector<bool> supp(A.cols, false);
    for (int j = 0; j < A.cols; ++j) supp[j] = y[j] > 0;
    bool minimal = true;
    for (int j = 0; j < A.cols && minimal; ++j) {
      if (!supp[j]) continue;
      std::vector<bool> smaller = supp;
      smaller[j] = false;
      if (semiflow_within(A, smaller)) minimal = false;
    }
    if (minimal) list.flows.push_back({kind, y, true, true});
  }
  std::sort(list.flows.begin(), list.flows.end(),
            [](const Semiflow& a, const Semiflow& b) { return a.vec < b.vec; });
  return list;
}

IntMatrix transpose(const IntMatrix& m) {
  IntMatrix t(m.cols, m.rows);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
  return t;
}

// {X : X^T I = 0, X >= lower} as a LinSystem over |P| variables.
LinSystem flow_system(const IntMatrix& inc_t, Tokens lower) {
  LinSystem sys;
  sys.nvars = inc_t.cols;
  for (int r = 0; r < inc_t.rows; ++r) {
    LinConstraint c;
    c.coeff.resize(inc_t.cols);
    for (int j = 0; j < inc_t.cols; ++j) c.coeff[j] = BigRat(inc_t.at(r, j));
    c.rel = Rel::Eq;
    c.rhs = 0;
    sys.cons.push_back(std::move(c));
  }
  for (int j = 0; j < inc_t.cols; ++j) sys.add_lower(j, BigRat(lower));
  return sys;
}

}  // namespace

SemiflowList minimal_t_semiflows(const Net& net, const FeasibilityBudget& budget) {
  return minimal_semiflows_impl(incidence(net), Semiflow::Kind::T, budget);
}

SemiflowList minimal_p_semiflows(const Net& net, const FeasibilityBudget& budget) {
  return minimal_semiflows_impl(transpose(incidence(net)), Semiflow::Kind::P, budget);
}

ConservativenessReport conservativeness(const Net& net) {
  IntMatrix it = transpose(incidence(net));
  // A rational X >= 1 with X^T I = 0 scales to an integer one.
  FourierMotzkin fm(flow_system(it, 1));
  ConservativenessReport rep;
  if (!fm.feasible()) {
    rep.verdict = Verdict<PVector>::no();
    return rep;
  }
  auto pt = fm.sample();
  rep.verdict = Verdict<PVector>::yes(to_tokens(scale_to_integers(*pt)));
  // check 1-conservativeness directly
  std::vector<BigInt> ones(net.num_places(), 1);
  IntMatrix inc = incidence(net);
  bool one = true;
  for (int t = 0; t < inc.cols && one; ++t) {
    BigInt s = 0;
    for (int p = 0; p < inc.rows; ++p) s += inc.at(p, t);
    if (s != 0) one = false;
  }
  rep.one_conservative = one;
  if (one) rep.verdict.witness = PVector(net.num_places(), 1);
  return rep;
}

Verdict<TVector> consistency(const Net& net) {
  FourierMotzkin fm(flow_system(incidence(net), 1));
  if (!fm.feasible()) return Verdict<TVector>::no();
  return Verdict<TVector>::yes(to_tokens(scale_to_integers(*fm.sample())));
}

Verdict<TVector> structurally_bounded(const Net& net) {
  IntMatrix inc = incidence(net);
  // not structurally bounded iff exists Y >= 0, I*Y >= 0 with I*Y != 0
  for (int q = 0; q < inc.rows; ++q) {
    LinSystem sys;
    sys.nvars = inc.cols;
    for (int r = 0; r < inc.rows; ++r) {
      LinConstraint c;
      c.coeff.resize(inc.cols);
      for (int j = 0; j < inc.cols; ++j) c.coeff[j] = BigRat(inc.at(r, j));
      c.rel = Rel::Ge;
      c.rhs = r == q ? BigRat(1) : BigRat(0);
      sys.cons.push_back(std::move(c));
    }
    for (int j = 0; j < inc.cols; ++j) sys.add_lower(j, 0);
    FourierMotzkin fm(sys);
    if (fm.feasible())
      return Verdict<TVector>::no(to_tokens(scale_to_integers(*fm.sample())),
                                  "token pump into " + net.place_id(q));
  }
  return Verdict<TVector>::yes();
}

std::vector<int> semiflow_support_union(const IntMatrix& inc) {
  std::vector<int> support;
  std::vector<bool> all(inc.cols, true);
  for (int t = 0; t < inc.cols; ++t) {
    LinSystem sys;
    sys.nvars = inc.cols;
    for (int r = 0; r < inc.rows; ++r) {
      LinConstraint c;
      c.coeff.resize(inc.cols);
      for (int j = 0; j < inc.cols; ++j) c.coeff[j] = BigRat(inc.at(r, j));
      c.rel = Rel::Eq;
      c.rhs = 0;
      sys.cons.push_back(std::move(c));
    }
    for (int j = 0; j < inc.cols; ++j) sys.add_lower(j, 0);
    sys.add_lower(t, 1);
    if (FourierMotzkin(sys).feasible()) support.push_back(t);
  }
  return support;
}

StateEquationSolver::StateEquationSolver(const System& sys, const FeasibilityBudget& budget)
    : sys_(sys), budget_(budget), inc_(incidence(sys.net)) {
  semiflow_support_ = semiflow_support_union(inc_);
  std::vector<bool> in_s(inc_.cols, false);
  for (int t : semiflow_support_) in_s[t] = true;
  for (int t = 0; t < inc_.cols; ++t)
    if (!in_s[t]) outside_.push_back(t);
  consistent_ = outside_.empty() && inc_.cols > 0;

  if (!semiflow_support_.empty()) {
    // semiflow with support exactly S*: sum of per-transition witnesses
    LinSystem ls;
    ls.nvars = inc_.cols;
    for (int r = 0; r < inc_.rows; ++r) {
      LinConstraint c;
      c.coeff.resize(inc_.cols);
      for (int j = 0; j < inc_.cols; ++j) c.coeff[j] = BigRat(inc_.at(r, j));
      c.rel = Rel::Eq;
      c.rhs = 0;
      ls.cons.push_back(std::move(c));
    }
    for (int j = 0; j < inc_.cols; ++j) {
      ls.add_lower(j, in_s[j] ? BigRat(1) : BigRat(0));
      if (!in_s[j]) ls.add_upper(j, 0);
    }
    FourierMotzkin fm(ls);
    semiflow_ = scale_to_integers(*fm.sample());

    IntMatrix A(inc_.rows, static_cast<int>(semiflow_support_.size()));
    for (int r = 0; r < inc_.rows; ++r)
      for (size_t j = 0; j < semiflow_support_.size(); ++j)
        A.at(r, static_cast<int>(j)) = inc_.at(r, semiflow_support_[j]);
    lattice_.emplace(A);
  }
}

// Solve I|_{S*} * y = d over naturals, where a full-support (on S*)
// integer semiflow exists: lattice-solve, then shift into the positive
// orthant and reduce back for a small witness.
Verdict<TVector> StateEquationSolver::solve_on(const std::vector<BigInt>& d,
                                               const std::vector<BigInt>& base) const {
  const std::vector<int>& cols = semiflow_support_;
  std::optional<std::vector<BigInt>> sol;
  if (lattice_) {
    sol = lattice_->solve(d);
  } else {
    for (const auto& x : d)
      if (x != 0) sol = std::nullopt;
    if (std::all_of(d.begin(), d.end(), [](const BigInt& x) { return x == 0; }))
      sol = std::vector<BigInt>{};
  }
  if (!sol) return Verdict<TVector>::no_because("no integer solution of the state equation");
  std::vector<BigInt> y = *sol;
  if (!cols.empty()) {
    std::vector<BigInt> sf(cols.size());
    for (size_t j = 0; j < cols.size(); ++j) sf[j] = semiflow_[cols[j]];
    // largest shortfall determines the shift
    BigInt shift = 0;
    for (size_t j = 0; j < cols.size(); ++j) {
      if (y[j] < 0) {
        BigInt need = (-y[j] + sf[j] - 1) / sf[j];
        if (need > shift) shift = need;
      }
    }
    for (size_t j = 0; j < cols.size(); ++j) y[j] += shift * sf[j];
    // reduce for a canonical small witness
    BigInt back = -1;
    for (size_t j = 0; j < cols.size(); ++j) {
      BigInt can = y[j] / sf[j];
      if (back < 0 || can < back) back = can;
    }
    if (back > 0)
      for (size_t j = 0; j < cols.size(); ++j) y[j] -= back * sf[j];
  }
  TVector full(inc_.cols, 0);
  for (size_t j = 0; j < cols.size(); ++j) full[cols[j]] = static_cast<Tokens>(y[j]);
  for (size_t j = 0; j < base.size(); ++j)
    if (base[j] != 0) full[outside_[j]] = static_cast<Tokens>(base[j]);
  return Verdict<TVector>::yes(full);
}

Verdict<TVector> StateEquationSolver::solve(const Marking& target) const {
  if (static_cast<int>(target.size()) != sys_.net.num_places())
    throw pnet_error("marking dimension mismatch");
  std::vector<BigInt> d(inc_.rows);
  for (int p = 0; p < inc_.rows; ++p) d[p] = BigInt(target[p]) - BigInt(sys_.m0[p]);

  if (outside_.empty()) {
    if (inc_.cols == 0) {
      for (const auto& x : d)
        if (x != 0) return Verdict<TVector>::no_because("no transitions");
      return Verdict<TVector>::yes(TVector{});
    }
    return solve_on(d, {});
  }

  // Rational relaxation over all variables; prunes and bounds the
  // outside-S* coordinates (they cannot recede).
  LinSystem sys;
  sys.nvars = inc_.cols;
  for (int r = 0; r < inc_.rows; ++r) {
    LinConstraint c;
    c.coeff.resize(inc_.cols);
    for (int j = 0; j < inc_.cols; ++j) c.coeff[j] = BigRat(inc_.at(r, j));
    c.rel = Rel::Eq;
    c.rhs = BigRat(d[r]);
    sys.cons.push_back(std::move(c));
  }
  for (int j = 0; j < inc_.cols; ++j) sys.add_lower(j, 0);
  FourierMotzkin fm(sys);
  if (!fm.feasible()) return Verdict<TVector>::no_because("state equation rationally infeasible");

  // enumerate integer assignments of the outside variables
  std::vector<std::pair<BigInt, BigInt>> ranges;
  for (int t : outside_) {
    auto [lo, hi] = variable_bounds(sys, t);
    if (!lo || !hi) throw pnet_error("internal: outside variable unbounded");
    ranges.emplace_back(rat_ceil_int(*lo), rat_floor_int(*hi));
  }
  std::vector<BigInt> assign(outside_.size());
  long long steps = 0;
  std::optional<Verdict<TVector>> found;
  std::function<bool(size_t)> rec = [&](size_t k) -> bool {
    if (++steps > budget_.step_cap) return false;  // budget out
    if (k == outside_.size()) {
      std::vector<BigInt> d2 = d;
      for (size_t j = 0; j < outside_.size(); ++j)
        for (int r = 0; r < inc_.rows; ++r) d2[r] -= inc_.at(r, outside_[j]) * assign[j];
      auto v = solve_on(d2, assign);
      if (v.is_yes()) {
        found = v;
        return false;
      }
      return true;
    }
    for (BigInt v = ranges[k].first; v <= ranges[k].second; ++v) {
      assign[k] = v;
      if (!rec(k + 1)) return false;
    }
    return true;
  };
  bool complete = rec(0);
  if (found) return *found;
  if (!complete && steps > budget_.step_cap)
    return Verdict<TVector>::unknown("assignment enumeration budget exhausted");
  return Verdict<TVector>::no_because("all integer assignments refuted");
}

Verdict<TVector> solve_state_equation(const System& sys, const Marking& target,
                                      const FeasibilityBudget& budget) {
  return StateEquationSolver(sys, budget).solve(target);
}

}  // namespace pnetkit
