#include "pnetkit/linear.hpp"

#include <algorithm>
#include <map>

namespace pnetkit {

using boost::multiprecision::denominator;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;
using boost::multiprecision::numerator;

IntMatrix incidence(const Net& net) {
  IntMatrix m(net.num_places(), net.num_transitions());
  for (int t = 0; t < net.num_transitions(); ++t) {
    for (const auto& a : net.pre(t)) m.at(a.node, t) -= a.weight;
    for (const auto& a : net.post(t)) m.at(a.node, t) += a.weight;
  }
  return m;
}

std::vector<BigInt> mat_vec(const IntMatrix& m, const std::vector<BigInt>& x) {
  std::vector<BigInt> out(m.rows);
  for (int r = 0; r < m.rows; ++r) {
    BigInt s = 0;
    for (int c = 0; c < m.cols; ++c)
      if (m.at(r, c) != 0) s += m.at(r, c) * x[c];
    out[r] = s;
  }
  return out;
}

void LinSystem::add_lower(int var, BigRat bound) {
  std::vector<BigRat> c(nvars);
  c[var] = 1;
  add(std::move(c), Rel::Ge, std::move(bound));
}

void LinSystem::add_upper(int var, BigRat bound) {
  std::vector<BigRat> c(nvars);
  c[var] = 1;
  add(std::move(c), Rel::Le, std::move(bound));
}

BigRat rat_floor(const BigRat& x) { return BigRat(rat_floor_int(x)); }
BigRat rat_ceil(const BigRat& x) { return BigRat(rat_ceil_int(x)); }

BigInt rat_floor_int(const BigRat& x) {
  BigInt n = numerator(x), d = denominator(x);  // d > 0
  BigInt q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

BigInt rat_ceil_int(const BigRat& x) {
  BigInt n = numerator(x), d = denominator(x);
  BigInt q = n / d;
  if (n % d != 0 && n > 0) ++q;
  return q;
}

std::vector<BigInt> scale_to_integers(const std::vector<BigRat>& v) {
  BigInt mult = 1;
  for (const auto& x : v) mult = lcm(mult, denominator(x));
  std::vector<BigInt> out(v.size());
  BigInt g = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    out[i] = numerator(v[i]) * (mult / denominator(v[i]));
    g = gcd(g, out[i]);
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

std::vector<Tokens> to_tokens(const std::vector<BigInt>& v) {
  std::vector<Tokens> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = static_cast<Tokens>(v[i]);
  return out;
}

std::vector<BigInt> to_bigint(const std::vector<Tokens>& v) {
  return std::vector<BigInt>(v.begin(), v.end());
}

// -- Fourier–Motzkin ----------------------------------------------------

void FourierMotzkin::normalize(Row& r) {
  BigInt mult = 1;
  for (const auto& c : r.coeff) mult = lcm(mult, denominator(c));
  mult = lcm(mult, denominator(r.rhs));
  BigInt g = 0;
  for (auto& c : r.coeff) {
    BigInt ci = numerator(c) * (mult / denominator(c));
    c = BigRat(ci);
    g = gcd(g, ci);
  }
  r.rhs = BigRat(numerator(r.rhs) * (mult / denominator(r.rhs)));
  if (g > 1) {
    for (auto& c : r.coeff) c /= BigRat(g);
    r.rhs /= BigRat(g);
  }
}

FourierMotzkin::FourierMotzkin(const LinSystem& sys) : nvars_(sys.nvars) {
  std::vector<Row> rows;
  auto push = [&](const std::vector<BigRat>& coeff, const BigRat& rhs, bool negate) {
    Row r;
    r.coeff.resize(nvars_);
    for (int i = 0; i < nvars_ && i < static_cast<int>(coeff.size()); ++i)
      r.coeff[i] = negate ? -coeff[i] : coeff[i];
    r.rhs = negate ? -rhs : rhs;
    rows.push_back(std::move(r));
  };
  for (const auto& c : sys.cons) {
    if (c.rel == Rel::Le || c.rel == Rel::Eq) push(c.coeff, c.rhs, false);
    if (c.rel == Rel::Ge || c.rel == Rel::Eq) push(c.coeff, c.rhs, true);
  }

  rows_at_.resize(nvars_ + 1);
  for (int level = nvars_; level >= 0; --level) {
    // dedup, keeping the tightest rhs per coefficient vector
    std::map<std::vector<BigRat>, BigRat> best;
    for (auto& r : rows) {
      normalize(r);
      bool all_zero = true;
      for (const auto& c : r.coeff)
        if (c != 0) {
          all_zero = false;
          break;
        }
      if (all_zero) {
        if (r.rhs < 0) feasible_ = false;
        continue;
      }
      auto it = best.find(r.coeff);
      if (it == best.end())
        best.emplace(r.coeff, r.rhs);
      else if (r.rhs < it->second)
        it->second = r.rhs;
    }
    rows.clear();
    for (auto& [coeff, rhs] : best) rows.push_back({coeff, rhs});
    rows_at_[level] = rows;
    if (!feasible_ || level == 0) break;

    int v = level - 1;
    std::vector<Row> up, lo, rest;
    for (auto& r : rows) {
      if (r.coeff[v] > 0)
        up.push_back(std::move(r));
      else if (r.coeff[v] < 0)
        lo.push_back(std::move(r));
      else
        rest.push_back(std::move(r));
    }
    rows = std::move(rest);
    if (up.size() * lo.size() > 2000000) throw pnet_error("fourier-motzkin blow-up");
    for (const auto& u : up) {
      for (const auto& l : lo) {
        Row r;
        r.coeff.resize(nvars_);
        BigRat cu = u.coeff[v], cl = -l.coeff[v];  // both > 0
        for (int i = 0; i < nvars_; ++i) r.coeff[i] = cl * u.coeff[i] + cu * l.coeff[i];
        r.rhs = cl * u.rhs + cu * l.rhs;
        rows.push_back(std::move(r));
      }
    }
  }
}

std::optional<std::vector<BigRat>> FourierMotzkin::sample() const {
  if (!feasible_) return std::nullopt;
  std::vector<BigRat> val(nvars_, 0);
  for (int v = 0; v < nvars_; ++v) {
    // rows_at_[v+1] constrain variables 0..v
    std::optional<BigRat> lo, hi;
    for (const auto& r : rows_at_[v + 1]) {
      if (r.coeff[v] == 0) continue;
      BigRat rest = r.rhs;
      for (int j = 0; j < v; ++j) rest -= r.coeff[j] * val[j];
      BigRat bound = rest / r.coeff[v];
      if (r.coeff[v] > 0) {
        if (!hi || bound < *hi) hi = bound;
      } else {
        if (!lo || bound > *lo) lo = bound;
      }
    }
    if (lo)
      val[v] = *lo;
    else if (hi)
      val[v] = *hi < 0 ? *hi : BigRat(0);
    else
      val[v] = 0;
  }
  return val;
}

std::pair<std::optional<BigRat>, std::optional<BigRat>> FourierMotzkin::interval(int var) const {
  // Specialized elimination that keeps `var` last is done by variable_bounds;
  // here we only have the default order, so fall back to level-1 rows when
  // var == 0, else recompute.
  if (var == 0 && !rows_at_.empty()) {
    std::optional<BigRat> lo, hi;
    for (const auto& r : rows_at_[1]) {
      if (r.coeff[0] == 0) continue;
      BigRat bound = r.rhs / r.coeff[0];
      if (r.coeff[0] > 0) {
        if (!hi || bound < *hi) hi = bound;
      } else {
        if (!lo || bound > *lo) lo = bound;
      }
    }
    return {lo, hi};
  }
  throw pnet_error("interval: use variable_bounds");
}

std::pair<std::optional<BigRat>, std::optional<BigRat>> variable_bounds(const LinSystem& sys,
                                                                        int var) {
  // Permute so that `var` becomes variable 0, then eliminate the rest.
  LinSystem p;
  p.nvars = sys.nvars;
  for (const auto& c : sys.cons) {
    LinConstraint pc = c;
    pc.coeff.resize(sys.nvars);
    std::swap(pc.coeff[0], pc.coeff[var]);
    p.cons.push_back(std::move(pc));
  }
  FourierMotzkin fm(p);
  if (!fm.feasible()) return {std::nullopt, std::nullopt};
  return fm.interval(0);
}

// -- lattice ------------------------------------------------------------

PreparedLattice::PreparedLattice(const IntMatrix& A) {
  int m = A.rows, n = A.cols;
  IntMatrix& H = h_;
  IntMatrix& U = u_;
  H = A;
  U = IntMatrix(n, n);
  for (int i = 0; i < n; ++i) U.at(i, i) = 1;

  auto col_swap = [&](int a, int b) {
    if (a == b) return;
    for (int r = 0; r < m; ++r) std::swap(H.at(r, a), H.at(r, b));
    for (int r = 0; r < n; ++r) std::swap(U.at(r, a), U.at(r, b));
  };
  // columns (a,b) <- (x*a + y*b, -bb*a + aa*b), unimodular when x*aa + y*bb = 1
  auto col_combine = [&](int a, int b, const BigInt& x, const BigInt& y, const BigInt& aa,
                         const BigInt& bb) {
    for (int r = 0; r < m; ++r) {
      BigInt ca = H.at(r, a), cb = H.at(r, b);
      H.at(r, a) = x * ca + y * cb;
      H.at(r, b) = -bb * ca + aa * cb;
    }
    for (int r = 0; r < n; ++r) {
      BigInt ca = U.at(r, a), cb = U.at(r, b);
      U.at(r, a) = x * ca + y * cb;
      U.at(r, b) = -bb * ca + aa * cb;
    }
  };
  auto ext_gcd = [](BigInt a, BigInt b, BigInt& x, BigInt& y) {
    BigInt x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
      BigInt q = a / b, r = a % b;
      a = b;
      b = r;
      BigInt nx = x0 - q * x1, ny = y0 - q * y1;
      x0 = x1;
      y0 = y1;
      x1 = nx;
      y1 = ny;
    }
    x = x0;
    y = y0;
    return a;  // may be negative if a was
  };

  int col = 0;
  pivot_col_.assign(m, -1);
  for (int r = 0; r < m && col < n; ++r) {
    int j = col;
    while (j < n && H.at(r, j) == 0) ++j;
    if (j == n) continue;  // check row
    col_swap(col, j);
    for (int j2 = col + 1; j2 < n; ++j2) {
      if (H.at(r, j2) == 0) continue;
      BigInt a = H.at(r, col), b = H.at(r, j2), x, y;
      BigInt g = ext_gcd(a, b, x, y);
      if (g < 0) {
        g = -g;
        x = -x;
        y = -y;
      }
      col_combine(col, j2, x, y, a / g, b / g);
    }
    if (H.at(r, col) < 0) {
      for (int rr = 0; rr < m; ++rr) H.at(rr, col) = -H.at(rr, col);
      for (int rr = 0; rr < n; ++rr) U.at(rr, col) = -U.at(rr, col);
    }
    pivot_col_[r] = col;
    ++col;
  }
  rank_ = col;
  for (int j = rank_; j < n; ++j) {
    std::vector<BigInt> v(n);
    for (int i = 0; i < n; ++i) v[i] = U.at(i, j);
    kernel_.push_back(std::move(v));
  }
}

std::optional<std::vector<BigInt>> PreparedLattice::solve(const std::vector<BigInt>& d) const {
  int m = h_.rows, n = h_.cols;
  std::vector<BigInt> z(n, 0);
  for (int r = 0; r < m; ++r) {
    BigInt acc = 0;
    int limit = pivot_col_[r] >= 0 ? pivot_col_[r] : rank_;
    for (int j = 0; j < limit; ++j)
      if (h_.at(r, j) != 0) acc += h_.at(r, j) * z[j];
    BigInt rem = d[r] - acc;
    if (pivot_col_[r] >= 0) {
      const BigInt& piv = h_.at(r, pivot_col_[r]);
      if (rem % piv != 0) return std::nullopt;
      z[pivot_col_[r]] = rem / piv;
    } else {
      if (rem != 0) return std::nullopt;
    }
  }
  std::vector<BigInt> out(n, 0);
  for (int i = 0; i < n; ++i) {
    BigInt acc = 0;
    for (int j = 0; j < rank_; ++j)
      if (u_.at(i, j) != 0) acc += u_.at(i, j) * z[j];
    out[i] = acc;
  }
  return out;
}

std::optional<LatticeSolution> solve_diophantine(const IntMatrix& A,
                                                 const std::vector<BigInt>& d) {
  PreparedLattice lat(A);
  auto y = lat.solve(d);
  if (!y) return std::nullopt;
  return LatticeSolution{*y, lat.kernel()};
}

// -- branch and bound ---------------------------------------------------

namespace {

enum class BBResult { Found, Closed, GaveUp };

struct BBState {
  const IntFeasibilityProblem* p;
  long long nodes_left;
  long long width_budget;
  std::vector<std::optional<BigInt>> fixed;
  std::vector<BigInt> solution;
  std::string why_unknown;
};

LinSystem substituted(const BBState& st) {
  LinSystem sys;
  sys.nvars = static_cast<int>(st.p->vars.size());
  sys.cons = st.p->cons.cons;
  sys.cons.reserve(sys.cons.size() + st.fixed.size() * 2);
  for (size_t i = 0; i < st.p->vars.size(); ++i) {
    if (st.fixed[i]) {
      std::vector<BigRat> c(sys.nvars);
      c[i] = 1;
      sys.cons.push_back({c, Rel::Eq, BigRat(*st.fixed[i])});
    } else {
      if (st.p->vars[i].lower) sys.add_lower(static_cast<int>(i), BigRat(*st.p->vars[i].lower));
      if (st.p->vars[i].upper) sys.add_upper(static_cast<int>(i), BigRat(*st.p->vars[i].upper));
    }
  }
  return sys;
}

BBResult bb(BBState& st) {
  if (st.nodes_left-- <= 0) {
    st.why_unknown = "node budget exhausted";
    return BBResult::GaveUp;
  }
  LinSystem sys = substituted(st);
  FourierMotzkin fm(sys);
  if (!fm.feasible()) return BBResult::Closed;

  int var = -1;
  for (size_t i = 0; i < st.fixed.size(); ++i)
    if (!st.fixed[i]) {
      var = static_cast<int>(i);
      break;
    }
  if (var < 0) {
    st.solution.clear();
    for (const auto& f : st.fixed) st.solution.push_back(*f);
    return BBResult::Found;
  }

  auto [lo, hi] = variable_bounds(sys, var);
  std::optional<BigInt> ilo = lo ? std::optional<BigInt>(rat_ceil_int(*lo)) : std::nullopt;
  std::optional<BigInt> ihi = hi ? std::optional<BigInt>(rat_floor_int(*hi)) : std::nullopt;
  if (st.p->vars[var].lower && (!ilo || *st.p->vars[var].lower > *ilo))
    ilo = st.p->vars[var].lower;
  if (st.p->vars[var].upper && (!ihi || *st.p->vars[var].upper < *ihi))
    ihi = st.p->vars[var].upper;
  if (!ilo || !ihi) {
    st.why_unknown = "variable range unbounded";
    return BBResult::GaveUp;
  }
  if (*ihi < *ilo) return BBResult::Closed;
  if (*ihi - *ilo + 1 > st.width_budget) {
    st.why_unknown = "variable range too wide";
    return BBResult::GaveUp;
  }

  bool gave_up = false;
  for (BigInt v = *ilo; v <= *ihi; ++v) {
    st.fixed[var] = v;
    BBResult r = bb(st);
    if (r == BBResult::Found) return r;
    if (r == BBResult::GaveUp) gave_up = true;
  }
  st.fixed[var] = std::nullopt;
  return gave_up ? BBResult::GaveUp : BBResult::Closed;
}

}  // namespace

Verdict<std::vector<BigInt>> integer_feasible(const IntFeasibilityProblem& p,
                                              long long node_budget, long long width_budget) {
  for (const auto& c : p.cons.cons)
    if (static_cast<int>(c.coeff.size()) != p.cons.nvars ||
        p.cons.nvars != static_cast<int>(p.vars.size()))
      throw pnet_error("malformed constraint system");
  BBState st{&p, node_budget, width_budget, {}, {}, {}};
  st.fixed.assign(p.vars.size(), std::nullopt);
  switch (bb(st)) {
    case BBResult::Found:
      return Verdict<std::vector<BigInt>>::yes(st.solution);
    case BBResult::Closed:
      return Verdict<std::vector<BigInt>>::no();
    default:
      return Verdict<std::vector<BigInt>>::unknown(st.why_unknown);
  }
}

}  // namespace pnetkit
