#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "pnetkit/net.hpp"
#include "pnetkit/verdict.hpp"

namespace pnetkit {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<BigInt> a;  // row-major

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  BigInt& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const BigInt& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

IntMatrix incidence(const Net& net);  // rows = places, cols = transitions

std::vector<BigInt> mat_vec(const IntMatrix& m, const std::vector<BigInt>& x);

enum class Rel { Eq, Le, Ge };

struct LinConstraint {
  std::vector<BigRat> coeff;
  Rel rel;
  BigRat rhs;
};

// Conjunction of linear constraints over nvars rational variables.
// Variable bounds are ordinary constraints.
struct LinSystem {
  int nvars = 0;
  std::vector<LinConstraint> cons;

  void add(std::vector<BigRat> coeff, Rel rel, BigRat rhs) {
    cons.push_back({std::move(coeff), rel, std::move(rhs)});
  }
  void add_lower(int var, BigRat bound);  // x_var >= bound
  void add_upper(int var, BigRat bound);  // x_var <= bound
};

// Exact Fourier–Motzkin elimination.
class FourierMotzkin {
 public:
  explicit FourierMotzkin(const LinSystem& sys);

  bool feasible() const { return feasible_; }
  // A rational point of the polyhedron (back-substitution); empty if infeasible.
  std::optional<std::vector<BigRat>> sample() const;
  // Exact bounds of variable `var` over the polyhedron. nullopt = unbounded
  // on that side. Undefined if infeasible.
  std::pair<std::optional<BigRat>, std::optional<BigRat>> interval(int var) const;

 private:
  struct Row {  // sum coeff*x <= rhs
    std::vector<BigRat> coeff;
    BigRat rhs;
  };
  static void normalize(Row& r);
  // rows_at_[k] = constraints over variables 0..k (before eliminating var k).
  std::vector<std::vector<Row>> rows_at_;
  int nvars_;
  bool feasible_ = true;
};

// Bounds implied by a polyhedron for one variable, via a dedicated
// elimination keeping that variable last.
std::pair<std::optional<BigRat>, std::optional<BigRat>> variable_bounds(const LinSystem& sys,
                                                                        int var);

// -- integer lattice ----------------------------------------------------

struct LatticeSolution {
  std::vector<BigInt> particular;            // one integer solution of A y = d
  std::vector<std::vector<BigInt>> kernel;   // basis of {v : A v = 0} over Z
};

// Column Hermite reduction of A, reusable across right-hand sides.
class PreparedLattice {
 public:
  explicit PreparedLattice(const IntMatrix& A);
  // One integer solution of A y = d, if any.
  std::optional<std::vector<BigInt>> solve(const std::vector<BigInt>& d) const;
  const std::vector<std::vector<BigInt>>& kernel() const { return kernel_; }

 private:
  IntMatrix h_, u_;
  std::vector<int> pivot_col_;
  int rank_ = 0;
  std::vector<std::vector<BigInt>> kernel_;
};

// Solve A y = d over the integers (column Hermite reduction).
std::optional<LatticeSolution> solve_diophantine(const IntMatrix& A, const std::vector<BigInt>& d);

// -- integer feasibility engine ----------------------------------------

struct IntVar {
  std::optional<BigInt> lower;  // inclusive
  std::optional<BigInt> upper;
};

struct IntFeasibilityProblem {
  std::vector<IntVar> vars;
  LinSystem cons;  // over the same variables
};

// Branch-and-bound with exact rational relaxation. No is certified: either
// the relaxation is infeasible or every branch of a finite cover was closed.
// Unknown when a variable's range is unbounded/too wide or the node budget runs out.
Verdict<std::vector<BigInt>> integer_feasible(const IntFeasibilityProblem& p,
                                              long long node_budget = 200000,
                                              long long width_budget = 4096);

// -- rational helpers ---------------------------------------------------

BigRat rat_floor(const BigRat& x);
BigRat rat_ceil(const BigRat& x);
BigInt rat_floor_int(const BigRat& x);
BigInt rat_ceil_int(const BigRat& x);

// Scale a rational vector to the smallest positive-integer multiple.
std::vector<BigInt> scale_to_integers(const std::vector<BigRat>& v);

std::vector<Tokens> to_tokens(const std::vector<BigInt>& v);
std::vector<BigInt> to_bigint(const std::vector<Tokens>& v);

}  // namespace pnetkit
