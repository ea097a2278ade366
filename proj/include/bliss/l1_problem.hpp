#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bliss/lp_solver.hpp"

namespace bliss {

/// One sparse row a_i of A, as (variable, coefficient) pairs.
struct L1Row {
  std::vector<std::pair<std::size_t, double>> terms;
};

/// C(x) = sum_i w_i |(A x - b)_i|.
struct L1Problem {
  std::size_t n_vars = 0;
  std::vector<L1Row> rows;
  std::vector<double> b;
  std::vector<double> weights;
  std::vector<std::string> var_names;  // optional, empty or size n_vars

  std::size_t n_rows() const noexcept { return rows.size(); }

  void add_row(L1Row row, double rhs, double weight);

  double residual(std::size_t row, std::span<const double> x) const;
  double objective(std::span<const double> x) const;

  /// Throws InvariantError on out-of-range variables, size mismatches, or
  /// non-positive weights.
  void validate() const;
};

struct L1Solution {
  std::vector<double> x_opt;
  double objective = 0.0;
  std::size_t iterations = 0;
  SolverStatus status = SolverStatus::IterationLimit;
};

/// The LP in (x, y): min w.y s.t. A x - y <= b, -A x - y <= -b.
/// Rows without variables are constant and left out; `constant` receives
/// their contribution to the objective.
LinearProgram to_linear_program(const L1Problem& p, double* constant = nullptr);

/// Global minimiser of C(x). The returned objective is recomputed from x_opt.
/// On IterationLimit x_opt is the best feasible incumbent (x = 0 if the solver
/// never reached a feasible point).
L1Solution l1_minimize(const L1Problem& p, const SolverOptions& opts = {},
                       const LpSolver& solver = default_lp_solver());

/// Merges rows with equal coefficients (within 1e-14) and equal b, summing
/// their weights. C(x) is unchanged for every x. Rows keep first-occurrence
/// order.
L1Problem merge_duplicate_rows(const L1Problem& p);

// Plain-text sparse triplet dump, for feeding external solvers:
//   l1problem 1
//   vars <n> rows <m>
//   name <var> <label>        (optional, one per named variable)
//   row <r> <b> <w>           (one per row)
//   a <r> <var> <coef>        (one per nonzero)
void write_l1_problem(std::ostream& out, const L1Problem& p);
L1Problem read_l1_problem(std::istream& in);

}  // namespace bliss
