#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bliss/hamiltonian.hpp"
#include "bliss/l1_problem.hpp"
#include "bliss/pauli_norm.hpp"

namespace bliss {

/// Decision-variable layout: mu1, mu2, then xi_ij for i <= j in row order.
class LpBlissVarMap {
 public:
  explicit LpBlissVarMap(std::size_t n_orb);

  std::size_t n_orb() const noexcept { return n_; }
  std::size_t n_vars() const noexcept { return 2 + n_ * (n_ + 1) / 2; }
  static constexpr std::size_t mu1() noexcept { return 0; }
  static constexpr std::size_t mu2() noexcept { return 1; }
  /// Slot of xi_ij; symmetric in (i, j).
  std::size_t xi(std::size_t i, std::size_t j) const noexcept;

  BlissParams to_params(std::span<const double> x) const;
  std::vector<double> from_params(const BlissParams& K) const;
  std::vector<std::string> names() const;

 private:
  std::size_t n_;
};

struct LpBlissProblem {
  L1Problem problem;
  LpBlissVarMap vars;
};

/// One row per absolute value in the Pauli norm of apply_bliss(H, K), as an
/// affine function of K: N^2 one-body rows (weight 1), N^4 two-body rows
/// (weight 1/2) and (N(N-1)/2)^2 exchange rows (weight 1). Rows are not
/// merged.
LpBlissProblem build_lp_bliss_problem(const MolecularHamiltonian& H);

struct LpBlissResult {
  BlissParams params;
  PauliNormBreakdown norm;  // of apply_bliss(H, params)
  L1Solution solution;
  std::size_t rows_before_merge = 0;
  std::size_t rows_after_merge = 0;
};

/// Pauli-norm-optimal BLISS parameters. On a non-optimal solver status the
/// best incumbent is returned and solution.status says so.
LpBlissResult lp_bliss(const MolecularHamiltonian& H, const SolverOptions& opts = {},
                       const LpSolver& solver = default_lp_solver());

}  // namespace bliss
