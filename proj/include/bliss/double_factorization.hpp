#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bliss/hamiltonian.hpp"

namespace bliss {

/// sign * ( sum_p (eps_p - phi) n'_p )^2, where n'_p counts electrons in the
/// rotated spatial orbital given by row p of U.
struct DFFragment {
  Eigen::MatrixXd U;
  Eigen::VectorXd eps;
  int sign = 1;
  std::optional<double> phi;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(eps.size()); }
  /// eps - phi (phi = 0 when absent).
  Eigen::VectorXd shifted_eps() const;
  /// L = U^T diag(eps) U, so that sum_p eps_p n'_p = sum_ij L_ij F_ij.
  Eigen::MatrixXd one_body() const;
  /// U^T diag(eps - phi) U.
  Eigen::MatrixXd shifted_one_body() const;
};

/// Factorizes g into perfect squares. Eigen-decomposes g as a matrix over
/// symmetric orbital pairs (so every eigenvector reshapes to a symmetric
/// matrix), keeps eigenvalues with |w| > tol, and diagonalizes each reshaped
/// eigenvector. Throws InvariantError when g lacks pair symmetry.
std::vector<DFFragment> double_factorize(const MolecularHamiltonian& H, double tol = 1e-8);

/// sum_a sign_a L_a (x) L_a with the unshifted eps.
TwoBodyTensor reconstruct_two_body(const std::vector<DFFragment>& frags, std::size_t n_orb);

}  // namespace bliss
