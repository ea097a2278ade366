#pragma once

#include "bliss/hamiltonian.hpp"

namespace bliss {

/// 1-norm of the qubit (Jordan-Wigner or Bravyi-Kitaev) Pauli LCU of
/// H - e_const, split into its three sums:
///   term1 = sum_ij |h_ij + 2 sum_k g_ijkk|
///   term2 = 1/2 sum_ijkl |g_ijkl|
///   term3 = sum_{i>k, j>l} |g_ijkl - g_ilkj|
struct PauliNormBreakdown {
  double lambda_total = 0.0;
  double term1 = 0.0;
  double term2 = 0.0;
  double term3 = 0.0;
};

PauliNormBreakdown pauli_one_norm(const MolecularHamiltonian& H);

}  // namespace bliss
