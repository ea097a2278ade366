#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bliss/double_factorization.hpp"
#include "bliss/hamiltonian.hpp"
#include "bliss/lp_solver.hpp"

namespace bliss {

/// sum_ij lt_ij n'_i n'_j with lt_ij = lambda_ij - mu2 - (theta_i + theta_j)/2.
struct CsaFragment {
  Eigen::MatrixXd U;
  Eigen::MatrixXd lambda;
  double mu2 = 0.0;
  Eigen::VectorXd theta;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(lambda.rows()); }
  Eigen::MatrixXd shifted_lambda() const;
};

/// lambda = sign * e e^T with e = eps - phi.
CsaFragment to_csa(const DFFragment& frag);

struct OneBodySpectrum {
  Eigen::VectorXd gamma;  // ascending
  Eigen::MatrixXd V;      // h = V diag(gamma) V^T
  double mu1 = 0.0;
  double lambda_1e = 0.0;  // sum |gamma_i - mu1|
};

/// Middle element for odd counts, lower middle for even counts. Always one of
/// the inputs. Throws on an empty list.
double canonical_median(std::vector<double> values);

/// Spectrum of h_eff with mu1 at the canonical median of its eigenvalues.
OneBodySpectrum one_electron_shift(const Eigen::MatrixXd& h_eff);
/// Same with mu1 = 0.
OneBodySpectrum one_body_spectrum(const Eigen::MatrixXd& h_eff);

/// (1/2) (sum_i |eps_i - phi|)^2.
double lambda_df(const DFFragment& frag);
/// sum_{i != j} |lt_ij| + (1/2) sum_i |lt_ii|.
double lambda_csa(const CsaFragment& frag);

/// Sets phi to the canonical median of eps.
DFFragment lrps_shift(const DFFragment& frag);

/// Pieces of  F = F(phi) + one_body - constant - K  for a fragment F with
/// shift phi, where K is the BLISS operator in `bliss` (mu1 = 0).
struct LrpsCorrection {
  Eigen::MatrixXd one_body;  // sign * 2 phi Ne L
  double constant = 0.0;     // sign * phi^2 Ne^2
  BlissParams bliss;         // mu2 = sign phi^2, xi = -2 sign phi L
};

/// Throws InvariantError when phi is absent.
LrpsCorrection lrps_one_body_correction(const DFFragment& frag, int n_elec);

/// Minimizes lambda_csa over (mu2, theta) by linear programming. Requires an
/// unshifted fragment. The solver status is written to `status` if given.
CsaFragment lrbs_shift(const CsaFragment& frag, const SolverOptions& opts = {},
                       SolverStatus* status = nullptr);

// Writing a fragment as a sum of reflections r = 1 - 2n leaves behind a
// one-body operator. These return the matrix that has to be added to h to
// keep the total Hamiltonian unchanged (on the Ne sector for CSA fragments
// carrying mu2/theta).

/// sign * 2 C L_phi with C = sum_i (eps_i - phi).
Eigen::MatrixXd reflection_one_body(const DFFragment& frag);
/// U^T diag(c) U with c_i = 2 sum_j lt_ij + Ne theta_i.
Eigen::MatrixXd reflection_one_body(const CsaFragment& frag, int n_elec);

/// The fragment operator sign * (sum (eps - phi) n')^2 as a Hamiltonian.
MolecularHamiltonian fragment_hamiltonian(const DFFragment& frag, int n_elec = 0);
/// The reflection form sign * ((1/2) sum_{i sigma} (eps_i - phi) r'_{i sigma})^2,
/// whose spectral range is exactly 2 lambda_df.
MolecularHamiltonian fragment_lcu_hamiltonian(const DFFragment& frag, int n_elec = 0);
/// sum lt_ij n'_i n'_j as a Hamiltonian.
MolecularHamiltonian fragment_hamiltonian(const CsaFragment& frag, int n_elec = 0);

/// Exact spectral range of the reflection form of a CSA fragment, by
/// enumerating the values R_i = r_ia + r_ib in {-2, 0, 2}. Absent above 12
/// orbitals.
std::optional<double> csa_reflection_range(const CsaFragment& frag);

enum class FermionicMethod { DF, DF_LRPS, DF_LRBS };
std::string to_string(FermionicMethod m);

struct FragmentNorm {
  int sign = 1;
  double lambda = 0.0;          // lambda_df or lambda_csa after any shift
  double lambda_unshifted = 0.0;
  std::optional<double> half_range;  // half the spectral range of the reflection form
  std::optional<double> phi;
  std::optional<double> mu2;
};

struct FermionicReport {
  FermionicMethod method = FermionicMethod::DF;
  std::size_t n_fragments = 0;
  double mu1 = 0.0;
  double lambda_1e = 0.0;
  double lambda_two_body = 0.0;
  double lambda_total = 0.0;
  double lambda_two_body_unshifted = 0.0;
  std::optional<double> half_range_sum;
  SolverStatus solver_status = SolverStatus::Optimal;
  std::vector<FragmentNorm> fragments;
};

/// Fermionic LCU 1-norm of H after double factorization.
///   DF:      h_eff = h + reflection corrections, no shift.
///   DF_LRPS: every fragment median-shifted; h_eff also carries the LRPS
///            corrections and is median-shifted.
///   DF_LRBS: fragments converted to CSA form and LP-shifted; h_eff is
///            median-shifted.
FermionicReport build_fermionic_report(const MolecularHamiltonian& H, FermionicMethod method,
                                       double df_tol = 1e-8, const SolverOptions& opts = {});

enum class GlobalBlissFlavor { FLR, FFR };
std::string to_string(GlobalBlissFlavor f);

/// Where the global mu1 comes from: the canonical median of the one-body
/// fragment of the matching post-processing method (h plus the per-fragment
/// corrections, as in DF_LRPS / DF_LRBS), or of h itself.
enum class Mu1Source { OneBodyFragment, UnmodifiedH };
std::string to_string(Mu1Source m);

/// Global BLISS parameters for apply_bliss. FFR sums the LRBS operators
/// K(mu2, theta); FLR sums the negated LRPS operators -K(phi^2, -2 phi eps),
/// which is the direction that turns each fragment into its shifted form.
BlissParams assemble_global_bliss(const MolecularHamiltonian& H, GlobalBlissFlavor flavor,
                                  double df_tol = 1e-8, const SolverOptions& opts = {},
                                  SolverStatus* status = nullptr,
                                  Mu1Source mu1_source = Mu1Source::OneBodyFragment);

}  // namespace bliss
