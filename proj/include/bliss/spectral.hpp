#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bliss/determinant.hpp"
#include "bliss/hamiltonian.hpp"

namespace bliss {

enum class Extreme { Lowest, Highest };

/// Eigenvalues of H on the n_elec sector, ascending.
Eigen::VectorXd sector_spectrum(const MolecularHamiltonian& H, int n_elec);

/// Fills n_elec spin-orbitals in order of diag(h) (ascending for Lowest,
/// descending for Highest), alpha before beta, lower index first on ties.
/// Meaningful when h is diagonal.
Determinant reference_determinant(const MolecularHamiltonian& H, int n_elec, Extreme extreme);

struct LanczosOptions {
  std::size_t max_iterations = 200;
  std::size_t truncation_multiplier = 5;
  double residual_tol = 1e-5;
};

struct LanczosResult {
  double energy = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double residual = 0.0;
  std::size_t krylov_dim = 0;
};

/// Extreme eigenvalue estimate on one sector. Works in the orbital frame where
/// h is diagonal, starts from reference_determinant, and at iteration k keeps
/// only the multiplier * k largest amplitudes of H v before orthogonalizing.
/// The energy is a Ritz value of H over the retained Krylov vectors, so it is
/// variational: never below the true minimum (Lowest) or above the maximum
/// (Highest).
LanczosResult truncated_lanczos(const MolecularHamiltonian& H, int n_elec, Extreme extreme,
                                const LanczosOptions& opts = {});

enum class SpectralMethod { Exact, TruncatedLanczos };
std::string to_string(SpectralMethod m);

struct SpectralOptions {
  SpectralMethod method = SpectralMethod::Exact;
  std::size_t exact_max_spin_orbitals = 14;
  /// Sectors up to this dimension are always diagonalized exactly.
  std::size_t exact_sector_dim = 1000;
  LanczosOptions lanczos;
};

struct SectorExtremes {
  int n_elec = 0;
  std::size_t dim = 0;
  double e_min = 0.0;
  double e_max = 0.0;
  bool exact = true;
  bool converged = true;
};

struct SpectralRange {
  double e_min = 0.0;
  double e_max = 0.0;
  /// Either estimate came from an unconverged Lanczos run.
  bool converged = true;
  std::vector<SectorExtremes> sectors;

  double delta() const noexcept { return e_max - e_min; }
};

SectorExtremes sector_extremes(const MolecularHamiltonian& H, int n_elec,
                               const SpectralOptions& opts = {});
/// Sector n_elec only.
SpectralRange sector_range(const MolecularHamiltonian& H, int n_elec,
                           const SpectralOptions& opts = {});
/// Union of all sectors 0..2N.
SpectralRange fock_range(const MolecularHamiltonian& H, const SpectralOptions& opts = {});

/// (de_shifted - de_ens) / (de - de_ens); absent when de equals de_ens.
std::optional<double> deviation_metric(double de, double de_shifted, double de_ens);

struct SpectralReport {
  SpectralMethod method = SpectralMethod::Exact;
  double delta_e = 0.0;
  double delta_e_ens = 0.0;
  std::optional<double> delta_e_shifted;
  std::optional<double> deviation;
  bool converged = true;
  std::vector<SectorExtremes> sectors;          // of H
  std::vector<SectorExtremes> shifted_sectors;  // of the shifted H
};

/// Ranges of H (Fock space and its own n_elec sector) and, when given, the
/// Fock range of the shifted Hamiltonian with its deviation.
SpectralReport build_spectral_report(const MolecularHamiltonian& H,
                                     const MolecularHamiltonian* shifted,
                                     const SpectralOptions& opts = {});

}  // namespace bliss
