#include "bliss/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "bliss/errors.hpp"

namespace bliss {

std::string to_string(SpectralMethod m) {
  return m == SpectralMethod::Exact ? "exact" : "lanczos";
}

Eigen::VectorXd sector_spectrum(const MolecularHamiltonian& H, int n_elec) {
  const Eigen::MatrixXd M = sector_matrix(H, n_elec);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

SectorExtremes sector_extremes(const MolecularHamiltonian& H, int n_elec,
                               const SpectralOptions& opts) {
  const std::size_t n_so = 2 * H.n_orb;
  if (n_elec < 0 || static_cast<std::size_t>(n_elec) > n_so)
    throw DimensionError("electron count outside [0, 2N]");
  SectorExtremes s;
  s.n_elec = n_elec;
  s.dim = binomial(n_so, static_cast<std::size_t>(n_elec));

  if (opts.method == SpectralMethod::Exact && n_so > opts.exact_max_spin_orbitals)
    throw DimensionError("exact diagonalization limited to " +
                         std::to_string(opts.exact_max_spin_orbitals) + " spin-orbitals");
  if (opts.method == SpectralMethod::Exact || s.dim <= opts.exact_sector_dim) {
    const Eigen::VectorXd ev = sector_spectrum(H, n_elec);
    s.e_min = ev(0);
    s.e_max = ev(ev.size() - 1);
    return s;
  }
  const LanczosResult lo = truncated_lanczos(H, n_elec, Extreme::Lowest, opts.lanczos);
  const LanczosResult hi = truncated_lanczos(H, n_elec, Extreme::Highest, opts.lanczos);
  s.exact = false;
  s.e_min = lo.energy;
  s.e_max = hi.energy;
  s.converged = lo.converged && hi.converged;
  return s;
}

SpectralRange sector_range(const MolecularHamiltonian& H, int n_elec, const SpectralOptions& opts) {
  SpectralRange r;
  r.sectors.push_back(sector_extremes(H, n_elec, opts));
  r.e_min = r.sectors[0].e_min;
  r.e_max = r.sectors[0].e_max;
  r.converged = r.sectors[0].converged;
  return r;
}

SpectralRange fock_range(const MolecularHamiltonian& H, const SpectralOptions& opts) {
  SpectralRange r;
  const int n_so = static_cast<int>(2 * H.n_orb);
  for (int ne = 0; ne <= n_so; ++ne) {
    const SectorExtremes s = sector_extremes(H, ne, opts);
    r.e_min = ne == 0 ? s.e_min : std::min(r.e_min, s.e_min);
    r.e_max = ne == 0 ? s.e_max : std::max(r.e_max, s.e_max);
    r.converged = r.converged && s.converged;
    r.sectors.push_back(s);
  }
  return r;
}

std::optional<double> deviation_metric(double de, double de_shifted, double de_ens) {
  const double denom = de - de_ens;
  // Equal up to rounding counts as equal.
  if (!std::isfinite(denom) || std::abs(denom) <= 1e-12 * std::max(1.0, std::abs(de)))
    return std::nullopt;
  return (de_shifted - de_ens) / denom;
}

SpectralReport build_spectral_report(const MolecularHamiltonian& H,
                                     const MolecularHamiltonian* shifted,
                                     const SpectralOptions& opts) {
  SpectralReport rep;
  rep.method = opts.method;
  const SpectralRange fock = fock_range(H, opts);
  rep.delta_e = fock.delta();
  rep.sectors = fock.sectors;
  rep.converged = fock.converged;
  for (const auto& s : fock.sectors)
    if (s.n_elec == H.n_elec) rep.delta_e_ens = s.e_max - s.e_min;
  if (shifted) {
    const SpectralRange fs = fock_range(*shifted, opts);
    rep.delta_e_shifted = fs.delta();
    rep.shifted_sectors = fs.sectors;
    rep.converged = rep.converged && fs.converged;
    rep.deviation = deviation_metric(rep.delta_e, *rep.delta_e_shifted, rep.delta_e_ens);
  }
  return rep;
}

}  // namespace bliss
