#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "bliss/errors.hpp"
#include "bliss/spectral.hpp"

namespace bliss {

Determinant reference_determinant(const MolecularHamiltonian& H, int n_elec, Extreme extreme) {
  const std::size_t n = H.n_orb;
  if (n_elec < 0 || static_cast<std::size_t>(n_elec) > 2 * n)
    throw DimensionError("reference_determinant: electron count outside [0, 2N]");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ha = H.h(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a));
    const double hb = H.h(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b));
    return extreme == Extreme::Lowest ? ha < hb : ha > hb;
  });
  Determinant d;
  int left = n_elec;
  for (std::size_t i : order)
    for (unsigned s = 0; s < 2 && left > 0; ++s, --left) d.bits |= 1ull << spin_orbital(i, s);
  return d;
}

LanczosResult truncated_lanczos(const MolecularHamiltonian& H, int n_elec, Extreme extreme,
                                const LanczosOptions& opts) {
  if (opts.truncation_multiplier == 0 || opts.max_iterations == 0)
    throw InvariantError("truncated_lanczos: multiplier and iteration cap must be positive");

  MolecularHamiltonian Hr = H;
  if (H.n_orb > 0) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.h);
    Hr = rotate_orbitals(H, es.eigenvectors());
  }

  std::vector<CIVector> V;   // Krylov vectors
  std::vector<CIVector> HV;  // H applied to each, untruncated
  V.emplace_back(n_elec, std::vector<CIVector::Entry>{{reference_determinant(Hr, n_elec, extreme), 1.0}});

  LanczosResult res;
  for (std::size_t k = 1;; ++k) {
    HV.push_back(apply_hamiltonian(Hr, V.back()));
    res.iterations = k;

    CIVector w = HV.back().truncated(opts.truncation_multiplier * k);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : V) w.axpy(-v.dot(w), v);
    res.residual = w.norm();
    if (res.residual < opts.residual_tol) {
      res.converged = true;
      break;
    }
    if (k >= opts.max_iterations) break;
    w.scale(1.0 / res.residual);
    V.push_back(std::move(w));
  }

  // Rayleigh-Ritz with the overlap matrix, dropping directions that the
  // overlap cannot resolve.
  const auto m = static_cast<Eigen::Index>(V.size());
  Eigen::MatrixXd T(m, m), S(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      T(i, j) = V[static_cast<std::size_t>(i)].dot(HV[static_cast<std::size_t>(j)]);
      S(i, j) = V[static_cast<std::size_t>(i)].dot(V[static_cast<std::size_t>(j)]);
    }
  T = 0.5 * (T + T.transpose()).eval();
  S = 0.5 * (S + S.transpose()).eval();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ss(S);
  std::vector<Eigen::Index> keep;
  const double smax = ss.eigenvalues().maxCoeff();
  for (Eigen::Index i = 0; i < m; ++i)
    if (ss.eigenvalues()(i) > 1e-12 * smax) keep.push_back(i);
  Eigen::MatrixXd X(m, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    X.col(static_cast<Eigen::Index>(c)) =
        ss.eigenvectors().col(keep[c]) / std::sqrt(ss.eigenvalues()(keep[c]));
  const Eigen::MatrixXd Tr = X.transpose() * T * X;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ts(0.5 * (Tr + Tr.transpose()),
                                                          Eigen::EigenvaluesOnly);
  res.krylov_dim = keep.size();
  res.energy = extreme == Extreme::Lowest ? ts.eigenvalues().minCoeff() : ts.eigenvalues().maxCoeff();
  return res;
}

}  // namespace bliss
