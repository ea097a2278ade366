#include "random_hamiltonians.hpp"

#include <cmath>
#include <cstdlib>

namespace testgen {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double normal(Rng& rng, double sigma) { return std::normal_distribution<double>(0.0, sigma)(rng); }

Eigen::MatrixXd random_symmetric(Rng& rng, std::size_t n, double scale) {
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = uniform(rng, -scale, scale);
  return m;
}

Eigen::MatrixXd random_orthogonal(Rng& rng, std::size_t n) {
  Eigen::MatrixXd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

bliss::MolecularHamiltonian random_hamiltonian(Rng& rng, std::size_t n_orb, int n_elec, double scale) {
  auto H = bliss::MolecularHamiltonian::zero(n_orb, n_elec);
  H.e_const = uniform(rng, -scale, scale);
  H.h = random_symmetric(rng, n_orb, scale);
  for (std::size_t i = 0; i < n_orb; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (std::size_t k = 0; k < n_orb; ++k)
        for (std::size_t l = 0; l <= k; ++l)
          if (i * (i + 1) / 2 + j >= k * (k + 1) / 2 + l)
            H.g.set_symmetric(i, j, k, l, uniform(rng, -0.5 * scale, 0.5 * scale));
  H.ms2 = n_elec % 2;
  return H;
}

bliss::MolecularHamiltonian molecular_like_hamiltonian(Rng& rng, std::size_t n_orb, int n_elec, double decay) {
  const std::size_t n = n_orb;
  auto damp = [&](std::size_t i, std::size_t j) {
    return std::exp(-decay * std::abs(static_cast<double>(i) - static_cast<double>(j)));
  };

  Eigen::MatrixXd t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      t(i, j) = t(j, i) = i == j ? -2.0 + 0.6 * static_cast<double>(i) + uniform(rng, -0.2, 0.2)
                                 : uniform(rng, -0.3, 0.3) * damp(i, j);

  // (ij|kl) = sum_Q B^Q_ij B^Q_kl
  const std::size_t n_aux = 2 * n;
  std::vector<Eigen::MatrixXd> B;
  for (std::size_t q = 0; q < n_aux; ++q) {
    Eigen::MatrixXd b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        const double centre = i == j ? 0.4 : 0.0;
        b(i, j) = b(j, i) = (centre + uniform(rng, -0.25, 0.25)) * damp(i, j);
      }
    B.push_back(b);
  }
  bliss::TwoBodyTensor eri(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          double v = 0.0;
          for (const auto& b : B) v += b(i, j) * b(k, l);
          eri(i, j, k, l) = v;
        }

  auto H = bliss::MolecularHamiltonian::zero(n, n_elec);
  H.e_const = uniform(rng, 0.5, 1.5);
  H.ms2 = n_elec % 2;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double x = t(i, j);
      for (std::size_t k = 0; k < n; ++k) x -= 0.5 * eri(i, k, k, j);
      H.h(i, j) = x;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) H.g(i, j, k, l) = 0.5 * eri(i, j, k, l);
    }
  return H;
}

bliss::BlissParams random_bliss_params(Rng& rng, std::size_t n_orb, double scale) {
  bliss::BlissParams K(n_orb);
  K.mu1 = uniform(rng, -scale, scale);
  K.mu2 = uniform(rng, -scale, scale);
  K.add_xi(random_symmetric(rng, n_orb, scale));
  return K;
}

bliss::DFFragment random_fragment(Rng& rng, std::size_t n_orb) {
  bliss::DFFragment f;
  f.U = random_orthogonal(rng, n_orb);
  f.eps = Eigen::VectorXd(n_orb);
  for (std::size_t i = 0; i < n_orb; ++i) f.eps(i) = uniform(rng, -1.0, 1.0);
  f.sign = uniform(rng, 0.0, 1.0) < 0.5 ? -1 : 1;
  return f;
}

}  // namespace testgen
