#include "bliss/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bliss/errors.hpp"

namespace bliss {

namespace {

using Index = Eigen::Index;

Index ix(std::size_t i) { return static_cast<Index>(i); }

double relative_gap(double a, double b, double scale) {
  return std::abs(a - b) / std::max(1.0, scale);
}

}  // namespace

void TwoBodyTensor::set_symmetric(std::size_t i, std::size_t j, std::size_t k,
                                  std::size_t l, double value) noexcept {
  (*this)(i, j, k, l) = value;
  (*this)(j, i, k, l) = value;
  (*this)(i, j, l, k) = value;
  (*this)(j, i, l, k) = value;
  (*this)(k, l, i, j) = value;
  (*this)(l, k, i, j) = value;
  (*this)(k, l, j, i) = value;
  (*this)(l, k, j, i) = value;
}

double TwoBodyTensor::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double TwoBodyTensor::symmetry_defect() const noexcept {
  double worst = 0.0;
  const std::size_t n = n_;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const double v = (*this)(i, j, k, l);
          worst = std::max({worst, std::abs(v - (*this)(j, i, k, l)),
                            std::abs(v - (*this)(i, j, l, k)),
                            std::abs(v - (*this)(k, l, i, j))});
        }
  return worst;
}

MolecularHamiltonian MolecularHamiltonian::zero(std::size_t n_orb, int n_elec) {
  MolecularHamiltonian H;
  H.n_orb = n_orb;
  H.h = Eigen::MatrixXd::Zero(ix(n_orb), ix(n_orb));
  H.g = TwoBodyTensor(n_orb);
  H.n_elec = n_elec;
  H.orbsym.assign(n_orb, 1);
  return H;
}

void MolecularHamiltonian::validate() const {
  if (static_cast<std::size_t>(h.rows()) != n_orb ||
      static_cast<std::size_t>(h.cols()) != n_orb || g.dim() != n_orb)
    throw InvariantError("tensor dimensions do not match n_orb = " +
                         std::to_string(n_orb));
  if (n_elec < 0 || static_cast<std::size_t>(n_elec) > 2 * n_orb)
    throw InvariantError("n_elec = " + std::to_string(n_elec) +
                         " outside [0, 2*n_orb]");
  const double h_scale = n_orb == 0 ? 0.0 : h.cwiseAbs().maxCoeff();
  for (std::size_t i = 0; i < n_orb; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (relative_gap(h(ix(i), ix(j)), h(ix(j), ix(i)), h_scale) > 1e-12)
        throw InvariantError("one-body tensor is not symmetric at (" +
                             std::to_string(i) + "," + std::to_string(j) + ")");
  if (g.symmetry_defect() > 1e-12 * std::max(1.0, g.max_abs()))
    throw InvariantError("two-body tensor lacks 8-fold symmetry");
}

void BlissParams::set_xi(std::size_t i, std::size_t j, double value) {
  xi_(ix(i), ix(j)) = value;
  xi_(ix(j), ix(i)) = value;
}

void BlissParams::add_xi(const Eigen::MatrixXd& m) {
  if (m.rows() != xi_.rows() || m.cols() != xi_.cols())
    throw DimensionError("xi increment has the wrong dimension");
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  xi_ += sym;
  // Re-impose bitwise symmetry after the floating-point sum.
  for (Index i = 0; i < xi_.rows(); ++i)
    for (Index j = 0; j < i; ++j) xi_(i, j) = xi_(j, i);
}

BlissParams& BlissParams::operator+=(const BlissParams& other) {
  mu1 += other.mu1;
  mu2 += other.mu2;
  add_xi(other.xi_);
  return *this;
}

MolecularHamiltonian apply_bliss(const MolecularHamiltonian& H,
                                 const BlissParams& K) {
  const std::size_t n = H.n_orb;
  if (K.dim() != n)
    throw DimensionError("BLISS parameters have dimension " +
                         std::to_string(K.dim()) + ", Hamiltonian has " +
                         std::to_string(n));
  MolecularHamiltonian out = H;
  const double ne = H.n_elec;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.h(ix(i), ix(j)) += ne * K.xi(i, j) - (i == j ? K.mu1 : 0.0);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const bool dij = i == j;
          const bool dkl = k == l;
          if (!dij && !dkl) continue;
          double shift = 0.0;
          if (dij && dkl) shift += K.mu2;
          if (dkl) shift += 0.5 * K.xi(i, j);
          if (dij) shift += 0.5 * K.xi(k, l);
          out.g(i, j, k, l) -= shift;
        }
  out.e_const += K.mu1 * ne + K.mu2 * ne * ne;
  return out;
}

MolecularHamiltonian rotate_orbitals(const MolecularHamiltonian& H,
                                     const Eigen::MatrixXd& V) {
  const std::size_t n = H.n_orb;
  if (static_cast<std::size_t>(V.rows()) != n ||
      static_cast<std::size_t>(V.cols()) != n)
    throw DimensionError("rotation matrix has the wrong dimension");
  MolecularHamiltonian out = H;
  out.h = V.transpose() * H.h * V;
  out.h = 0.5 * (out.h + out.h.transpose()).eval();

  // Four successive single-index transforms, O(N^5).
  TwoBodyTensor a = H.g;
  TwoBodyTensor b(n);
  for (int pass = 0; pass < 4; ++pass) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t p = 0; p < n; ++p) {
            double s = 0.0;
            for (std::size_t l = 0; l < n; ++l) s += a(i, j, k, l) * V(ix(l), ix(p));
            // Rotate the last index and cycle it to the front.
            b(p, i, j, k) = s;
          }
    std::swap(a, b);
  }
  // Re-impose exact symmetry lost to rounding.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l <= k; ++l) {
          if (i * (i + 1) / 2 + j < k * (k + 1) / 2 + l) continue;
          const double v = (a(i, j, k, l) + a(j, i, k, l) + a(i, j, l, k) +
                            a(j, i, l, k) + a(k, l, i, j) + a(l, k, i, j) +
                            a(k, l, j, i) + a(l, k, j, i)) /
                           8.0;
          out.g.set_symmetric(i, j, k, l, v);
        }
  return out;
}

TwoBodyTensor csa_two_body(const Eigen::MatrixXd& U,
                           const Eigen::MatrixXd& coeff) {
  const std::size_t n = static_cast<std::size_t>(U.rows());
  // Orbital-pair densities D_p(i,j) = U_pi U_pj.
  std::vector<Eigen::MatrixXd> density(n);
  for (std::size_t p = 0; p < n; ++p)
    density[p] = U.row(ix(p)).transpose() * U.row(ix(p));
  TwoBodyTensor g(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const double c = coeff(ix(p), ix(q));
      if (c == 0.0) continue;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const double dij = c * density[p](ix(i), ix(j));
          for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l)
              g(i, j, k, l) += dij * density[q](ix(k), ix(l));
        }
    }
  return g;
}

}  // namespace bliss
