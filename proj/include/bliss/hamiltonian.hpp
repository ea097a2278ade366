#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace bliss {

/// Dense real four-index tensor g_ijkl over spatial orbitals, row-major in
/// (i, j, k, l).
class TwoBodyTensor {
 public:
  TwoBodyTensor() = default;
  explicit TwoBodyTensor(std::size_t n_orb)
      : n_(n_orb), data_(n_orb * n_orb * n_orb * n_orb, 0.0) {}

  std::size_t dim() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j, std::size_t k,
                    std::size_t l) const noexcept {
    return data_[index(i, j, k, l)];
  }
  double& operator()(std::size_t i, std::size_t j, std::size_t k,
                     std::size_t l) noexcept {
    return data_[index(i, j, k, l)];
  }

  /// Writes value into all eight real-orbital permutations of (ij|kl).
  void set_symmetric(std::size_t i, std::size_t j, std::size_t k,
                     std::size_t l, double value) noexcept;

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  double max_abs() const noexcept;

  /// Largest deviation from 8-fold permutational symmetry.
  double symmetry_defect() const noexcept;

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k,
                    std::size_t l) const noexcept {
    return ((i * n_ + j) * n_ + k) * n_ + l;
  }

  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// H = e_const + sum_ij h_ij F^i_j + sum_ijkl g_ijkl F^i_j F^k_l, with
/// F^i_j = sum_sigma a+_{i sigma} a_{j sigma}. Note that g multiplies products
/// of singlet excitation operators, not the normal-ordered a+a+aa form.
struct MolecularHamiltonian {
  std::size_t n_orb = 0;
  double e_const = 0.0;
  Eigen::MatrixXd h;
  TwoBodyTensor g;
  int n_elec = 0;
  int ms2 = 0;

  // Carried through FCIDUMP round trips; never used in computation.
  std::vector<int> orbsym;
  int isym = 1;

  static MolecularHamiltonian zero(std::size_t n_orb, int n_elec);

  /// Throws InvariantError when h/g break their symmetries or n_elec is
  /// outside [0, 2N].
  void validate() const;
};

/// Parameters (mu1, mu2, xi) of
///   K = mu1 (N - Ne) + mu2 (N^2 - Ne^2) + sum_ij xi_ij F_ij (N - Ne).
/// xi is kept exactly symmetric; all setters write both triangles.
class BlissParams {
 public:
  BlissParams() = default;
  explicit BlissParams(std::size_t n_orb)
      : xi_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_orb),
                                  static_cast<Eigen::Index>(n_orb))) {}

  double mu1 = 0.0;
  double mu2 = 0.0;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(xi_.rows()); }
  const Eigen::MatrixXd& xi() const noexcept { return xi_; }
  double xi(std::size_t i, std::size_t j) const {
    return xi_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  void set_xi(std::size_t i, std::size_t j, double value);
  /// Adds the symmetric part of m.
  void add_xi(const Eigen::MatrixXd& m);

  BlissParams& operator+=(const BlissParams& other);

 private:
  Eigen::MatrixXd xi_;
};

/// Returns H - K as a Hamiltonian. The constant mu1 Ne + mu2 Ne^2 removed by K
/// is folded into e_const, so the result equals H on the Ne-electron sector.
MolecularHamiltonian apply_bliss(const MolecularHamiltonian& H,
                                 const BlissParams& K);

/// Expresses H in rotated orbitals phi'_p = sum_i V_ip phi_i:
/// h' = V^T h V and g'_pqrs = sum V_ip V_jq V_kr V_ls g_ijkl.
MolecularHamiltonian rotate_orbitals(const MolecularHamiltonian& H,
                                     const Eigen::MatrixXd& V);

/// Two-body tensor of sum_pq coeff_pq n'_p n'_q where n'_p are number
/// operators of the rotated orbitals given by the rows of U.
TwoBodyTensor csa_two_body(const Eigen::MatrixXd& U,
                           const Eigen::MatrixXd& coeff);

}  // namespace bliss
