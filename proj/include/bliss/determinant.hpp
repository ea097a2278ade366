#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bliss/hamiltonian.hpp"

namespace bliss {

/// Occupation bit string over spin-orbitals; spin-orbital p = 2 i + sigma for
/// spatial orbital i and sigma = 0 (alpha) or 1 (beta).
struct Determinant {
  std::uint64_t bits = 0;

  int n_elec() const noexcept { return __builtin_popcountll(bits); }
  bool occupied(unsigned p) const noexcept { return (bits >> p) & 1u; }
  friend bool operator==(Determinant a, Determinant b) noexcept { return a.bits == b.bits; }
  friend auto operator<=>(Determinant a, Determinant b) noexcept { return a.bits <=> b.bits; }
};

constexpr unsigned spin_orbital(std::size_t orbital, unsigned sigma) noexcept {
  return static_cast<unsigned>(2 * orbital + sigma);
}

/// Sparse real vector over determinants of one electron-number sector, kept
/// sorted by determinant with no repeated entries.
class CIVector {
 public:
  using Entry = std::pair<Determinant, double>;

  CIVector() = default;
  explicit CIVector(int n_elec) : n_elec_(n_elec) {}
  /// Sorts, sums duplicates and checks every determinant is in the sector.
  CIVector(int n_elec, std::vector<Entry> entries);

  int n_elec() const noexcept { return n_elec_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  double norm() const;
  double dot(const CIVector& other) const;
  double amplitude(Determinant d) const;
  /// this += s * other
  void axpy(double s, const CIVector& other);
  void scale(double s);

  /// Keeps the `keep` entries of largest magnitude; ties go to the lower
  /// determinant.
  CIVector truncated(std::size_t keep) const;

 private:
  int n_elec_ = 0;
  std::vector<Entry> entries_;
};

/// Every determinant with n_elec electrons in 2 n_orb spin-orbitals, ascending.
std::vector<Determinant> sector_basis(std::size_t n_orb, int n_elec);

/// H |v>, including e_const, with exact fermionic signs.
CIVector apply_hamiltonian(const MolecularHamiltonian& H, const CIVector& v);

/// Dense matrix of H on sector_basis(H.n_orb, n_elec).
Eigen::MatrixXd sector_matrix(const MolecularHamiltonian& H, int n_elec);

}  // namespace bliss
