#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "bliss/hamiltonian.hpp"

namespace bliss {

// FCIDUMP reading and writing.
//
// Integral lines are "value i j k l" with 1-based indices in chemist notation:
//   (i j 0 0)  one-electron integral t_ij
//   (0 0 0 0)  core energy
//   (i 0 0 0)  orbital energy, accepted and ignored
//   otherwise  two-electron integral (ij|kl)
//
// The file describes e + sum t_ij a+a + 1/2 sum (ij|kl) a+_i a+_k a_l a_j.
// In F-operator form this is g = (ij|kl)/2 and h_ij = t_ij - 1/2 sum_k (ik|kj).

MolecularHamiltonian parse_fcidump(std::istream& in);
MolecularHamiltonian parse_fcidump(std::string_view text);
MolecularHamiltonian read_fcidump(const std::filesystem::path& path);

/// One line per 8-fold orbit and per one-body pair; zeros are omitted, the
/// core-energy line is always present.
void write_fcidump(std::ostream& out, const MolecularHamiltonian& H);
std::string write_fcidump(const MolecularHamiltonian& H);
void write_fcidump(const std::filesystem::path& path,
                   const MolecularHamiltonian& H);

}  // namespace bliss
