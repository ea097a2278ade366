#include "bliss/pauli_norm.hpp"

#include <cmath>

namespace bliss {

PauliNormBreakdown pauli_one_norm(const MolecularHamiltonian& H) {
  const std::size_t n = H.n_orb;
  const auto& g = H.g;
  PauliNormBreakdown out;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double v = H.h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      for (std::size_t k = 0; k < n; ++k) v += 2.0 * g(i, j, k, k);
      out.term1 += std::abs(v);
    }

  double abs_sum = 0.0;
  for (double v : g.data()) abs_sum += std::abs(v);
  out.term2 = 0.5 * abs_sum;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < i; ++k)
        for (std::size_t l = 0; l < j; ++l)
          out.term3 += std::abs(g(i, j, k, l) - g(i, l, k, j));

  out.lambda_total = out.term1 + out.term2 + out.term3;
  return out;
}

}  // namespace bliss
