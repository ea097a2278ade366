#include "bliss/double_factorization.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "bliss/errors.hpp"

namespace bliss {

namespace {
using Index = Eigen::Index;
Index ix(std::size_t i) { return static_cast<Index>(i); }
}  // namespace

Eigen::VectorXd DFFragment::shifted_eps() const {
  return eps.array() - phi.value_or(0.0);
}

Eigen::MatrixXd DFFragment::one_body() const {
  return U.transpose() * eps.asDiagonal() * U;
}

Eigen::MatrixXd DFFragment::shifted_one_body() const {
  return U.transpose() * shifted_eps().asDiagonal() * U;
}

std::vector<DFFragment> double_factorize(const MolecularHamiltonian& H, double tol) {
  if (tol < 0) throw InvariantError("double_factorize: tol must be non-negative");
  const std::size_t n = H.n_orb;
  const double scale = std::max(1.0, H.g.max_abs());
  if (H.g.symmetry_defect() > 1e-8 * scale)
    throw InvariantError("double_factorize: g is not 8-fold symmetric");

  // Pair basis: (i, i) with weight 1, (i < j) with weight sqrt(2).
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
  const Index np = ix(pairs.size());
  auto weight = [&](Index p) {
    return pairs[static_cast<std::size_t>(p)].first == pairs[static_cast<std::size_t>(p)].second
               ? 1.0
               : std::sqrt(2.0);
  };

  Eigen::MatrixXd G(np, np);
  for (Index p = 0; p < np; ++p)
    for (Index q = 0; q < np; ++q) {
      const auto [i, j] = pairs[static_cast<std::size_t>(p)];
      const auto [k, l] = pairs[static_cast<std::size_t>(q)];
      G(p, q) = weight(p) * weight(q) * H.g(i, j, k, l);
    }

  std::vector<DFFragment> out;
  if (np == 0) return out;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  const Eigen::VectorXd& w = es.eigenvalues();
  // Largest |w| first.
  std::vector<Index> order(static_cast<std::size_t>(np));
  for (Index p = 0; p < np; ++p) order[static_cast<std::size_t>(p)] = p;
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return std::abs(w(a)) > std::abs(w(b)); });

  for (Index a : order) {
    if (!(std::abs(w(a)) > tol) || w(a) == 0.0) continue;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(ix(n), ix(n));
    for (Index p = 0; p < np; ++p) {
      const auto [i, j] = pairs[static_cast<std::size_t>(p)];
      const double v = es.eigenvectors()(p, a) / weight(p);
      M(ix(i), ix(j)) = v;
      M(ix(j), ix(i)) = v;
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ms(M);
    DFFragment f;
    f.U = ms.eigenvectors().transpose();
    f.eps = std::sqrt(std::abs(w(a))) * ms.eigenvalues();
    f.sign = w(a) > 0 ? 1 : -1;
    out.push_back(std::move(f));
  }
  return out;
}

TwoBodyTensor reconstruct_two_body(const std::vector<DFFragment>& frags, std::size_t n_orb) {
  TwoBodyTensor g(n_orb);
  for (const auto& f : frags) {
    const Eigen::MatrixXd L = f.one_body();
    for (std::size_t i = 0; i < n_orb; ++i)
      for (std::size_t j = 0; j < n_orb; ++j)
        for (std::size_t k = 0; k < n_orb; ++k)
          for (std::size_t l = 0; l < n_orb; ++l)
            g(i, j, k, l) += f.sign * L(ix(i), ix(j)) * L(ix(k), ix(l));
  }
  return g;
}

}  // namespace bliss
