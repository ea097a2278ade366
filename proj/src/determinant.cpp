#include "bliss/determinant.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bliss/errors.hpp"

namespace bliss {

CIVector::CIVector(int n_elec, std::vector<Entry> entries) : n_elec_(n_elec) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (const auto& e : entries) {
    if (e.first.n_elec() != n_elec)
      throw InvariantError("CIVector: determinant outside the " + std::to_string(n_elec) +
                           "-electron sector");
    if (!entries_.empty() && entries_.back().first == e.first)
      entries_.back().second += e.second;
    else
      entries_.push_back(e);
  }
}

double CIVector::norm() const { return std::sqrt(dot(*this)); }

double CIVector::dot(const CIVector& other) const {
  double s = 0.0;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first < b->first)
      ++a;
    else if (b->first < a->first)
      ++b;
    else
      s += (a++)->second * (b++)->second;
  }
  return s;
}

double CIVector::amplitude(Determinant d) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), d,
                             [](const Entry& e, Determinant x) { return e.first < x; });
  return it != entries_.end() && it->first == d ? it->second : 0.0;
}

void CIVector::axpy(double s, const CIVector& other) {
  std::vector<Entry> out;
  out.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      out.emplace_back(b->first, s * b->second);
      ++b;
    } else {
      out.emplace_back(a->first, a->second + s * b->second);
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
}

void CIVector::scale(double s) {
  for (auto& e : entries_) e.second *= s;
}

CIVector CIVector::truncated(std::size_t keep) const {
  if (keep >= entries_.size()) return *this;
  std::vector<Entry> sorted = entries_;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Entry& a, const Entry& b) {
    return std::abs(a.second) > std::abs(b.second);
  });
  sorted.resize(keep);
  return CIVector(n_elec_, std::move(sorted));
}

std::vector<Determinant> sector_basis(std::size_t n_orb, int n_elec) {
  const std::size_t n_so = 2 * n_orb;
  if (n_so > 64) throw DimensionError("more than 64 spin-orbitals");
  if (n_elec < 0 || static_cast<std::size_t>(n_elec) > n_so)
    throw DimensionError("electron count outside [0, 2N]");
  const auto k = static_cast<std::size_t>(n_elec);
  auto low_mask = [](std::size_t m) { return m >= 64 ? ~0ull : ((1ull << m) - 1); };
  if (k == 0) return {Determinant{0}};
  if (k == n_so) return {Determinant{low_mask(n_so)}};
  std::vector<Determinant> out;
  const std::uint64_t last = low_mask(k) << (n_so - k);
  // Gosper's hack: next integer with the same popcount.
  for (std::uint64_t v = low_mask(k);;) {
    out.push_back(Determinant{v});
    if (v == last) break;
    const std::uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & (t + 1)) - 1) >> (__builtin_ctzll(v) + 1));
  }
  return out;
}

namespace {

inline int parity_below(std::uint64_t bits, unsigned p) {
  const std::uint64_t mask = p == 0 ? 0 : ((1ull << p) - 1);
  return __builtin_popcountll(bits & mask) & 1;
}

// a+_p a_q on bits; false when the result vanishes.
inline bool excite(std::uint64_t bits, unsigned p, unsigned q, std::uint64_t& out, double& sign) {
  if (!((bits >> q) & 1u)) return false;
  std::uint64_t b = bits & ~(1ull << q);
  if ((b >> p) & 1u) return false;
  int par = parity_below(bits, q);
  par += parity_below(b, p);
  out = b | (1ull << p);
  sign = (par & 1) ? -1.0 : 1.0;
  return true;
}

// Calls f(bits', value) for every term of H|D>, duplicates included.
template <class F>
void for_each_connection(const MolecularHamiltonian& H, std::uint64_t D, F&& f) {
  const std::size_t n = H.n_orb;
  if (H.e_const != 0.0) f(D, H.e_const);

  for (unsigned s = 0; s < 2; ++s)
    for (std::size_t j = 0; j < n; ++j) {
      const unsigned q = spin_orbital(j, s);
      if (!((D >> q) & 1u)) continue;
      for (std::size_t i = 0; i < n; ++i) {
        const double hij = H.h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (hij == 0.0) continue;
        std::uint64_t D1;
        double s1;
        if (excite(D, spin_orbital(i, s), q, D1, s1)) f(D1, s1 * hij);
      }
    }

  for (unsigned s = 0; s < 2; ++s)
    for (std::size_t l = 0; l < n; ++l) {
      const unsigned ql = spin_orbital(l, s);
      if (!((D >> ql) & 1u)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        std::uint64_t D1;
        double s1;
        if (!excite(D, spin_orbital(k, s), ql, D1, s1)) continue;
        for (unsigned t = 0; t < 2; ++t)
          for (std::size_t j = 0; j < n; ++j) {
            const unsigned qj = spin_orbital(j, t);
            if (!((D1 >> qj) & 1u)) continue;
            for (std::size_t i = 0; i < n; ++i) {
              const double gv = H.g(i, j, k, l);
              if (gv == 0.0) continue;
              std::uint64_t D2;
              double s2;
              if (excite(D1, spin_orbital(i, t), qj, D2, s2)) f(D2, s1 * s2 * gv);
            }
          }
      }
    }
}

}  // namespace

CIVector apply_hamiltonian(const MolecularHamiltonian& H, const CIVector& v) {
  if (2 * H.n_orb > 64) throw DimensionError("more than 64 spin-orbitals");
  std::vector<CIVector::Entry> acc;
  for (const auto& [det, amp] : v.entries()) {
    if (amp == 0.0) continue;
    for_each_connection(H, det.bits,
                        [&](std::uint64_t b, double val) { acc.emplace_back(Determinant{b}, val * amp); });
  }
  CIVector out(v.n_elec(), std::move(acc));
  return out;
}

Eigen::MatrixXd sector_matrix(const MolecularHamiltonian& H, int n_elec) {
  const std::vector<Determinant> basis = sector_basis(H.n_orb, n_elec);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for_each_connection(H, basis[static_cast<std::size_t>(c)].bits, [&](std::uint64_t b, double val) {
      const auto it = std::lower_bound(basis.begin(), basis.end(), Determinant{b});
      M(static_cast<Eigen::Index>(it - basis.begin()), c) += val;
    });
  return M;
}

}  // namespace bliss
