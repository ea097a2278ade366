#include "bliss/bliss_lp.hpp"

#include <map>

namespace bliss {

LpBlissVarMap::LpBlissVarMap(std::size_t n_orb) : n_(n_orb) {}

std::size_t LpBlissVarMap::xi(std::size_t i, std::size_t j) const noexcept {
  if (i > j) std::swap(i, j);
  // Rows 0..i-1 of the upper triangle hold n + (n-1) + ... entries.
  return 2 + i * n_ - i * (i - 1) / 2 + (j - i);
}

BlissParams LpBlissVarMap::to_params(std::span<const double> x) const {
  BlissParams K(n_);
  K.mu1 = x[mu1()];
  K.mu2 = x[mu2()];
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j) K.set_xi(i, j, x[xi(i, j)]);
  return K;
}

std::vector<double> LpBlissVarMap::from_params(const BlissParams& K) const {
  std::vector<double> x(n_vars(), 0.0);
  x[mu1()] = K.mu1;
  x[mu2()] = K.mu2;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j) x[xi(i, j)] = K.xi(i, j);
  return x;
}

std::vector<std::string> LpBlissVarMap::names() const {
  std::vector<std::string> out(n_vars());
  out[mu1()] = "mu1";
  out[mu2()] = "mu2";
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j)
      out[xi(i, j)] = "xi_" + std::to_string(i) + "_" + std::to_string(j);
  return out;
}

namespace {

// constant + sum coef * x[var]
struct Affine {
  double constant = 0.0;
  std::map<std::size_t, double> coef;

  Affine& add(const Affine& o, double s) {
    constant += s * o.constant;
    for (const auto& [v, c] : o.coef) coef[v] += s * c;
    return *this;
  }
  void add_var(std::size_t v, double c) { coef[v] += c; }

  void emit(L1Problem& p, double weight) const {
    L1Row row;
    for (const auto& [v, c] : coef)
      if (c != 0.0) row.terms.emplace_back(v, c);
    p.add_row(std::move(row), -constant, weight);
  }
};

class ShiftedIntegrals {
 public:
  ShiftedIntegrals(const MolecularHamiltonian& H, const LpBlissVarMap& vars)
      : H_(H), vars_(vars) {}

  // h_ij - mu1 delta_ij + Ne xi_ij
  Affine h(std::size_t i, std::size_t j) const {
    Affine a;
    a.constant = H_.h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    if (i == j) a.add_var(LpBlissVarMap::mu1(), -1.0);
    a.add_var(vars_.xi(i, j), static_cast<double>(H_.n_elec));
    return a;
  }

  // g_ijkl - mu2 d_ij d_kl - (xi_ij d_kl + d_ij xi_kl) / 2
  Affine g(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    Affine a;
    a.constant = H_.g(i, j, k, l);
    if (i == j && k == l) a.add_var(LpBlissVarMap::mu2(), -1.0);
    if (k == l) a.add_var(vars_.xi(i, j), -0.5);
    if (i == j) a.add_var(vars_.xi(k, l), -0.5);
    return a;
  }

 private:
  const MolecularHamiltonian& H_;
  const LpBlissVarMap& vars_;
};

}  // namespace

LpBlissProblem build_lp_bliss_problem(const MolecularHamiltonian& H) {
  H.validate();
  const std::size_t n = H.n_orb;
  LpBlissProblem out{L1Problem{}, LpBlissVarMap(n)};
  L1Problem& p = out.problem;
  p.n_vars = out.vars.n_vars();
  p.var_names = out.vars.names();
  const ShiftedIntegrals s(H, out.vars);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Affine a = s.h(i, j);
      for (std::size_t k = 0; k < n; ++k) a.add(s.g(i, j, k, k), 2.0);
      a.emit(p, 1.0);
    }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) s.g(i, j, k, l).emit(p, 0.5);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < i; ++k)
        for (std::size_t l = 0; l < j; ++l) {
          Affine a = s.g(i, j, k, l);
          a.add(s.g(i, l, k, j), -1.0);
          a.emit(p, 1.0);
        }
  return out;
}

LpBlissResult lp_bliss(const MolecularHamiltonian& H, const SolverOptions& opts,
                       const LpSolver& solver) {
  const LpBlissProblem built = build_lp_bliss_problem(H);
  const L1Problem merged = merge_duplicate_rows(built.problem);

  LpBlissResult out;
  out.rows_before_merge = built.problem.n_rows();
  out.rows_after_merge = merged.n_rows();
  out.solution = l1_minimize(merged, opts, solver);
  out.params = built.vars.to_params(out.solution.x_opt);
  out.norm = pauli_one_norm(apply_bliss(H, out.params));
  return out;
}

}  // namespace bliss
