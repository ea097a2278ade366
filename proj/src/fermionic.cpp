#include "bliss/fermionic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "bliss/errors.hpp"
#include "bliss/l1_problem.hpp"

namespace bliss {

namespace {
using Index = Eigen::Index;
Index ix(std::size_t i) { return static_cast<Index>(i); }

SolverStatus worse(SolverStatus a, SolverStatus b) {
  return a == SolverStatus::Optimal ? b : a;
}
}  // namespace

Eigen::MatrixXd CsaFragment::shifted_lambda() const {
  const Index n = lambda.rows();
  Eigen::MatrixXd lt = lambda;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const double ti = theta.size() ? theta(i) : 0.0;
      const double tj = theta.size() ? theta(j) : 0.0;
      lt(i, j) -= mu2 + 0.5 * (ti + tj);
    }
  return lt;
}

CsaFragment to_csa(const DFFragment& frag) {
  const Eigen::VectorXd e = frag.shifted_eps();
  CsaFragment c;
  c.U = frag.U;
  c.lambda = static_cast<double>(frag.sign) * e * e.transpose();
  c.theta = Eigen::VectorXd::Zero(e.size());
  return c;
}

double canonical_median(std::vector<double> values) {
  if (values.empty()) throw InvariantError("median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : values[n / 2 - 1];
}

OneBodySpectrum one_body_spectrum(const Eigen::MatrixXd& h_eff) {
  OneBodySpectrum s;
  if (h_eff.rows() == 0) return s;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h_eff);
  s.gamma = es.eigenvalues();
  s.V = es.eigenvectors();
  s.mu1 = 0.0;
  s.lambda_1e = s.gamma.cwiseAbs().sum();
  return s;
}

OneBodySpectrum one_electron_shift(const Eigen::MatrixXd& h_eff) {
  OneBodySpectrum s = one_body_spectrum(h_eff);
  if (s.gamma.size() == 0) return s;
  s.mu1 = canonical_median({s.gamma.data(), s.gamma.data() + s.gamma.size()});
  s.lambda_1e = (s.gamma.array() - s.mu1).abs().sum();
  return s;
}

double lambda_df(const DFFragment& frag) {
  const double t = frag.shifted_eps().cwiseAbs().sum();
  return 0.5 * t * t;
}

double lambda_csa(const CsaFragment& frag) {
  const Eigen::MatrixXd lt = frag.shifted_lambda();
  double off = 0.0, diag = 0.0;
  for (Index i = 0; i < lt.rows(); ++i)
    for (Index j = 0; j < lt.cols(); ++j) {
      if (i == j)
        diag += std::abs(lt(i, i));
      else
        off += std::abs(lt(i, j));
    }
  return off + 0.5 * diag;
}

DFFragment lrps_shift(const DFFragment& frag) {
  DFFragment out = frag;
  if (frag.eps.size() == 0) {
    out.phi = 0.0;
    return out;
  }
  out.phi = canonical_median({frag.eps.data(), frag.eps.data() + frag.eps.size()});
  return out;
}

LrpsCorrection lrps_one_body_correction(const DFFragment& frag, int n_elec) {
  if (!frag.phi) throw InvariantError("lrps_one_body_correction: fragment has no phi");
  const double phi = *frag.phi;
  const double s = frag.sign;
  const double ne = n_elec;
  const Eigen::MatrixXd L = frag.one_body();
  LrpsCorrection c;
  c.one_body = s * 2.0 * phi * ne * L;
  c.constant = s * phi * phi * ne * ne;
  c.bliss = BlissParams(frag.dim());
  c.bliss.mu2 = s * phi * phi;
  c.bliss.add_xi(-2.0 * s * phi * L);
  return c;
}

CsaFragment lrbs_shift(const CsaFragment& frag, const SolverOptions& opts, SolverStatus* status) {
  const std::size_t n = frag.dim();
  if (frag.mu2 != 0.0 || (frag.theta.size() && frag.theta.cwiseAbs().maxCoeff() != 0.0))
    throw InvariantError("lrbs_shift: fragment is already shifted");

  // x = (mu2, theta_0, ..., theta_{n-1}); i < j rows stand for both (i,j), (j,i).
  L1Problem p;
  p.n_vars = 1 + n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      L1Row row;
      row.terms.emplace_back(0, 1.0);
      const double lij = frag.lambda(ix(i), ix(j));
      if (i == j) {
        row.terms.emplace_back(1 + i, 1.0);
        p.add_row(std::move(row), lij, 0.5);
      } else {
        row.terms.emplace_back(1 + i, 0.5);
        row.terms.emplace_back(1 + j, 0.5);
        p.add_row(std::move(row), lij, 2.0);
      }
    }
  const L1Solution sol = l1_minimize(p, opts);
  if (status) *status = sol.status;

  CsaFragment out = frag;
  out.mu2 = sol.x_opt[0];
  out.theta = Eigen::VectorXd(ix(n));
  for (std::size_t i = 0; i < n; ++i) out.theta(ix(i)) = sol.x_opt[1 + i];
  return out;
}

Eigen::MatrixXd reflection_one_body(const DFFragment& frag) {
  const double C = frag.shifted_eps().sum();
  return static_cast<double>(frag.sign) * 2.0 * C * frag.shifted_one_body();
}

Eigen::MatrixXd reflection_one_body(const CsaFragment& frag, int n_elec) {
  const Eigen::MatrixXd lt = frag.shifted_lambda();
  Eigen::VectorXd c = 2.0 * lt.rowwise().sum();
  if (frag.theta.size()) c += static_cast<double>(n_elec) * frag.theta;
  return frag.U.transpose() * c.asDiagonal() * frag.U;
}

namespace {

MolecularHamiltonian outer_square(const Eigen::MatrixXd& L, double sign, int n_elec) {
  const std::size_t n = static_cast<std::size_t>(L.rows());
  MolecularHamiltonian F = MolecularHamiltonian::zero(n, n_elec);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          F.g(i, j, k, l) = sign * L(ix(i), ix(j)) * L(ix(k), ix(l));
  return F;
}

}  // namespace

MolecularHamiltonian fragment_hamiltonian(const DFFragment& frag, int n_elec) {
  return outer_square(frag.shifted_one_body(), frag.sign, n_elec);
}

MolecularHamiltonian fragment_lcu_hamiltonian(const DFFragment& frag, int n_elec) {
  // (C - l)^2 with l = sum (eps - phi) n' and C = sum (eps - phi).
  const Eigen::MatrixXd L = frag.shifted_one_body();
  const double C = frag.shifted_eps().sum();
  const double s = frag.sign;
  MolecularHamiltonian F = outer_square(L, s, n_elec);
  F.h = -2.0 * s * C * L;
  F.e_const = s * C * C;
  return F;
}

MolecularHamiltonian fragment_hamiltonian(const CsaFragment& frag, int n_elec) {
  MolecularHamiltonian F = MolecularHamiltonian::zero(frag.dim(), n_elec);
  F.g = csa_two_body(frag.U, frag.shifted_lambda());
  return F;
}

std::optional<double> csa_reflection_range(const CsaFragment& frag) {
  const std::size_t n = frag.dim();
  if (n > 12) return std::nullopt;
  const Eigen::MatrixXd lt = frag.shifted_lambda();
  const double tr = lt.trace();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  Eigen::VectorXd R(ix(n));
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= 3) R(ix(i)) = 2.0 * (static_cast<double>(c % 3) - 1.0);
    const double v = 0.25 * (R.dot(lt * R) - 2.0 * tr);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

std::string to_string(FermionicMethod m) {
  switch (m) {
    case FermionicMethod::DF: return "df";
    case FermionicMethod::DF_LRPS: return "df-lrps";
    case FermionicMethod::DF_LRBS: return "df-lrbs";
  }
  return "unknown";
}

std::string to_string(GlobalBlissFlavor f) {
  return f == GlobalBlissFlavor::FLR ? "flr" : "ffr";
}

FermionicReport build_fermionic_report(const MolecularHamiltonian& H, FermionicMethod method,
                                       double df_tol, const SolverOptions& opts) {
  const std::vector<DFFragment> frags = double_factorize(H, df_tol);
  FermionicReport rep;
  rep.method = method;
  rep.n_fragments = frags.size();
  Eigen::MatrixXd h_eff = H.h;
  double half_sum = 0.0;
  bool half_complete = true;

  for (const DFFragment& f0 : frags) {
    FragmentNorm fn;
    fn.sign = f0.sign;
    fn.lambda_unshifted = lambda_df(f0);
    switch (method) {
      case FermionicMethod::DF: {
        fn.lambda = fn.lambda_unshifted;
        fn.half_range = fn.lambda;
        h_eff += reflection_one_body(f0);
        break;
      }
      case FermionicMethod::DF_LRPS: {
        const DFFragment f = lrps_shift(f0);
        fn.phi = f.phi;
        fn.lambda = lambda_df(f);
        fn.half_range = fn.lambda;
        h_eff += lrps_one_body_correction(f, H.n_elec).one_body + reflection_one_body(f);
        break;
      }
      case FermionicMethod::DF_LRBS: {
        SolverStatus st = SolverStatus::Optimal;
        const CsaFragment c = lrbs_shift(to_csa(f0), opts, &st);
        rep.solver_status = worse(rep.solver_status, st);
        fn.mu2 = c.mu2;
        fn.lambda = lambda_csa(c);
        if (const auto r = csa_reflection_range(c)) fn.half_range = 0.5 * *r;
        h_eff += reflection_one_body(c, H.n_elec);
        break;
      }
    }
    rep.lambda_two_body += fn.lambda;
    rep.lambda_two_body_unshifted += fn.lambda_unshifted;
    if (fn.half_range)
      half_sum += *fn.half_range;
    else
      half_complete = false;
    rep.fragments.push_back(fn);
  }
  h_eff = 0.5 * (h_eff + h_eff.transpose()).eval();

  const OneBodySpectrum s =
      method == FermionicMethod::DF ? one_body_spectrum(h_eff) : one_electron_shift(h_eff);
  rep.mu1 = s.mu1;
  rep.lambda_1e = s.lambda_1e;
  rep.lambda_total = rep.lambda_1e + rep.lambda_two_body;
  if (half_complete) rep.half_range_sum = half_sum;
  return rep;
}

std::string to_string(Mu1Source m) {
  return m == Mu1Source::OneBodyFragment ? "one-body fragment" : "unmodified h";
}

BlissParams assemble_global_bliss(const MolecularHamiltonian& H, GlobalBlissFlavor flavor,
                                  double df_tol, const SolverOptions& opts, SolverStatus* status,
                                  Mu1Source mu1_source) {
  const std::vector<DFFragment> frags = double_factorize(H, df_tol);
  BlissParams K(H.n_orb);
  Eigen::MatrixXd h_eff = H.h;
  SolverStatus overall = SolverStatus::Optimal;
  for (const DFFragment& f0 : frags) {
    if (flavor == GlobalBlissFlavor::FLR) {
      // The fragment identity gives F(phi) = F + K_a - ..., so the operator
      // subtracted by apply_bliss is -K_a.
      const DFFragment f = lrps_shift(f0);
      const LrpsCorrection corr = lrps_one_body_correction(f, H.n_elec);
      BlissParams part(H.n_orb);
      part.mu2 = -corr.bliss.mu2;
      part.add_xi(-corr.bliss.xi());
      K += part;
      h_eff += corr.one_body + reflection_one_body(f);
    } else {
      SolverStatus st = SolverStatus::Optimal;
      const CsaFragment c = lrbs_shift(to_csa(f0), opts, &st);
      overall = worse(overall, st);
      BlissParams part(H.n_orb);
      part.mu2 = c.mu2;
      part.add_xi(c.U.transpose() * c.theta.asDiagonal() * c.U);
      K += part;
      h_eff += reflection_one_body(c, H.n_elec);
    }
  }
  if (H.n_orb) {
    const Eigen::MatrixXd& h1 = mu1_source == Mu1Source::UnmodifiedH ? H.h : h_eff;
    K.mu1 = one_electron_shift(0.5 * (h1 + h1.transpose())).mu1;
  }
  if (status) *status = overall;
  return K;
}

}  // namespace bliss
