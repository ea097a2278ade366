#include "bliss/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "bliss/errors.hpp"

namespace bliss {

std::string to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::Optimal: return "optimal";
    case SolverStatus::Infeasible: return "infeasible";
    case SolverStatus::Unbounded: return "unbounded";
    case SolverStatus::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

enum class ColKind { Free, NonNeg, Artificial };

constexpr double kPivotTol = 1e-11;
constexpr std::size_t kRefactorEvery = 50;
constexpr std::size_t kDegenerateRun = 30;

// Standard form  A z = b, b >= 0, with per-column kind. Nonbasic columns sit
// at zero; free columns may enter in either direction and never leave.
class Tableau {
 public:
  Tableau(Eigen::MatrixXd A, Eigen::VectorXd b, std::vector<ColKind> kind,
          std::vector<Eigen::Index> basis, const SolverOptions& opts,
          std::size_t max_iter)
      : A_(std::move(A)),
        b_(std::move(b)),
        kind_(std::move(kind)),
        basis_(std::move(basis)),
        opts_(opts),
        max_iter_(max_iter) {
    in_basis_.assign(kind_.size(), -1);
    for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(basis_.size()); ++r)
      in_basis_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = r;
    refactor();
  }

  // Runs simplex iterations for cost vector c. Artificials never enter when
  // `frozen_artificials` is set and are held at zero when basic.
  SolverStatus optimize(const Eigen::VectorXd& c, bool frozen_artificials) {
    const Eigen::Index m = A_.rows();
    const Eigen::Index ncol = A_.cols();
    bool bland = false;
    std::size_t degenerate = 0;

    while (true) {
      if (iterations_ >= max_iter_) return SolverStatus::IterationLimit;
      if (since_refactor_ >= kRefactorEvery) refactor();

      Eigen::VectorXd cb(m);
      for (Eigen::Index r = 0; r < m; ++r) cb(r) = c(basis_[static_cast<std::size_t>(r)]);
      const Eigen::RowVectorXd pi = cb.transpose() * Binv_;

      Eigen::Index enter = -1;
      double enter_dir = 0.0;
      double best = 0.0;
      for (Eigen::Index j = 0; j < ncol; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        if (in_basis_[ju] >= 0) continue;
        if (kind_[ju] == ColKind::Artificial && frozen_artificials) continue;
        const double d = c(j) - pi.dot(A_.col(j));
        double score = 0.0;
        double dir = 0.0;
        if (kind_[ju] == ColKind::Free) {
          if (std::abs(d) > opts_.optimality_tol) {
            score = std::abs(d);
            dir = d < 0 ? 1.0 : -1.0;
          }
        } else if (d < -opts_.optimality_tol) {
          score = -d;
          dir = 1.0;
        }
        if (dir == 0.0) continue;
        if (bland) {
          enter = j;
          enter_dir = dir;
          break;
        }
        if (score > best) {
          best = score;
          enter = j;
          enter_dir = dir;
        }
      }
      if (enter < 0) return SolverStatus::Optimal;

      const Eigen::VectorXd alpha = Binv_ * A_.col(enter);

      // Ratio test on x_B - t * dir * alpha.
      Eigen::Index leave = -1;
      double t_best = std::numeric_limits<double>::infinity();
      double piv_best = 0.0;
      for (Eigen::Index r = 0; r < m; ++r) {
        const auto bv = static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)]);
        const double a = enter_dir * alpha(r);
        if (kind_[bv] == ColKind::Free) continue;
        double t;
        if (kind_[bv] == ColKind::Artificial && frozen_artificials) {
          if (std::abs(a) <= kPivotTol) continue;
          t = 0.0;
        } else {
          if (a <= kPivotTol) continue;
          t = std::max(xb_(r), 0.0) / a;
        }
        bool take = false;
        if (leave < 0 || t < t_best - 1e-12) {
          take = true;
        } else if (t <= t_best + 1e-12) {
          if (bland)
            take = basis_[static_cast<std::size_t>(r)] <
                   basis_[static_cast<std::size_t>(leave)];
          else
            take = std::abs(a) > piv_best;
        }
        if (take) {
          leave = r;
          t_best = t;
          piv_best = std::abs(a);
        }
      }
      if (leave < 0) return SolverStatus::Unbounded;

      if (t_best <= opts_.feasibility_tol) {
        if (++degenerate >= kDegenerateRun) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
      pivot(enter, leave, alpha, t_best, enter_dir);
      ++iterations_;
    }
  }

  // Pivots any basic artificial out for a non-artificial column if one has a
  // usable entry in that row. Values do not change (the artificial is zero).
  void expel_artificials() {
    const Eigen::Index m = A_.rows();
    for (Eigen::Index r = 0; r < m; ++r) {
      const auto bv = static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)]);
      if (kind_[bv] != ColKind::Artificial) continue;
      const Eigen::RowVectorXd row = Binv_.row(r);
      Eigen::Index enter = -1;
      double best = 1e-9;
      for (Eigen::Index j = 0; j < A_.cols(); ++j) {
        const auto ju = static_cast<std::size_t>(j);
        if (in_basis_[ju] >= 0 || kind_[ju] == ColKind::Artificial) continue;
        const double v = std::abs(row.dot(A_.col(j)));
        if (v > best) {
          best = v;
          enter = j;
        }
      }
      if (enter < 0) continue;
      const Eigen::VectorXd alpha = Binv_ * A_.col(enter);
      pivot(enter, r, alpha, 0.0, 1.0);
    }
  }

  Eigen::VectorXd values() const {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(A_.cols());
    for (std::size_t r = 0; r < basis_.size(); ++r)
      z(basis_[r]) = xb_(static_cast<Eigen::Index>(r));
    return z;
  }

  std::size_t iterations() const noexcept { return iterations_; }
  void refresh() { refactor(); }

 private:
  // Entering column moves by t >= 0 along dir.
  void pivot(Eigen::Index enter, Eigen::Index leave, const Eigen::VectorXd& alpha,
             double t, double dir) {
    const Eigen::Index m = A_.rows();
    for (Eigen::Index r = 0; r < m; ++r) xb_(r) -= t * dir * alpha(r);
    xb_(leave) = dir * t;

    const double p = alpha(leave);
    Binv_.row(leave) /= p;
    for (Eigen::Index r = 0; r < m; ++r) {
      if (r == leave || alpha(r) == 0.0) continue;
      Binv_.row(r) -= alpha(r) * Binv_.row(leave);
    }
    const auto old = static_cast<std::size_t>(basis_[static_cast<std::size_t>(leave)]);
    in_basis_[old] = -1;
    basis_[static_cast<std::size_t>(leave)] = enter;
    in_basis_[static_cast<std::size_t>(enter)] = leave;
    ++since_refactor_;
  }

  void refactor() {
    const Eigen::Index m = A_.rows();
    Eigen::MatrixXd B(m, m);
    for (Eigen::Index r = 0; r < m; ++r) B.col(r) = A_.col(basis_[static_cast<std::size_t>(r)]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    Binv_ = lu.inverse();
    xb_ = Binv_ * b_;
    since_refactor_ = 0;
  }

  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  std::vector<ColKind> kind_;
  std::vector<Eigen::Index> basis_;
  std::vector<Eigen::Index> in_basis_;
  SolverOptions opts_;
  std::size_t max_iter_;
  Eigen::MatrixXd Binv_;
  Eigen::VectorXd xb_;
  std::size_t iterations_ = 0;
  std::size_t since_refactor_ = 0;
};

}  // namespace

LpResult SimplexSolver::solve(const LinearProgram& lp, const SolverOptions& opts) const {
  const Eigen::Index n = lp.c.size();
  const Eigen::Index m = lp.h.size();
  if (lp.G.rows() != m || lp.G.cols() != n ||
      lp.nonnegative.size() != static_cast<std::size_t>(n))
    throw DimensionError("linear program: inconsistent dimensions");

  const std::size_t max_iter =
      opts.max_iterations ? opts.max_iterations
                          : 50 * static_cast<std::size_t>(n + m);

  LpResult out;
  out.z = Eigen::VectorXd::Zero(n);

  if (m == 0) {
    // Only sign constraints: bounded iff no improving direction.
    for (Eigen::Index j = 0; j < n; ++j) {
      const bool nn = lp.nonnegative[static_cast<std::size_t>(j)];
      if ((nn && lp.c(j) < 0) || (!nn && lp.c(j) != 0)) {
        out.status = SolverStatus::Unbounded;
        return out;
      }
    }
    out.status = SolverStatus::Optimal;
    out.z_feasible = true;
    return out;
  }

  // Columns: originals, one slack per row, one artificial per negative-rhs row.
  std::vector<Eigen::Index> negative_rows;
  for (Eigen::Index r = 0; r < m; ++r)
    if (lp.h(r) < 0) negative_rows.push_back(r);
  const Eigen::Index n_art = static_cast<Eigen::Index>(negative_rows.size());
  const Eigen::Index ncol = n + m + n_art;

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, ncol);
  Eigen::VectorXd b(m);
  std::vector<ColKind> kind(static_cast<std::size_t>(ncol), ColKind::NonNeg);
  for (Eigen::Index j = 0; j < n; ++j)
    if (!lp.nonnegative[static_cast<std::size_t>(j)]) kind[static_cast<std::size_t>(j)] = ColKind::Free;
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index r = 0; r < m; ++r) {
    const double s = lp.h(r) < 0 ? -1.0 : 1.0;
    A.block(r, 0, 1, n) = s * lp.G.row(r);
    A(r, n + r) = s;
    b(r) = s * lp.h(r);
    basis[static_cast<std::size_t>(r)] = n + r;
  }
  for (Eigen::Index a = 0; a < n_art; ++a) {
    const Eigen::Index r = negative_rows[static_cast<std::size_t>(a)];
    A(r, n + m + a) = 1.0;
    kind[static_cast<std::size_t>(n + m + a)] = ColKind::Artificial;
    basis[static_cast<std::size_t>(r)] = n + m + a;
  }

  Tableau tab(std::move(A), std::move(b), std::move(kind), std::move(basis), opts, max_iter);

  if (n_art > 0) {
    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(ncol);
    c1.tail(n_art).setOnes();
    const SolverStatus s1 = tab.optimize(c1, false);
    out.iterations = tab.iterations();
    if (s1 == SolverStatus::IterationLimit) {
      out.status = s1;
      return out;
    }
    tab.refresh();
    const Eigen::VectorXd z = tab.values();
    const double infeas = z.tail(n_art).sum();
    const double scale = 1.0 + lp.h.cwiseAbs().maxCoeff();
    if (infeas > opts.feasibility_tol * scale) {
      out.status = SolverStatus::Infeasible;
      return out;
    }
    tab.expel_artificials();
  }

  Eigen::VectorXd c2 = Eigen::VectorXd::Zero(ncol);
  c2.head(n) = lp.c;
  const SolverStatus s2 = tab.optimize(c2, true);
  tab.refresh();
  out.iterations = tab.iterations();
  out.status = s2;
  out.z = tab.values().head(n);
  out.z_feasible = s2 != SolverStatus::Unbounded;
  out.objective = lp.c.dot(out.z);
  return out;
}

const LpSolver& default_lp_solver() {
  static const SimplexSolver solver;
  return solver;
}

}  // namespace bliss
