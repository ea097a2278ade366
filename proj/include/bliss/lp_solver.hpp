#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bliss {

enum class SolverStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string to_string(SolverStatus status);

struct SolverOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-8;
  /// 0 selects the default cap of 50 * (variables + constraints).
  std::size_t max_iterations = 0;
};

/// min c.z  subject to  G z <= h,  z_j >= 0 where nonnegative[j], free
/// otherwise.
struct LinearProgram {
  Eigen::VectorXd c;
  Eigen::MatrixXd G;
  Eigen::VectorXd h;
  std::vector<bool> nonnegative;

  std::size_t n_vars() const noexcept { return static_cast<std::size_t>(c.size()); }
  std::size_t n_constraints() const noexcept { return static_cast<std::size_t>(h.size()); }
};

struct LpResult {
  SolverStatus status = SolverStatus::IterationLimit;
  /// Optimal point, or the last feasible incumbent when one exists.
  Eigen::VectorXd z;
  bool z_feasible = false;
  double objective = 0.0;
  std::size_t iterations = 0;
};

/// Plug-in point for external LP solvers.
class LpSolver {
 public:
  virtual ~LpSolver() = default;
  virtual LpResult solve(const LinearProgram& lp, const SolverOptions& opts) const = 0;
  virtual std::string name() const = 0;
};

/// Dense two-phase revised simplex. Pricing is Dantzig's rule; after a run of
/// degenerate pivots it switches to Bland's rule until the objective moves
/// again, which rules out cycling. All tie-breaks go to the lowest index, so
/// results are reproducible bit for bit.
class SimplexSolver final : public LpSolver {
 public:
  LpResult solve(const LinearProgram& lp, const SolverOptions& opts) const override;
  std::string name() const override { return "dense-revised-simplex"; }
};

const LpSolver& default_lp_solver();

}  // namespace bliss
