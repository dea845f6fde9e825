#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace s2o {

// min c.x  s.t.  A x = b,  lower <= x <= upper.
// Lower bounds must be finite; upper bounds may be +infinity.
struct LpProblem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  Eigen::VectorXd x;
  // Simplex multipliers of the equality rows at the final basis.
  Eigen::VectorXd duals;
  double objective = 0.0;
  std::size_t iterations = 0;
};

struct SimplexOptions {
  double optimality_tol = 1e-9;
  double feasibility_tol = 1e-9;
  double pivot_tol = 1e-10;
  // Switch to Bland's rule after this many consecutive degenerate pivots.
  std::size_t degenerate_limit = 50;
  // 0 picks a limit from the problem size.
  std::size_t max_iterations = 0;
};

// Two-phase bounded-variable revised simplex. Phase one starts from all
// structurals at their lower bounds plus one artificial per row.
LpSolution SolveLp(const LpProblem& problem, const SimplexOptions& options = {});

}  // namespace s2o
