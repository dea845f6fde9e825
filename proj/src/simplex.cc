#include "s2o/simplex.h"

#include <cmath>
#include <limits>
#include <vector>

#include "s2o/errors.h"

namespace s2o {

namespace {

enum class VarState { kBasic, kLower, kUpper };

class Simplex {
 public:
  Simplex(const LpProblem& p, const SimplexOptions& options)
      : opt_(options), m_(p.A.rows()), n_(p.A.cols()) {
    const Eigen::Index total = n_ + m_;
    A_.resize(m_, total);
    A_.leftCols(n_) = p.A;
    A_.rightCols(m_).setZero();
    b_ = p.b;
    lower_.resize(total);
    upper_.resize(total);
    lower_.head(n_) = p.lower;
    upper_.head(n_) = p.upper;
    x_.resize(total);
    x_.head(n_) = p.lower;
    state_.assign(static_cast<std::size_t>(total), VarState::kLower);

    const Eigen::VectorXd r = b_ - p.A * p.lower;
    residual_scale_ = 1.0 + r.lpNorm<Eigen::Infinity>();
    basis_.resize(static_cast<std::size_t>(m_));
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index a = n_ + i;
      A_(i, a) = r(i) >= 0.0 ? 1.0 : -1.0;
      lower_(a) = 0.0;
      upper_(a) = kInf;
      x_(a) = std::abs(r(i));
      basis_[static_cast<std::size_t>(i)] = a;
      state_[static_cast<std::size_t>(a)] = VarState::kBasic;
    }
    max_iter_ = opt_.max_iterations > 0
                    ? opt_.max_iterations
                    : 100 * static_cast<std::size_t>(total) + 1000;
  }

  LpSolution Solve(const Eigen::VectorXd& c) {
    LpSolution sol;
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n_ + m_);
    phase1.tail(m_).setOnes();
    LpStatus st = Run(phase1);
    sol.iterations = iterations_;
    if (st == LpStatus::kIterationLimit) {
      sol.status = st;
      return sol;
    }
    const double infeasibility = x_.tail(m_).sum();
    // Round-off in the artificials grows with the residual phase one
    // starts from, which can be large even when b is zero.
    const double scale = residual_scale_ * static_cast<double>(m_ + 1);
    if (infeasibility > opt_.feasibility_tol * scale) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    DriveOutArtificials();
    for (Eigen::Index i = 0; i < m_; ++i) upper_(n_ + i) = 0.0;

    Eigen::VectorXd cost = Eigen::VectorXd::Zero(n_ + m_);
    cost.head(n_) = c;
    st = Run(cost);
    sol.status = st;
    sol.iterations = iterations_;
    sol.x = x_.head(n_);
    sol.duals = duals_;
    sol.objective = c.dot(sol.x);
    return sol;
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  Eigen::MatrixXd BasisMatrix() const {
    Eigen::MatrixXd B(m_, m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      B.col(i) = A_.col(basis_[static_cast<std::size_t>(i)]);
    }
    return B;
  }

  void RecomputeBasics(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu) {
    Eigen::VectorXd rhs = b_;
    for (Eigen::Index j = 0; j < n_ + m_; ++j) {
      if (state_[static_cast<std::size_t>(j)] != VarState::kBasic &&
          x_(j) != 0.0) {
        rhs -= A_.col(j) * x_(j);
      }
    }
    const Eigen::VectorXd xb = lu.solve(rhs);
    for (Eigen::Index i = 0; i < m_; ++i) {
      x_(basis_[static_cast<std::size_t>(i)]) = xb(i);
    }
  }

  LpStatus Run(const Eigen::VectorXd& cost) {
    std::size_t degenerate = 0;
    const double cscale = 1.0 + cost.lpNorm<Eigen::Infinity>();
    while (true) {
      const Eigen::MatrixXd B = BasisMatrix();
      const Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
      const Eigen::PartialPivLU<Eigen::MatrixXd> lut(B.transpose());
      RecomputeBasics(lu);
      Eigen::VectorXd cb(m_);
      for (Eigen::Index i = 0; i < m_; ++i) {
        cb(i) = cost(basis_[static_cast<std::size_t>(i)]);
      }
      duals_ = lut.solve(cb);

      const bool bland = degenerate >= opt_.degenerate_limit;
      Eigen::Index entering = -1;
      double best = 0.0;
      for (Eigen::Index j = 0; j < n_ + m_; ++j) {
        const VarState s = state_[static_cast<std::size_t>(j)];
        if (s == VarState::kBasic || upper_(j) - lower_(j) <= 0.0) continue;
        const double d = cost(j) - duals_.dot(A_.col(j));
        double gain = 0.0;
        if (s == VarState::kLower && d < -opt_.optimality_tol * cscale) {
          gain = -d;
        } else if (s == VarState::kUpper && d > opt_.optimality_tol * cscale) {
          gain = d;
        }
        if (gain <= 0.0) continue;
        if (bland) {
          entering = j;
          break;
        }
        if (gain > best) {
          best = gain;
          entering = j;
        }
      }
      if (entering < 0) return LpStatus::kOptimal;
      if (iterations_ >= max_iter_) return LpStatus::kIterationLimit;
      ++iterations_;

      const double sigma =
          state_[static_cast<std::size_t>(entering)] == VarState::kLower ? 1.0
                                                                         : -1.0;
      const Eigen::VectorXd alpha = lu.solve(A_.col(entering));
      double theta = upper_(entering) - lower_(entering);
      Eigen::Index leave_row = -1;
      bool leave_to_upper = false;
      double leave_pivot = 0.0;
      for (Eigen::Index i = 0; i < m_; ++i) {
        const double delta = -sigma * alpha(i);
        const Eigen::Index v = basis_[static_cast<std::size_t>(i)];
        double limit;
        bool to_upper;
        if (delta < -opt_.pivot_tol) {
          limit = (x_(v) - lower_(v)) / -delta;
          to_upper = false;
        } else if (delta > opt_.pivot_tol && std::isfinite(upper_(v))) {
          limit = (upper_(v) - x_(v)) / delta;
          to_upper = true;
        } else {
          continue;
        }
        limit = std::max(limit, 0.0);
        bool take = limit < theta;
        if (!take && limit == theta && leave_row >= 0) {
          take = bland ? v < basis_[static_cast<std::size_t>(leave_row)]
                       : std::abs(alpha(i)) > leave_pivot;
        }
        if (take) {
          theta = limit;
          leave_row = i;
          leave_to_upper = to_upper;
          leave_pivot = std::abs(alpha(i));
        }
      }
      if (!std::isfinite(theta)) return LpStatus::kUnbounded;
      degenerate = theta <= 1e-12 ? degenerate + 1 : 0;

      if (leave_row < 0) {
        // Bound flip; the basis stays.
        const bool to_upper = sigma > 0.0;
        state_[static_cast<std::size_t>(entering)] =
            to_upper ? VarState::kUpper : VarState::kLower;
        x_(entering) = to_upper ? upper_(entering) : lower_(entering);
        continue;
      }
      const Eigen::Index leaving = basis_[static_cast<std::size_t>(leave_row)];
      x_(entering) += sigma * theta;
      state_[static_cast<std::size_t>(leaving)] =
          leave_to_upper ? VarState::kUpper : VarState::kLower;
      x_(leaving) = leave_to_upper ? upper_(leaving) : lower_(leaving);
      state_[static_cast<std::size_t>(entering)] = VarState::kBasic;
      basis_[static_cast<std::size_t>(leave_row)] = entering;
    }
  }

  // Replaces zero-valued artificials left in the basis by structurals so
  // phase two works on the original columns wherever the rows allow it.
  void DriveOutArtificials() {
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index v = basis_[static_cast<std::size_t>(i)];
      if (v < n_) continue;
      const Eigen::MatrixXd B = BasisMatrix();
      const Eigen::PartialPivLU<Eigen::MatrixXd> lut(B.transpose());
      const Eigen::VectorXd row = lut.solve(Eigen::VectorXd::Unit(m_, i));
      Eigen::Index pick = -1;
      double best = 1e-9;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (state_[static_cast<std::size_t>(j)] == VarState::kBasic) continue;
        const double a = std::abs(row.dot(A_.col(j)));
        if (a > best) {
          best = a;
          pick = j;
        }
      }
      if (pick < 0) continue;  // redundant row
      state_[static_cast<std::size_t>(v)] = VarState::kLower;
      x_(v) = 0.0;
      state_[static_cast<std::size_t>(pick)] = VarState::kBasic;
      basis_[static_cast<std::size_t>(i)] = pick;
    }
  }

  SimplexOptions opt_;
  Eigen::Index m_;
  Eigen::Index n_;
  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
  Eigen::VectorXd x_;
  Eigen::VectorXd duals_;
  std::vector<VarState> state_;
  std::vector<Eigen::Index> basis_;
  double residual_scale_ = 1.0;
  std::size_t iterations_ = 0;
  std::size_t max_iter_ = 0;
};

}  // namespace

LpSolution SolveLp(const LpProblem& problem, const SimplexOptions& options) {
  const Eigen::Index m = problem.A.rows();
  const Eigen::Index n = problem.A.cols();
  if (problem.b.size() != m || problem.c.size() != n ||
      problem.lower.size() != n || problem.upper.size() != n) {
    throw DomainError("LP dimensions do not match");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!std::isfinite(problem.lower(j)) || problem.upper(j) < problem.lower(j)) {
      throw DomainError("LP bounds must have a finite lower <= upper");
    }
  }
  if (m == 0) throw DomainError("LP without constraints");
  Simplex simplex(problem, options);
  return simplex.Solve(problem.c);
}

}  // namespace s2o
