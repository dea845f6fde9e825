#include "s2o/weight_fit.h"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "s2o/errors.h"
#include "s2o/simplex.h"

namespace s2o {

double TrainingMae(std::span<const WeightFitSample> samples,
                   const SegmentWeights& weights) {
  if (samples.empty()) throw FitError("no samples");
  double total = 0.0;
  for (const WeightFitSample& s : samples) {
    total += std::abs(s.target - Integrate(s.x, weights, s.segment));
  }
  return total / static_cast<double>(samples.size());
}

WeightFitResult FitWeights(std::span<const WeightFitSample> samples,
                           const WeightFitOptions& options) {
  std::array<std::size_t, kNumLevels> counts{};
  for (const WeightFitSample& s : samples) {
    if (!std::isfinite(s.target)) throw FitError("non-finite fit target");
    ++counts[static_cast<std::size_t>(s.segment)];
  }
  for (std::size_t l = 0; l < kNumLevels; ++l) {
    if (counts[l] < options.min_cases_per_segment) {
      throw FitError("segment '" +
                     std::string(ToString(static_cast<SegmentLevel>(l))) +
                     "' has " + std::to_string(counts[l]) +
                     " cases; at least " +
                     std::to_string(options.min_cases_per_segment) +
                     " are required");
    }
  }

  // Columns: d_1..d_N, then one slack per (segment, term).
  const Eigen::Index n = static_cast<Eigen::Index>(samples.size());
  constexpr Eigen::Index kWeightRows =
      static_cast<Eigen::Index>(kNumLevels * kNumTerms);
  const Eigen::Index rows = kWeightRows + 1;
  const Eigen::Index cols = n + kWeightRows;

  LpProblem lp;
  lp.A = Eigen::MatrixXd::Zero(rows, cols);
  lp.b = Eigen::VectorXd::Zero(rows);
  lp.c = Eigen::VectorXd::Zero(cols);
  lp.lower = Eigen::VectorXd::Zero(cols);
  lp.upper = Eigen::VectorXd::Constant(
      cols, std::numeric_limits<double>::infinity());
  for (Eigen::Index i = 0; i < n; ++i) {
    const WeightFitSample& s = samples[static_cast<std::size_t>(i)];
    const Eigen::Index base =
        static_cast<Eigen::Index>(static_cast<std::size_t>(s.segment) * kNumTerms);
    for (std::size_t t = 0; t < kNumTerms; ++t) {
      lp.A(base + static_cast<Eigen::Index>(t), i) = s.x.values[t];
    }
    lp.A(kWeightRows, i) = 1.0;
    lp.c(i) = -s.target;
    lp.lower(i) = -1.0;
    lp.upper(i) = 1.0;
  }
  for (Eigen::Index k = 0; k < kWeightRows; ++k) lp.A(k, n + k) = 1.0;

  const LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) {
    const char* why = sol.status == LpStatus::kInfeasible   ? "infeasible"
                      : sol.status == LpStatus::kUnbounded ? "unbounded"
                                                           : "iteration limit";
    throw FitError(std::string("weight LP did not reach an optimum (") + why +
                   ")");
  }

  WeightFitResult result;
  result.iterations = sol.iterations;
  for (std::size_t l = 0; l < kNumLevels; ++l) {
    for (std::size_t t = 0; t < kNumTerms; ++t) {
      const double w = -sol.duals(static_cast<Eigen::Index>(l * kNumTerms + t));
      // Multipliers of inactive rows are zero up to round-off.
      result.weights.rows[l][t] = w > 0.0 ? w : 0.0;
    }
  }
  result.weights.offset = -sol.duals(kWeightRows);
  result.mae = TrainingMae(samples, result.weights);
  result.duality_gap = result.mae + sol.objective / static_cast<double>(n);
  return result;
}

}  // namespace s2o
