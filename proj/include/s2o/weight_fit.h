#pragma once

#include <cstddef>
#include <span>

#include "s2o/scoring.h"

namespace s2o {

struct WeightFitSample {
  NormalizedScores x;
  double target = 0.0;
  SegmentLevel segment = SegmentLevel::kLow;
};

struct WeightFitOptions {
  std::size_t min_cases_per_segment = 5;
};

struct WeightFitResult {
  SegmentWeights weights;
  double mae = 0.0;
  // Primal minus dual objective, both divided by the sample count.
  double duality_gap = 0.0;
  std::size_t iterations = 0;
};

// Minimizes the mean absolute error of w_seg . x + b over all samples with
// non-negative per-segment weights and one shared offset. The problem is
// solved through its dual,
//   max y.d  s.t.  -1 <= d <= 1,  X_seg^T d_seg <= 0,  sum d = 0,
// whose multipliers are the weights. Throws FitError naming the first
// segment with fewer than `min_cases_per_segment` samples.
WeightFitResult FitWeights(std::span<const WeightFitSample> samples,
                           const WeightFitOptions& options = {});

double TrainingMae(std::span<const WeightFitSample> samples,
                   const SegmentWeights& weights);

}  // namespace s2o
