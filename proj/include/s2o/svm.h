#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "s2o/scoring.h"

namespace s2o {

struct SvmTrainOptions {
  double lambda = 1e-3;
  std::size_t epochs = 200;
  std::size_t batch_size = 4;
  std::uint64_t seed = 7;
};

struct BinarySvmResult {
  LinearBoundary boundary;
  // Best regularized hinge objective seen after each epoch.
  std::vector<double> objective_history;
  // Only one class was present; the boundary is a constant.
  bool degenerate = false;
};

// labels are +1 / -1.
BinarySvmResult TrainBinarySvm(std::span<const NormalizedScores> x,
                               std::span<const int> labels,
                               const SvmTrainOptions& options = {});

// lambda/2 |u|^2 + mean hinge, evaluated in the standardized feature space
// the trainer works in.
double SvmObjective(const LinearBoundary& boundary,
                    std::span<const NormalizedScores> x,
                    std::span<const int> labels, double lambda);

struct SvmTrainResult {
  LinearSvmModel model;
  BinarySvmResult low_mid;
  BinarySvmResult mid_high;
};

// Two one-vs-rest boundaries for the ordinal classifier: low_mid separates
// {mid, high} from low, mid_high separates high from the rest. Throws
// FitError when fewer than two levels are present.
SvmTrainResult TrainSvm(std::span<const NormalizedScores> x,
                        std::span<const SegmentLevel> levels,
                        const SvmTrainOptions& options = {});

}  // namespace s2o
