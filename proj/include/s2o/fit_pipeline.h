#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "s2o/calibration.h"
#include "s2o/ratings.h"
#include "s2o/svm.h"
#include "s2o/weight_fit.h"

namespace s2o {

// A case with its consensus score and the level that score falls into.
struct LabeledCase {
  std::string id;
  TermScores raw;
  bool crash = false;
  double target = 0.0;
  SegmentLevel label = SegmentLevel::kLow;
};

struct FitOptions {
  CalibrationOptions calibration;
  SvmTrainOptions svm;
  WeightFitOptions weights;
  SegmentThresholds thresholds;
  RaterFilterOptions raters;
  std::size_t repeats = 5;
  double train_fraction = 0.8;
  std::uint64_t seed = 2024;
};

// Calibration, classifier and weights from the non-crash cases of `train`.
ScoringModel FitScoringModel(std::span<const LabeledCase> train,
                             const FitOptions& options);

// Mean |target - final score| with the full pipeline, crash veto included.
double PredictionMae(const ScoringModel& model,
                     std::span<const LabeledCase> cases);

struct FitResult {
  SegmentWeights weights;  // from a fit on every case
  double train_mae = 0.0;
  double validation_mae = 0.0;  // mean over repeats
  std::vector<double> repeat_train_maes;
  std::vector<double> repeat_validation_maes;
  std::vector<ScoringModel> repeat_models;
};

// Seeded split into train and validation indices for one repeat.
void SplitIndices(std::size_t n, double train_fraction, std::uint64_t seed,
                  std::vector<std::size_t>& train,
                  std::vector<std::size_t>& validation);

inline constexpr std::size_t kMinCrossValidationCases = 25;

// `repeats` random train/validation splits; repeat r uses seed + r. The
// splits run concurrently and are merged in repeat order.
FitResult CrossValidate(std::span<const LabeledCase> cases,
                        const FitOptions& options);

struct PreparedDataset {
  std::vector<LabeledCase> cases;
  RaterFilterResult raters;
  std::size_t untrimmed_cases = 0;
};

// Rater filtering followed by the trimmed-mean consensus.
PreparedDataset PrepareDataset(std::span<const RatedCase> rated,
                               const FitOptions& options);

struct FitReport {
  ScoringModel model;
  FitResult validation;
  PreparedDataset dataset;
};

FitReport RunFitPipeline(std::span<const RatedCase> rated,
                         const FitOptions& options);

// Plain-text weight table with one row per level plus the error summary.
std::string FormatFitReport(const FitReport& report);

}  // namespace s2o
