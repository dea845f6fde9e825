#pragma once

#include <span>
#include <vector>

#include "s2o/scoring.h"

namespace s2o {

struct CalibrationOptions {
  // Robust mode uses the lower/upper percentiles instead of min/max so a
  // single outlier cannot stretch the range.
  bool robust = false;
  double lower_percentile = 1.0;
  double upper_percentile = 99.0;
};

// Linear interpolation between closest ranks; `sorted` must be ascending and
// non-empty, p in [0, 100].
double Percentile(std::span<const double> sorted, double p);

// Throws FitError on an empty corpus or when a term is constant.
CalibrationTable CalibrateNormalization(std::span<const TermScores> corpus,
                                        const CalibrationOptions& options = {});

}  // namespace s2o
