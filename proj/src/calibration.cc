#include "s2o/calibration.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "s2o/errors.h"

namespace s2o {

double Percentile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw DomainError("percentile of an empty sample");
  if (!(p >= 0.0 && p <= 100.0)) throw DomainError("percentile out of range");
  const double pos = p / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

CalibrationTable CalibrateNormalization(std::span<const TermScores> corpus,
                                        const CalibrationOptions& options) {
  if (corpus.empty()) throw FitError("cannot calibrate on an empty corpus");
  if (options.robust &&
      !(options.lower_percentile < options.upper_percentile)) {
    throw FitError("calibration percentiles must be increasing");
  }
  CalibrationTable table;
  std::vector<double> column(corpus.size());
  for (std::size_t t = 0; t < kNumTerms; ++t) {
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const double v = corpus[i].AsArray()[t];
      if (!std::isfinite(v)) throw FitError("non-finite term value in corpus");
      column[i] = v;
    }
    std::sort(column.begin(), column.end());
    TermRange range;
    if (options.robust) {
      range.min = Percentile(column, options.lower_percentile);
      range.max = Percentile(column, options.upper_percentile);
    } else {
      range.min = column.front();
      range.max = column.back();
    }
    if (!(range.max > range.min)) {
      throw FitError("term '" + std::string(ToString(static_cast<Term>(t))) +
                     "' is constant across the corpus");
    }
    table.terms[t] = range;
  }
  return table;
}

}  // namespace s2o
