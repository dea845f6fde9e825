#include "s2o/scoring.h"

#include <algorithm>
#include <cmath>

#include "s2o/errors.h"

namespace s2o {

namespace {

constexpr std::array<std::string_view, kNumTerms> kTermNames = {
    "safety", "efficiency", "comfort", "energy"};
constexpr std::array<std::string_view, kNumLevels> kLevelNames = {"low", "mid",
                                                                  "high"};

bool AllFinite(const TermVector& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

}  // namespace

std::string_view ToString(Term term) {
  return kTermNames[static_cast<std::size_t>(term)];
}

std::string_view ToString(SegmentLevel level) {
  return kLevelNames[static_cast<std::size_t>(level)];
}

std::optional<SegmentLevel> ParseSegmentLevel(std::string_view name) {
  for (std::size_t i = 0; i < kNumLevels; ++i) {
    if (kLevelNames[i] == name) return static_cast<SegmentLevel>(i);
  }
  return std::nullopt;
}

void CalibrationTable::Validate() const {
  for (std::size_t i = 0; i < kNumTerms; ++i) {
    const TermRange& r = terms[i];
    if (!std::isfinite(r.min) || !std::isfinite(r.max) || !(r.max > r.min)) {
      throw ValidationError("degenerate calibration for term '" +
                            std::string(kTermNames[i]) + "'");
    }
  }
}

SegmentLevel SegmentThresholds::LevelOf(double score) const {
  if (score <= low_upper) return SegmentLevel::kLow;
  if (score <= mid_upper) return SegmentLevel::kMid;
  return SegmentLevel::kHigh;
}

void SegmentThresholds::Validate() const {
  if (!(low_upper < mid_upper)) {
    throw ValidationError("segment thresholds must be increasing");
  }
}

void SegmentWeights::Validate() const {
  for (const TermVector& row : rows) {
    for (double w : row) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw ValidationError("segment weights must be finite and >= 0");
      }
    }
  }
  if (!std::isfinite(offset)) throw ValidationError("offset must be finite");
}

SegmentWeights SegmentWeights::Published() {
  SegmentWeights w;
  w.rows[0] = {0.165, 0.235, 0.010, 0.280};
  w.rows[1] = {0.160, 0.343, 0.161, 0.166};
  w.rows[2] = {0.010, 0.103, 0.507, 0.238};
  w.offset = 10.0;
  return w;
}

double LinearBoundary::Decision(const NormalizedScores& x) const {
  double f = bias;
  for (std::size_t i = 0; i < kNumTerms; ++i) f += w[i] * x.values[i];
  return f;
}

SegmentLevel LinearSvmModel::Classify(const NormalizedScores& x) const {
  if (mid_high.Decision(x) > 0.0) return SegmentLevel::kHigh;
  if (low_mid.Decision(x) > 0.0) return SegmentLevel::kMid;
  return SegmentLevel::kLow;
}

void LinearSvmModel::Validate() const {
  if (!AllFinite(low_mid.w) || !std::isfinite(low_mid.bias) ||
      !AllFinite(mid_high.w) || !std::isfinite(mid_high.bias)) {
    throw ValidationError("SVM parameters must be finite");
  }
}

void ScoringModel::Validate() const {
  calibration.Validate();
  svm.Validate();
  weights.Validate();
  thresholds.Validate();
}

NormalizedScores Normalize(const TermScores& raw, const CalibrationTable& cal) {
  cal.Validate();
  const TermVector v = raw.AsArray();
  NormalizedScores out;
  for (std::size_t i = 0; i < kNumTerms; ++i) {
    const TermRange& r = cal.terms[i];
    const double t = std::clamp((v[i] - r.min) / (r.max - r.min), 0.0, 1.0);
    out.values[i] = 100.0 - 40.0 * t;
  }
  return out;
}

SegmentLevel ClassifySegment(const NormalizedScores& n,
                             const LinearSvmModel& model, bool crash) {
  if (crash) return SegmentLevel::kLow;
  return model.Classify(n);
}

double Integrate(const NormalizedScores& n, const SegmentWeights& w,
                 SegmentLevel level) {
  const TermVector& row = w.row(level);
  double s = w.offset;
  for (std::size_t i = 0; i < kNumTerms; ++i) s += row[i] * n.values[i];
  return s;
}

double CrashRevision(double score, bool crash) { return crash ? 0.0 : score; }

}  // namespace s2o
