#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace s2o {

enum class Term : std::size_t { kSafety = 0, kEfficiency, kComfort, kEnergy };
inline constexpr std::size_t kNumTerms = 4;
std::string_view ToString(Term term);

using TermVector = std::array<double, kNumTerms>;

// Raw factor results in native units; all are higher-is-worse.
struct TermScores {
  double safety = 0.0;
  double efficiency = 0.0;
  double comfort = 0.0;
  double energy = 0.0;

  TermVector AsArray() const { return {safety, efficiency, comfort, energy}; }
  static TermScores FromArray(const TermVector& v) {
    return {v[0], v[1], v[2], v[3]};
  }
  bool operator==(const TermScores&) const = default;
};

struct TermRange {
  double min = 0.0;
  double max = 1.0;
  bool operator==(const TermRange&) const = default;
};

struct CalibrationTable {
  std::array<TermRange, kNumTerms> terms;

  void Validate() const;
  bool operator==(const CalibrationTable&) const = default;
};

// Values in [60, 100], higher is better.
struct NormalizedScores {
  TermVector values{100.0, 100.0, 100.0, 100.0};

  double safety() const { return values[0]; }
  double efficiency() const { return values[1]; }
  double comfort() const { return values[2]; }
  double energy() const { return values[3]; }
  bool operator==(const NormalizedScores&) const = default;
};

enum class SegmentLevel : std::size_t { kLow = 0, kMid = 1, kHigh = 2 };
inline constexpr std::size_t kNumLevels = 3;
std::string_view ToString(SegmentLevel level);
std::optional<SegmentLevel> ParseSegmentLevel(std::string_view name);

// Score brackets: low [0, low_upper], mid (low_upper, mid_upper],
// high (mid_upper, 100].
struct SegmentThresholds {
  double low_upper = 75.0;
  double mid_upper = 85.0;

  SegmentLevel LevelOf(double score) const;
  void Validate() const;
  bool operator==(const SegmentThresholds&) const = default;
};

struct SegmentWeights {
  // rows[level] = {w_safe, w_eff, w_comf, w_eng}.
  std::array<TermVector, kNumLevels> rows{};
  double offset = 0.0;  // shared by all levels

  const TermVector& row(SegmentLevel level) const {
    return rows[static_cast<std::size_t>(level)];
  }
  void Validate() const;
  bool operator==(const SegmentWeights&) const = default;

  // Weights fitted on human ratings of simulator drives.
  static SegmentWeights Published();
};

// f(x) = w . x + bias over normalized scores.
struct LinearBoundary {
  TermVector w{};
  double bias = 0.0;

  double Decision(const NormalizedScores& x) const;
  bool operator==(const LinearBoundary&) const = default;
};

// Ordinal classifier: high when mid_high fires, else mid when low_mid fires,
// else low.
struct LinearSvmModel {
  LinearBoundary low_mid;
  LinearBoundary mid_high;

  SegmentLevel Classify(const NormalizedScores& x) const;
  void Validate() const;
  bool operator==(const LinearSvmModel&) const = default;
};

// Everything a deployed evaluator needs besides physical constants.
struct ScoringModel {
  CalibrationTable calibration;
  LinearSvmModel svm;
  SegmentWeights weights;
  SegmentThresholds thresholds;

  void Validate() const;
  bool operator==(const ScoringModel&) const = default;
};

// t = clamp((S - min) / (max - min), 0, 1); value = 100 - 40 t. Raw terms are
// higher-is-worse, so the best raw value maps to 100. Throws ValidationError
// on a degenerate calibration.
NormalizedScores Normalize(const TermScores& raw, const CalibrationTable& cal);

// A crash always lands in the lowest level.
SegmentLevel ClassifySegment(const NormalizedScores& n,
                             const LinearSvmModel& model, bool crash);

double Integrate(const NormalizedScores& n, const SegmentWeights& w,
                 SegmentLevel level);

// Crash veto: 0 on crash, identity otherwise.
double CrashRevision(double score, bool crash);

}  // namespace s2o

