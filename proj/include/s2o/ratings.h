#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "s2o/scoring.h"

namespace s2o {

// One case of a rated corpus. ratings[k] is rater k's score in [0, 100];
// NaN marks a case the rater did not score.
struct RatedCase {
  std::string id;
  TermScores terms;
  std::vector<double> ratings;
  bool crash = false;
};

struct RaterFilterOptions {
  double min_variance = 5.0;
  double max_offset = 30.0;
};

struct RaterFilterResult {
  std::vector<std::size_t> retained;
  std::vector<std::size_t> dropped_low_variance;
  std::vector<std::size_t> dropped_offset;
};

// scores[r][c] is rater r's score of case c. Raters whose score variance is
// below `min_variance` go first; of the rest, raters whose mean absolute
// distance to the other remaining raters' per-case average exceeds
// `max_offset` are dropped. Throws FitError when nobody survives.
RaterFilterResult FilterRaters(const std::vector<std::vector<double>>& scores,
                               const RaterFilterOptions& options = {});

// Transposes a corpus into the rater-major matrix FilterRaters expects.
std::vector<std::vector<double>> RaterMatrix(std::span<const RatedCase> cases);

struct GroundTruth {
  std::string id;
  double score = 0.0;
  SegmentLevel label = SegmentLevel::kLow;
  // False when fewer than ten ratings were available and the plain mean
  // was used.
  bool trimmed = true;
};

// Mean after dropping ceil(10%) of the highest and of the lowest scores;
// NaN entries are ignored. Throws FitError without any rating.
GroundTruth ComputeGroundTruth(std::span<const double> ratings,
                               const SegmentThresholds& thresholds = {},
                               std::string id = {});

// JSON Lines: optional {"schema":"s2o.rated/1"} header, then
//   {"id":"...","terms":{"safety":..,"efficiency":..,"comfort":..,
//    "energy":..},"ratings":[80,null,...],"crash":false}
inline constexpr const char* kRatedSchema = "s2o.rated/1";
std::vector<RatedCase> ParseRatedDataset(std::istream& in);
std::vector<RatedCase> ParseRatedDatasetFile(const std::string& path);
void WriteRatedDataset(std::span<const RatedCase> cases, std::ostream& out);

}  // namespace s2o
