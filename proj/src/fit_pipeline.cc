#include "s2o/fit_pipeline.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numeric>
#include <random>

#include "s2o/errors.h"
#include "s2o/evaluate.h"

namespace s2o {

ScoringModel FitScoringModel(std::span<const LabeledCase> train,
                             const FitOptions& options) {
  std::vector<TermScores> raw;
  for (const LabeledCase& c : train) {
    if (!c.crash) raw.push_back(c.raw);
  }
  if (raw.empty()) throw FitError("no non-crash cases to fit on");

  ScoringModel model;
  model.thresholds = options.thresholds;
  model.calibration = CalibrateNormalization(raw, options.calibration);

  std::vector<NormalizedScores> x;
  std::vector<SegmentLevel> levels;
  std::vector<WeightFitSample> samples;
  for (const LabeledCase& c : train) {
    if (c.crash) continue;
    const NormalizedScores n = Normalize(c.raw, model.calibration);
    x.push_back(n);
    levels.push_back(c.label);
    samples.push_back({n, c.target, c.label});
  }
  model.svm = TrainSvm(x, levels, options.svm).model;
  model.weights = FitWeights(samples, options.weights).weights;
  return model;
}

double PredictionMae(const ScoringModel& model,
                     std::span<const LabeledCase> cases) {
  if (cases.empty()) throw FitError("no cases to score");
  double total = 0.0;
  for (const LabeledCase& c : cases) {
    total += std::abs(c.target - ScoreTerms(c.raw, c.crash, model).final_score);
  }
  return total / static_cast<double>(cases.size());
}

void SplitIndices(std::size_t n, double train_fraction, std::uint64_t seed,
                  std::vector<std::size_t>& train,
                  std::vector<std::size_t>& validation) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw FitError("train fraction must be in (0, 1)");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const auto cut = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(n)));
  train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cut));
  validation.assign(order.begin() + static_cast<std::ptrdiff_t>(cut),
                    order.end());
  std::sort(train.begin(), train.end());
  std::sort(validation.begin(), validation.end());
  if (train.empty() || validation.empty()) {
    throw FitError("too few cases for a train/validation split");
  }
}

namespace {

struct RepeatOutcome {
  ScoringModel model;
  double train_mae = 0.0;
  double validation_mae = 0.0;
};

RepeatOutcome RunRepeat(std::span<const LabeledCase> cases,
                        const FitOptions& options, std::size_t repeat) {
  std::vector<std::size_t> train_idx, val_idx;
  SplitIndices(cases.size(), options.train_fraction, options.seed + repeat,
               train_idx, val_idx);
  std::vector<LabeledCase> train, val;
  for (std::size_t i : train_idx) train.push_back(cases[i]);
  for (std::size_t i : val_idx) val.push_back(cases[i]);
  RepeatOutcome out;
  out.model = FitScoringModel(train, options);
  out.train_mae = PredictionMae(out.model, train);
  out.validation_mae = PredictionMae(out.model, val);
  return out;
}

}  // namespace

FitResult CrossValidate(std::span<const LabeledCase> cases,
                        const FitOptions& options) {
  if (options.repeats == 0) throw FitError("at least one repeat is required");
  if (cases.size() < kMinCrossValidationCases) {
    throw FitError("cross-validation needs at least " +
                   std::to_string(kMinCrossValidationCases) + " cases, got " +
                   std::to_string(cases.size()));
  }
  std::vector<std::future<RepeatOutcome>> jobs;
  for (std::size_t r = 0; r < options.repeats; ++r) {
    jobs.push_back(std::async(std::launch::async, RunRepeat, cases,
                              std::cref(options), r));
  }
  FitResult result;
  for (auto& job : jobs) {
    RepeatOutcome o = job.get();
    result.repeat_train_maes.push_back(o.train_mae);
    result.repeat_validation_maes.push_back(o.validation_mae);
    result.repeat_models.push_back(std::move(o.model));
  }
  const double k = static_cast<double>(options.repeats);
  result.train_mae = std::accumulate(result.repeat_train_maes.begin(),
                                     result.repeat_train_maes.end(), 0.0) / k;
  result.validation_mae =
      std::accumulate(result.repeat_validation_maes.begin(),
                      result.repeat_validation_maes.end(), 0.0) / k;
  result.weights = FitScoringModel(cases, options).weights;
  return result;
}

PreparedDataset PrepareDataset(std::span<const RatedCase> rated,
                               const FitOptions& options) {
  if (rated.empty()) throw FitError("rated dataset is empty");
  PreparedDataset out;
  out.raters = FilterRaters(RaterMatrix(rated), options.raters);
  std::vector<double> kept;
  for (const RatedCase& c : rated) {
    kept.clear();
    for (std::size_t r : out.raters.retained) {
      if (r < c.ratings.size()) kept.push_back(c.ratings[r]);
    }
    const GroundTruth gt = ComputeGroundTruth(kept, options.thresholds, c.id);
    if (!gt.trimmed) ++out.untrimmed_cases;
    out.cases.push_back({c.id, c.terms, c.crash, gt.score, gt.label});
  }
  return out;
}

FitReport RunFitPipeline(std::span<const RatedCase> rated,
                         const FitOptions& options) {
  FitReport report;
  report.dataset = PrepareDataset(rated, options);
  report.validation = CrossValidate(report.dataset.cases, options);
  report.model = FitScoringModel(report.dataset.cases, options);
  return report;
}

std::string FormatFitReport(const FitReport& report) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-6s %9s %9s %9s %9s\n", "level", "safety",
                "efficiency", "comfort", "energy");
  out += buf;
  for (std::size_t l = kNumLevels; l-- > 0;) {
    const TermVector& w = report.model.weights.rows[l];
    std::snprintf(buf, sizeof(buf), "%-6s %9.4f %9.4f %9.4f %9.4f\n",
                  std::string(ToString(static_cast<SegmentLevel>(l))).c_str(),
                  w[0], w[1], w[2], w[3]);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "offset %.4f\n", report.model.weights.offset);
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "raters kept %zu of %zu, cases %zu (%zu without trimming)\n",
                report.dataset.raters.retained.size(),
                report.dataset.raters.retained.size() +
                    report.dataset.raters.dropped_low_variance.size() +
                    report.dataset.raters.dropped_offset.size(),
                report.dataset.cases.size(), report.dataset.untrimmed_cases);
  out += buf;
  std::snprintf(buf, sizeof(buf), "train MAE %.3f, validation MAE %.3f over %zu repeats\n",
                report.validation.train_mae, report.validation.validation_mae,
                report.validation.repeat_validation_maes.size());
  out += buf;
  return out;
}

}  // namespace s2o
