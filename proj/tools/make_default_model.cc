// Regenerates models/default_model.json: published weights, calibration and
// level classifier trained on simulated drives rated by the synthetic oracle.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "s2o/calibration.h"
#include "s2o/fit_pipeline.h"
#include "s2o/harness.h"
#include "s2o/model_file.h"
#include "s2o/ratings.h"
#include "s2o/svm.h"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_default_model OUTPUT.json\n";
    return 1;
  }
  constexpr std::size_t kCases = 1000;
  constexpr std::uint64_t kSeed = 20240917;
  try {
    const s2o::EvaluationParams params;
    const std::vector<s2o::CorpusEntry> corpus =
        s2o::SimulateCorpus(kCases, kSeed, params);

    std::vector<s2o::TermScores> raw;
    for (const auto& e : corpus) {
      if (!e.crash) raw.push_back(e.raw);
    }
    s2o::ScoringModel model;
    s2o::CalibrationOptions cal;
    cal.robust = true;
    model.calibration = s2o::CalibrateNormalization(raw, cal);
    model.weights = s2o::SegmentWeights::Published();
    const s2o::LinearSvmModel truth =
        s2o::BoundariesFromWeights(model.weights, model.thresholds);

    std::vector<s2o::EvaluationReport> reports;
    for (const auto& e : corpus) {
      if (e.crash) continue;
      s2o::EvaluationReport r;
      r.case_id = e.id;
      r.raw = e.raw;
      r.normalized = s2o::Normalize(e.raw, model.calibration);
      r.segment = truth.Classify(r.normalized);
      reports.push_back(r);
    }
    const auto rated = s2o::SyntheticRatingOracle(
        reports, model.weights, /*sigma=*/3.0, /*raters=*/10, kSeed);

    std::vector<s2o::NormalizedScores> x;
    std::vector<s2o::SegmentLevel> levels;
    for (std::size_t i = 0; i < rated.size(); ++i) {
      x.push_back(reports[i].normalized);
      levels.push_back(
          s2o::ComputeGroundTruth(rated[i].ratings, model.thresholds).label);
    }
    model.svm = s2o::TrainSvm(x, levels).model;
    s2o::SaveModelFile(model, argv[1]);

    std::size_t counts[3] = {0, 0, 0};
    for (auto l : levels) ++counts[static_cast<std::size_t>(l)];
    std::cerr << "cases " << reports.size() << " (low " << counts[0]
              << ", mid " << counts[1] << ", high " << counts[2] << ")\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
