#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "s2o/errors.h"
#include "s2o/evaluate.h"
#include "s2o/model_file.h"
#include "s2o/report_io.h"
#include "s2o/scoring.h"
#include "s2o/stream.h"
#include "s2o/svm.h"
#include "test_support.h"

namespace s2o {
namespace {

using testing::EgoPose;
using testing::MakeAgent;
using testing::MakeCase;

CalibrationTable UnitCalibration() {
  CalibrationTable cal;
  for (TermRange& r : cal.terms) r = {0.0, 10.0};
  return cal;
}

NormalizedScores All(double v) {
  NormalizedScores n;
  n.values.fill(v);
  return n;
}

TEST(Normalize, EndpointsAndMidpoint) {
  const CalibrationTable cal = UnitCalibration();
  EXPECT_EQ(Normalize({0, 0, 0, 0}, cal), All(100.0));
  EXPECT_EQ(Normalize({10, 10, 10, 10}, cal), All(60.0));
  EXPECT_EQ(Normalize({5, 5, 5, 5}, cal), All(80.0));
}

TEST(Normalize, OutOfRangeClamps) {
  const CalibrationTable cal = UnitCalibration();
  EXPECT_EQ(Normalize({-3, -1e9, -0.5, -7}, cal), All(100.0));
  EXPECT_EQ(Normalize({11, 1e12, 10.5, 99}, cal), All(60.0));
}

TEST(Normalize, DegenerateCalibrationIsRejected) {
  CalibrationTable cal = UnitCalibration();
  cal.terms[2] = {4.0, 4.0};
  EXPECT_THROW(Normalize({1, 1, 1, 1}, cal), ValidationError);
  cal.terms[2] = {5.0, 4.0};
  EXPECT_THROW(Normalize({1, 1, 1, 1}, cal), ValidationError);
}

TEST(Normalize, DyadicAffineRescalingIsBitIdentical) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> ticks(-64, 1088);
  const CalibrationTable cal = UnitCalibration();
  for (int trial = 0; trial < 500; ++trial) {
    const double alpha = std::ldexp(1.0, static_cast<int>(rng() % 9) - 4);
    const double beta = static_cast<double>(static_cast<int>(rng() % 64)) - 32;
    TermVector raw;
    for (double& v : raw) v = ticks(rng) / 64.0;
    CalibrationTable scaled = cal;
    TermVector moved = raw;
    for (std::size_t i = 0; i < kNumTerms; ++i) {
      scaled.terms[i] = {alpha * cal.terms[i].min + beta,
                         alpha * cal.terms[i].max + beta};
      moved[i] = alpha * raw[i] + beta;
    }
    EXPECT_EQ(Normalize(TermScores::FromArray(moved), scaled),
              Normalize(TermScores::FromArray(raw), cal));
  }
}

TEST(Integrate, PublishedWeightExamples) {
  const SegmentWeights w = SegmentWeights::Published();
  EXPECT_NEAR(Integrate(All(100), w, SegmentLevel::kHigh), 95.8, 1e-9);
  EXPECT_NEAR(Integrate(All(80), w, SegmentLevel::kMid), 76.4, 1e-9);
  EXPECT_NEAR(Integrate(All(60), w, SegmentLevel::kLow), 51.4, 1e-9);
}

TEST(Integrate, MonotoneInEveryTerm) {
  const SegmentWeights w = SegmentWeights::Published();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(60.0, 100.0);
  for (int trial = 0; trial < 500; ++trial) {
    NormalizedScores n;
    for (double& v : n.values) v = u(rng);
    for (std::size_t level = 0; level < kNumLevels; ++level) {
      const auto l = static_cast<SegmentLevel>(level);
      for (std::size_t i = 0; i < kNumTerms; ++i) {
        NormalizedScores up = n;
        up.values[i] = std::min(100.0, n.values[i] + 5.0 * u(rng) / 100.0);
        EXPECT_GE(Integrate(up, w, l), Integrate(n, w, l));
      }
    }
  }
}

TEST(CrashRevision, Veto) {
  EXPECT_EQ(CrashRevision(95.8, false), 95.8);
  EXPECT_EQ(CrashRevision(95.8, true), 0.0);
  EXPECT_EQ(CrashRevision(0.0, true), 0.0);
}

TEST(SegmentThresholds, ClosedUpperBounds) {
  const SegmentThresholds t;
  EXPECT_EQ(t.LevelOf(75.0), SegmentLevel::kLow);
  EXPECT_EQ(t.LevelOf(75.0001), SegmentLevel::kMid);
  EXPECT_EQ(t.LevelOf(85.0), SegmentLevel::kMid);
  EXPECT_EQ(t.LevelOf(85.0001), SegmentLevel::kHigh);
}

class ClassifyTest : public ::testing::Test {
 protected:
  void SetUp() override {
    // Synthetic corpus where the level follows the mean normalized score.
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(60.0, 100.0);
    std::vector<NormalizedScores> x;
    std::vector<SegmentLevel> y;
    for (int i = 0; i < 600; ++i) {
      NormalizedScores n;
      double mean = 0.0;
      for (double& v : n.values) mean += (v = u(rng)) / 4.0;
      if (std::abs(mean - 73.0) < 2.0 || std::abs(mean - 87.0) < 2.0) continue;
      x.push_back(n);
      y.push_back(mean < 73.0   ? SegmentLevel::kLow
                  : mean < 87.0 ? SegmentLevel::kMid
                                : SegmentLevel::kHigh);
    }
    model_ = TrainSvm(x, y).model;
  }
  LinearSvmModel model_;
};

TEST_F(ClassifyTest, CrashIsAlwaysLow) {
  EXPECT_EQ(ClassifySegment(All(100), model_, true), SegmentLevel::kLow);
}

TEST_F(ClassifyTest, ExtremesFollowTrainingLabels) {
  EXPECT_EQ(ClassifySegment(All(100), model_, false), SegmentLevel::kHigh);
  EXPECT_EQ(ClassifySegment(All(60), model_, false), SegmentLevel::kLow);
  EXPECT_EQ(ClassifySegment(All(80), model_, false), SegmentLevel::kMid);
}

DrivingCase FollowCase(double gap0, double v_ego, double v_lead,
                       std::size_t n = 80) {
  return MakeCase(
      n, 0.1, [=](double t) { return EgoPose{v_ego * t, 0, 0, v_ego}; },
      [=](double t) {
        return std::vector<AgentState>{
            MakeAgent("lead", gap0 + v_lead * t, 0, 0, v_lead),
            MakeAgent("side", 5.0 + 0.9 * v_ego * t, 3.5, 0, 0.9 * v_ego)};
      });
}

TEST(EvaluateCase, AgentFreeCruise) {
  DrivingCase c = testing::Cruise(100, 0.1, 12.0);
  EvaluationReport r = EvaluateCase(c, {}, DefaultScoringModel());
  EXPECT_EQ(r.raw.safety, 0.0);
  EXPECT_NEAR(r.raw.efficiency, 1.0 - 12.0 / (60.0 / 3.6), 1e-12);
  EXPECT_FALSE(r.crash);
  EXPECT_GT(r.final_score, 0.0);
  EXPECT_EQ(r.final_score, r.integrated);
  EXPECT_EQ(r.frames, 100u);
  EXPECT_NEAR(r.duration, 9.9, 1e-12);
}

TEST(EvaluateCase, DetectedCrashVetoes) {
  // The leader stands still 20 m ahead and the ego drives through it.
  DrivingCase c = MakeCase(
      60, 0.1, [](double t) { return EgoPose{10 * t, 0, 0, 10}; },
      [](double) {
        return std::vector<AgentState>{MakeAgent("stopped", 20, 0, 0, 0)};
      });
  ASSERT_FALSE(c.crash);
  EvaluationReport r = EvaluateCase(c, {}, DefaultScoringModel());
  EXPECT_TRUE(r.crash);
  EXPECT_EQ(r.segment, SegmentLevel::kLow);
  EXPECT_EQ(r.final_score, 0.0);
  EXPECT_GT(r.integrated, 0.0);
}

TEST(EvaluateCase, FlaggedCrashVetoes) {
  DrivingCase c = testing::Cruise(50, 0.1, 12.0);
  c.crash = true;
  EvaluationReport r = EvaluateCase(c, {}, DefaultScoringModel());
  EXPECT_EQ(r.segment, SegmentLevel::kLow);
  EXPECT_EQ(r.final_score, 0.0);
}

TEST(EvaluateCase, Deterministic) {
  DrivingCase c = FollowCase(25, 14, 11);
  EXPECT_EQ(ReportToLine(EvaluateCase(c, {}, DefaultScoringModel())),
            ReportToLine(EvaluateCase(c, {}, DefaultScoringModel())));
}

TEST(EvaluateCase, DefaultModelRange) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ScoringModel& model = DefaultScoringModel();
  for (int i = 0; i < 300; ++i) {
    TermScores raw;
    TermVector v;
    for (std::size_t k = 0; k < kNumTerms; ++k) {
      const TermRange& range = model.calibration.terms[k];
      v[k] = range.min + (u(rng) * 1.4 - 0.2) * (range.max - range.min);
    }
    raw = TermScores::FromArray(v);
    EvaluationReport r = ScoreTerms(raw, false, model);
    EXPECT_GE(r.final_score, 10.0);
    EXPECT_LE(r.final_score, 112.0);
    for (double n : r.normalized.values) {
      EXPECT_GE(n, 60.0);
      EXPECT_LE(n, 100.0);
    }
    EXPECT_EQ(ScoreTerms(raw, true, model).final_score, 0.0);
  }
}

TEST(ReportIo, RoundTrip) {
  EvaluationReport r = EvaluateCase(FollowCase(30, 13, 9), {}, DefaultScoringModel());
  r.case_id = "x";
  EvaluationReport back = ReportFromJson(ReportToJson(r));
  EXPECT_EQ(ReportToLine(back), ReportToLine(r));
  EXPECT_EQ(back.raw, r.raw);
  EXPECT_EQ(back.segment, r.segment);
}

void ExpectReportsNear(const EvaluationReport& a, const EvaluationReport& b,
                       double tol) {
  const TermVector ra = a.raw.AsArray(), rb = b.raw.AsArray();
  for (std::size_t i = 0; i < kNumTerms; ++i) {
    EXPECT_NEAR(ra[i], rb[i], tol * std::max(1.0, std::abs(rb[i]))) << i;
    EXPECT_NEAR(a.normalized.values[i], b.normalized.values[i], tol) << i;
  }
  EXPECT_EQ(a.segment, b.segment);
  EXPECT_EQ(a.crash, b.crash);
  EXPECT_NEAR(a.integrated, b.integrated, tol);
  EXPECT_NEAR(a.final_score, b.final_score, tol);
}

TEST(Stream, SingleFrameEmitsNothing) {
  DrivingCase c = testing::Cruise(3, 0.1, 10);
  StreamEvaluator s({}, DefaultScoringModel(), c.road);
  EXPECT_FALSE(s.Push(c.frames[0]).has_value());
  EXPECT_TRUE(s.Push(c.frames[1]).has_value());
}

TEST(Stream, EveryPrefixMatchesBatch) {
  // Hard braking, a U-turn and derived speeds exercise the delayed commits.
  const double pi = 3.14159265358979323846;
  DrivingCase c = MakeCase(
      260, 0.1,
      [&](double t) {
        double heading = 0.0;
        if (t > 12.0) heading = WrapAngle(pi * std::min(1.0, (t - 12.0) / 8.0));
        const double v = t < 5.0 ? 15.0 : (t < 6.0 ? 15.0 - 7.0 * (t - 5.0) : 8.0);
        return EgoPose{v * t, 0.2 * std::sin(t), heading};
      },
      [](double t) {
        return std::vector<AgentState>{MakeAgent("a", 30 + 9 * t, 0, 0, 9),
                                       MakeAgent("b", -10 + 12 * t, 3.5, 0, 12)};
      });
  const ScoringModel& model = DefaultScoringModel();
  StreamEvaluator s({}, model, c.road, c.meta.scenario_id);
  for (std::size_t i = 0; i < c.frames.size(); ++i) {
    auto emitted = s.Push(c.frames[i]);
    if (i == 0) {
      EXPECT_FALSE(emitted);
      continue;
    }
    ASSERT_TRUE(emitted);
    DrivingCase prefix = c;
    prefix.frames.resize(i + 1);
    ExpectReportsNear(*emitted, EvaluateCase(prefix, {}, model), 1e-9);
    if (::testing::Test::HasFailure()) FAIL() << "prefix " << i;
  }
}

TEST(Stream, CrashVetoesTheRest) {
  DrivingCase c = MakeCase(
      80, 0.1, [](double t) { return EgoPose{10 * t, 0, 0, 10}; },
      [](double t) {
        return std::vector<AgentState>{MakeAgent("slow", 25 + 2 * t, 0, 0, 2)};
      });
  StreamEvaluator s({}, DefaultScoringModel(), c.road);
  bool crashed = false;
  for (const SceneFrame& f : c.frames) {
    auto r = s.Push(f);
    if (!r) continue;
    if (r->crash) crashed = true;
    if (crashed) {
      EXPECT_EQ(r->final_score, 0.0);
      EXPECT_EQ(r->segment, SegmentLevel::kLow);
    } else {
      EXPECT_GT(r->final_score, 0.0);
    }
  }
  EXPECT_TRUE(crashed);
}

TEST(Stream, OutOfOrderFrameIsRejectedWithoutSideEffects) {
  DrivingCase c = FollowCase(30, 12, 10, 30);
  StreamEvaluator s({}, DefaultScoringModel(), c.road);
  std::optional<EvaluationReport> last;
  for (std::size_t i = 0; i < 20; ++i) last = s.Push(c.frames[i]);
  EXPECT_THROW(s.Push(c.frames[5]), ValidationError);
  EXPECT_EQ(s.frames_seen(), 20u);
  DrivingCase prefix = c;
  prefix.frames.resize(21);
  auto next = s.Push(c.frames[20]);
  ASSERT_TRUE(next);
  ExpectReportsNear(*next, EvaluateCase(prefix, {}, DefaultScoringModel()),
                    1e-9);
}

}  // namespace
}  // namespace s2o
