#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "s2o/errors.h"
#include "s2o/quadrature.h"
#include "s2o/safety_field.h"
#include "test_support.h"

namespace s2o {
namespace {

using testing::EgoPose;
using testing::MakeAgent;
using testing::MakeCase;
using testing::MakeEgo;

TEST(VirtualMass, HandValue) {
  AgentState a = MakeAgent("a", 10, 0, 0, 10.0);
  a.mass = 1500.0;
  EXPECT_NEAR(VirtualMass(a, DsfParams{}), 2250.0, 1e-9);
}

TEST(VirtualMass, StationaryAgentKeepsItsMass) {
  DsfParams p;
  p.a = 0.7;
  p.b = 2.5;
  AgentState a = MakeAgent("a", 10, 0, 0, 0.0);
  EXPECT_DOUBLE_EQ(VirtualMass(a, p), a.mass);
}

TEST(VirtualMass, NoSpeedGain) {
  DsfParams p;
  p.a = 0.0;
  for (double v : {0.0, 3.0, 30.0}) {
    EXPECT_DOUBLE_EQ(VirtualMass(MakeAgent("a", 1, 0, 0, v), p), 1500.0);
  }
}

TEST(EquivalentDistance, IsotropicAgent) {
  AgentState a = MakeAgent("a", 3, 4);
  a.length = a.width = 2.0;
  EXPECT_NEAR(EquivalentDistance(MakeEgo(0, 0, 0, 0), a), 5.0, 1e-12);
}

TEST(EquivalentDistance, ElongatedAgent) {
  AgentState a = MakeAgent("a", 3, 4);
  a.length = 8.0;
  a.width = 2.0;
  EXPECT_NEAR(EquivalentDistance(MakeEgo(0, 0, 0, 0), a), std::sqrt(73.0),
              1e-12);
}

TEST(EquivalentDistance, OnAxisIgnoresAspect) {
  AgentState a = MakeAgent("a", 7, 0);
  a.length = 12.0;
  a.width = 2.5;
  EXPECT_NEAR(EquivalentDistance(MakeEgo(0, 0, 0, 0), a), 7.0, 1e-12);
}

TEST(EquivalentDistance, MeasuredInEgoFrame) {
  AgentState a = MakeAgent("a", -4, 3);
  a.length = 8.0;
  a.width = 2.0;
  // Ego heading +y: the agent is 3 m ahead and 4 m to the left.
  EXPECT_NEAR(EquivalentDistance(MakeEgo(0, 0, std::numbers::pi / 2, 0), a),
              std::sqrt(73.0), 1e-12);
}

TEST(EquivalentDistance, CoincidentIsDegenerate) {
  try {
    EquivalentDistance(MakeEgo(1, 2, 0, 0), MakeAgent("a", 1, 2));
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("degenerate distance"),
              std::string::npos);
  }
}

TEST(FieldRisk, HandValues) {
  DsfParams p;
  p.G = 1.0;
  p.k1 = 1.0;
  EXPECT_NEAR(FieldRisk(100.0, 10.0, 0.0, p), 1.01, 1e-12);
  EXPECT_NEAR(FieldRisk(100.0, 10.0, std::log(100.0), p), 2.0, 1e-12);
  EXPECT_LT(FieldRisk(100.0, 1e8, 0.0, p), 1e-13);
}

TEST(FieldRisk, ExponentIsClamped) {
  DsfParams p;
  EXPECT_TRUE(std::isfinite(FieldRisk(1500.0, 1.0, 1e6, p)));
  EXPECT_DOUBLE_EQ(FieldRisk(1500.0, 1.0, 1e6, p),
                   FieldRisk(1500.0, 1.0, p.max_exponent, p));
}

TEST(ClosingSpeed, SignConvention) {
  EgoState ego = MakeEgo(0, 0, 0, 10.0);
  EXPECT_NEAR(ClosingSpeed(ego, MakeAgent("ahead", 20, 0, 0, 4.0)), 6.0, 1e-12);
  EXPECT_NEAR(ClosingSpeed(ego, MakeAgent("fast", 20, 0, 0, 14.0)), -4.0,
              1e-12);
  EXPECT_NEAR(ClosingSpeed(ego, MakeAgent("behind", -20, 0, 0, 4.0)), -6.0,
              1e-12);
  // Oncoming traffic closes at the sum of speeds.
  EXPECT_NEAR(ClosingSpeed(ego, MakeAgent("oncoming", 30, 0, std::numbers::pi, 5.0)), 15.0,
              1e-12);
}

TEST(EgoRisk, EmptyRoiIsZero) {
  SceneFrame f;
  f.ego = MakeEgo(0, 0, 0, 10);
  EXPECT_EQ(EgoRisk(f, DsfParams{}), 0.0);
  f.agents.push_back(MakeAgent("far", 300, 0));
  EXPECT_EQ(EgoRisk(f, DsfParams{}), 0.0);
}

TEST(EgoRisk, MirroredAgentsDouble) {
  SceneFrame single;
  single.ego = MakeEgo(0, 0, 0, 10);
  single.agents = {MakeAgent("l", 15, 3.5, 0, 8)};
  SceneFrame both = single;
  both.agents.push_back(MakeAgent("r", 15, -3.5, 0, 8));
  const DsfParams p;
  EXPECT_DOUBLE_EQ(EgoRisk(both, p), 2.0 * EgoRisk(single, p));
}

TEST(EgoRisk, AgentBeyondRoiIsIgnored) {
  SceneFrame near;
  near.ego = MakeEgo(0, 0, 0, 10);
  near.agents = {MakeAgent("n", 50, 0, 0, 8)};
  SceneFrame with_far = near;
  with_far.agents.insert(with_far.agents.begin(), MakeAgent("f", 150, 0, 0, 8));
  const DsfParams p;
  EXPECT_EQ(EgoRisk(with_far, p), EgoRisk(near, p));
  EXPECT_GT(EgoRisk(near, p), 0.0);
}

TEST(EgoRisk, CoincidentAgentIsFloored) {
  SceneFrame f;
  f.ego = MakeEgo(3, 4, 0, 10);
  f.agents = {MakeAgent("on_top", 3, 4, 0, 0)};
  const DsfParams p;
  EXPECT_DOUBLE_EQ(EgoRisk(f, p), FieldRisk(1500.0, p.min_distance, 0.0, p));
}

TEST(SafetyScore, ConstantRiskAveragesToItself) {
  DrivingCase c = MakeCase(
      40, 0.1, [](double t) { return EgoPose{10 * t, 0, 0, 10}; },
      [](double t) {
        return std::vector<AgentState>{MakeAgent("a", 10 * t + 20, 0, 0, 10)};
      });
  const DsfParams p;
  const double r = EgoRisk(c.frames[0], p);
  EXPECT_NEAR(SafetyScore(c, p), r, 1e-12 * r);
}

TEST(SafetyScore, RampAveragesToMidpoint) {
  const std::vector<double> t = {0.0, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> v;
  for (double s : t) v.push_back(10.0 * s / 4.0);
  EXPECT_DOUBLE_EQ(TrapezoidMean(t, v), 5.0);
}

TEST(SafetyScore, AgentFreeCaseIsZero) {
  EXPECT_EQ(SafetyScore(testing::Cruise(30, 0.1, 12.0), DsfParams{}), 0.0);
}

TEST(SafetyScore, SingleFrameIsAnError) {
  DrivingCase c = testing::Cruise(2, 0.1, 12.0);
  c.frames.pop_back();
  EXPECT_THROW(SafetyScore(c, DsfParams{}), Error);
}

// Independent closed form of the field for an agent straight ahead on the
// ego's axis, integrated with a fine rectangle rule.
TEST(SafetyScore, MatchesFineStepOracle) {
  const double v_ego = 12.0, v_lead = 8.0, gap0 = 40.0, duration = 6.0;
  const DsfParams p;
  auto risk_at = [&](double t) {
    const double r = gap0 - (v_ego - v_lead) * t;
    const double m_eq = 1500.0 * (p.a * v_lead + p.c);
    return (p.G * m_eq + p.k1 * std::exp(v_ego - v_lead)) / (r * r);
  };
  const std::size_t n = 61;
  DrivingCase c = MakeCase(
      n, duration / (n - 1), [&](double t) { return EgoPose{v_ego * t, 0, 0, v_ego}; },
      [&](double t) {
        return std::vector<AgentState>{
            MakeAgent("lead", gap0 + v_lead * t, 0, 0, v_lead)};
      });
  const std::size_t fine = 600000;
  const double h = duration / fine;
  double oracle = 0.0;
  for (std::size_t i = 0; i < fine; ++i) oracle += risk_at((i + 0.5) * h) * h;
  oracle /= duration;
  EXPECT_NEAR(SafetyScore(c, p), oracle, 0.005 * oracle);
}

TEST(RiskHeatmap, EmptySceneIsZero) {
  SceneFrame f;
  f.ego = MakeEgo(0, 0, 0, 10);
  RiskGrid g = RiskHeatmap(f, {}, GridSpec::AroundEgo(f.ego, 20, 1));
  EXPECT_EQ(g.rows, 40u);
  for (double v : g.values) EXPECT_EQ(v, 0.0);
}

TEST(RiskHeatmap, PeakAtAgent) {
  SceneFrame f;
  f.ego = MakeEgo(0, 0, 0, 0);
  f.agents = {MakeAgent("a", 7.3, -4.6, 0, 0)};
  RiskGrid g = RiskHeatmap(f, {}, GridSpec::AroundEgo(f.ego, 20, 1));
  std::size_t best = 0;
  for (std::size_t k = 1; k < g.values.size(); ++k) {
    if (g.values[k] > g.values[best]) best = k;
  }
  // Unique maximum.
  for (std::size_t k = 0; k < g.values.size(); ++k) {
    if (k != best) {
      EXPECT_LT(g.values[k], g.values[best]);
    }
  }
  const std::size_t row = best / g.cols, col = best % g.cols;
  EXPECT_NEAR(g.CenterX(col), 7.5, 1e-12);
  EXPECT_NEAR(g.CenterY(row), -4.5, 1e-12);
}

TEST(RiskHeatmap, CellOnAgentCenterIsCapped) {
  SceneFrame f;
  f.ego = MakeEgo(0, 0, 0, 0);
  f.agents = {MakeAgent("a", 5.5, 0.5, 0, 0)};
  GridSpec spec = GridSpec::AroundEgo(f.ego, 10, 1);
  RiskGrid g = RiskHeatmap(f, {}, spec);
  const double cap = FieldRisk(1500.0, spec.min_distance, 0.0, DsfParams{});
  double peak = 0.0;
  for (double v : g.values) peak = std::max(peak, v);
  EXPECT_TRUE(std::isfinite(peak));
  EXPECT_NEAR(peak, cap, 1e-9 * cap);
}

TEST(RiskHeatmap, MirrorSymmetry) {
  SceneFrame f;
  f.ego = MakeEgo(0, 0, 0, 10);
  f.agents = {MakeAgent("l", 18, 3.5, 0, 6), MakeAgent("r", 18, -3.5, 0, 6),
              MakeAgent("t", -12, 2.0, 0, 14, AgentKind::kTruck),
              MakeAgent("u", -12, -2.0, 0, 14, AgentKind::kTruck)};
  f.agents[2].length = f.agents[3].length = 12.0;
  f.agents[2].width = f.agents[3].width = 2.5;
  RiskGrid g = RiskHeatmap(f, {}, GridSpec::AroundEgo(f.ego, 30, 0.5));
  double peak = 0.0;
  for (double v : g.values) peak = std::max(peak, v);
  for (std::size_t r = 0; r < g.rows; ++r) {
    for (std::size_t c = 0; c < g.cols; ++c) {
      EXPECT_NEAR(g.at(r, c), g.at(g.rows - 1 - r, c), 1e-9 * peak);
    }
  }
}

TEST(RiskHeatmap, CsvRoundTrip) {
  SceneFrame f;
  f.ego = MakeEgo(1, 2, 0.3, 10);
  f.agents = {MakeAgent("a", 12, 4, 0.1, 7)};
  RiskGrid g = RiskHeatmap(f, {}, GridSpec::AroundEgo(f.ego, 6, 0.75));
  std::stringstream s;
  WriteRiskGridCsv(g, s);
  RiskGrid back = ReadRiskGridCsv(s);
  EXPECT_EQ(back.rows, g.rows);
  EXPECT_EQ(back.cols, g.cols);
  EXPECT_EQ(back.origin_x, g.origin_x);
  EXPECT_EQ(back.values, g.values);
}

class DsfProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{17};
  double U(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
};

TEST_F(DsfProperties, MonotoneDecayInDistance) {
  const DsfParams p;
  for (int i = 0; i < 300; ++i) {
    EgoState ego = MakeEgo(0, 0, 0, 0);
    const double lon = U(0.5, 60), lat = U(0.5, 10);
    AgentState a = MakeAgent("a", lon, lat, 0, 0);
    AgentState b = a;
    b.x = lon * U(1.01, 2.0);
    AgentState c = a;
    c.y = lat * U(1.01, 2.0);
    const double ra = AgentRisk(ego, a, p).risk;
    EXPECT_GT(ra, AgentRisk(ego, b, p).risk);
    EXPECT_GT(ra, AgentRisk(ego, c, p).risk);
  }
}

TEST_F(DsfProperties, GrowsWithClosingSpeedAndMass) {
  const DsfParams p;
  for (int i = 0; i < 300; ++i) {
    const double m = U(50, 20000), r = U(1, 80), v = U(-20, 20);
    EXPECT_GT(FieldRisk(m, r, v + U(0.01, 5), p), FieldRisk(m, r, v, p));
    EXPECT_GT(FieldRisk(m + U(1, 500), r, v, p), FieldRisk(m, r, v, p));
    AgentState a = MakeAgent("a", 10, 0, 0, U(0, 30));
    AgentState b = a;
    b.v_long += U(0.01, 5);
    EXPECT_GT(VirtualMass(b, p), VirtualMass(a, p));
  }
}

}  // namespace
}  // namespace s2o
