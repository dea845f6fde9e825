#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "s2o/errors.h"
#include "s2o/experience.h"
#include "s2o/kinematics.h"
#include "s2o/motion_events.h"
#include "test_support.h"

namespace s2o {
namespace {

using testing::EgoPose;
using testing::MakeCase;

constexpr double kUrbanLimit = 60.0 / 3.6;

// Straight drive along +x with the speed profile v(t) given explicitly.
template <typename F>
DrivingCase SpeedProfile(std::size_t n, double dt, F v,
                         RoadSection section = RoadSection::kUrbanRoad) {
  // Positions from a fine midpoint integration of v.
  return MakeCase(
      n, dt,
      [&](double t) {
        const int steps = 200;
        double x = 0.0;
        for (int k = 0; k < steps; ++k) x += v((k + 0.5) * t / steps) * t / steps;
        return EgoPose{x, 0.0, 0.0, v(t)};
      },
      {}, section);
}

TEST(Efficiency, Anchors) {
  const double lim = 20.0;
  EXPECT_DOUBLE_EQ(InstantaneousEfficiency(0.0, lim), 1.0);
  EXPECT_DOUBLE_EQ(InstantaneousEfficiency(0.5 * lim, lim), 0.5);
  EXPECT_NEAR(InstantaneousEfficiency(1.35 * lim, lim), 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(InstantaneousEfficiency(2.0 * lim, lim), 1.0);
  EXPECT_DOUBLE_EQ(InstantaneousEfficiency(lim, lim), 0.0);
  EXPECT_DOUBLE_EQ(InstantaneousEfficiency(1.1 * lim, lim), 0.0);
  EXPECT_DOUBLE_EQ(InstantaneousEfficiency(1.2 * lim, lim), 0.0);
  EXPECT_NEAR(InstantaneousEfficiency(1.5 * lim, lim), 1.0, 1e-12);
}

TEST(Efficiency, RejectsNonPositiveLimit) {
  EXPECT_THROW(InstantaneousEfficiency(5.0, 0.0), DomainError);
  EXPECT_THROW(InstantaneousEfficiency(5.0, -3.0), DomainError);
}

TEST(Efficiency, ConstantHalfLimit) {
  DrivingCase c = testing::Cruise(50, 0.1, 0.5 * kUrbanLimit);
  EXPECT_NEAR(EfficiencyScore(c), 0.5, 1e-12);
}

TEST(Efficiency, TimeWeightedMean) {
  // Half the time at the limit, half at half the limit; the switch frame
  // sits between the two.
  const std::size_t n = 101;
  DrivingCase c = MakeCase(n, 0.1, [](double t) {
    const double v =
        t < 4.99 ? kUrbanLimit : (t < 5.01 ? 0.75 * kUrbanLimit : 0.5 * kUrbanLimit);
    return EgoPose{0.0, 0.0, 0.0, v};
  });
  EXPECT_NEAR(EfficiencyScore(c), 0.25, 1e-12);
}

TEST(Efficiency, ToleranceBandIsFree) {
  DrivingCase c = testing::Cruise(30, 0.1, 1.1 * kUrbanLimit);
  EXPECT_EQ(EfficiencyScore(c), 0.0);
}

TEST(Efficiency, UsesSectionLimit) {
  DrivingCase c = testing::Cruise(30, 0.1, 60.0 / 3.6, RoadSection::kHighwayExpress);
  EXPECT_NEAR(EfficiencyScore(c), 0.5, 1e-12);
  RoadContext road;
  road.speed_limit_kmh[static_cast<std::size_t>(RoadSection::kHighwayExpress)] =
      60.0;
  EXPECT_NEAR(EfficiencyScore(c, road), 0.0, 1e-12);
}

TEST(Comfort, InstantaneousValues) {
  const ComfortParams cp;
  EXPECT_NEAR(InstantaneousComfort(0.1, 10.0, 0.0, 0.0, cp), 1.0, 1e-12);
  EXPECT_EQ(InstantaneousComfort(0.0, 0.0, 0.0, 0.0, cp), 0.0);
  EXPECT_NEAR(InstantaneousComfort(0.0, 0.0, 2.0, 0.0, cp), 2.0, 1e-12);
  EXPECT_NEAR(InstantaneousComfort(0.0, 0.0, 0.0, 5.0, cp), 5.0, 1e-12);
}

TEST(Comfort, EvenInSigns) {
  const ComfortParams cp;
  for (double w : {0.03, 0.4}) {
    for (double j : {0.5, 3.0}) {
      const double base = InstantaneousComfort(w, 12.0, j, 0.0, cp);
      EXPECT_EQ(InstantaneousComfort(-w, 12.0, j, 0.0, cp), base);
      EXPECT_EQ(InstantaneousComfort(w, 12.0, -j, 0.0, cp), base);
      EXPECT_EQ(InstantaneousComfort(-w, 12.0, -j, 0.0, cp), base);
    }
  }
}

TEST(Comfort, UniformStraightMotionIsZero) {
  DrivingCase d = DeriveKinematics(testing::Cruise(40, 0.1, 14.0));
  EXPECT_NEAR(ComfortScore(d, {}), 0.0, 1e-12);
}

TEST(Comfort, ConstantTurn) {
  const double v = 10.0, w = 0.1, r = v / w;
  DrivingCase d = DeriveKinematics(MakeCase(60, 0.1, [&](double t) {
    return EgoPose{r * std::sin(w * t), r * (1 - std::cos(w * t)), w * t, v};
  }));
  EXPECT_NEAR(ComfortScore(d, {}), 1.0, 1e-9);
}

TEST(Comfort, LeftAndRightTurnsDoNotCancel) {
  const double v = 10.0, w = 0.1;
  DrivingCase d = DeriveKinematics(MakeCase(61, 0.1, [&](double t) {
    const double heading = t <= 3.0 ? w * t : w * (6.0 - t);
    return EgoPose{v * t, 0.0, heading, v};
  }));
  EXPECT_GT(ComfortScore(d, {}), 0.9);
}

TEST(Comfort, JerkOnHalfTheDuration) {
  // Speed v0 + t^2 (jerk 2) on [0, 1], then constant acceleration on [1, 2].
  auto v = [](double t) { return t <= 1.0 ? 5.0 + t * t : 6.0 + 2.0 * (t - 1.0); };
  DrivingCase d = DeriveKinematics(SpeedProfile(401, 0.005, v));
  EXPECT_NEAR(ComfortScore(d, {}), 1.0, 0.005);
}

TEST(Power, HandValues) {
  const VehicleParams vp;
  RoadContext road;
  EgoState e = testing::MakeEgo(0, 0, 0, 10.0);
  e.mass = 1500.0;
  e.accel_long = 1.0;
  PowerBreakdown p = ComputePowerBreakdown(e, vp, road);
  EXPECT_NEAR(p.accel, 16.5, 1e-9);
  EXPECT_NEAR(p.roll, 2.20725, 1e-9);
  EXPECT_EQ(p.grade, 0.0);
  EXPECT_DOUBLE_EQ(p.total, p.accel + p.wind + p.grade + p.roll);

  e.speed = 100.0 / 3.6;
  e.accel_long = 0.0;
  p = ComputePowerBreakdown(e, vp, road);
  EXPECT_NEAR(p.wind, 0.3 * 2.0 * 1e6 / 76140.0, 1e-9);
  EXPECT_NEAR(p.wind, 7.881, 1e-3);

  road.gradient = 0.05;
  p = ComputePowerBreakdown(e, vp, road);
  EXPECT_NEAR(p.grade, 1500.0 * 9.81 * 0.05 * 100.0 / 3600.0, 1e-9);
}

TEST(Power, LinearInMass) {
  const VehicleParams vp;
  RoadContext road;
  road.gradient = 0.03;
  EgoState e = testing::MakeEgo(0, 0, 0, 17.0);
  e.accel_long = -0.7;
  e.mass = 1300.0;
  const PowerBreakdown one = ComputePowerBreakdown(e, vp, road);
  e.mass = 2600.0;
  const PowerBreakdown two = ComputePowerBreakdown(e, vp, road);
  EXPECT_NEAR(two.total - two.wind, 2.0 * (one.total - one.wind), 1e-9);
  EXPECT_DOUBLE_EQ(two.wind, one.wind);
}

TEST(Energy, StationaryIsZero) {
  DrivingCase d = DeriveKinematics(testing::Cruise(20, 0.1, 0.0));
  EXPECT_EQ(EnergyScore(d, {}), 0.0);
}

TEST(Energy, CruiseIsWindPlusRoll) {
  DrivingCase d = DeriveKinematics(
      testing::Cruise(50, 0.1, 100.0 / 3.6, RoadSection::kHighwayExpress));
  const double wind = 0.3 * 2.0 * 1e6 / 76140.0;
  const double roll = 1500.0 * 9.81 * 0.015 * 100.0 / 3600.0;
  EXPECT_NEAR(EnergyScore(d, {}), wind + roll, 1e-9);
  EXPECT_NEAR(EnergyScore(d, {}), 14.012, 1e-3);
}

TEST(Energy, BrakingCanBeNegative) {
  auto v = [](double t) { return 20.0 - 3.0 * t; };
  DrivingCase d = DeriveKinematics(SpeedProfile(51, 0.1, v));
  EXPECT_LT(EnergyScore(d, {}), 0.0);
}

// Case scores against fine rectangle-rule integrals of the analytic laws.
TEST(CaseScores, MatchFineStepOracles) {
  auto v = [](double t) { return 15.0 + 3.0 * std::sin(0.5 * t); };
  auto a = [](double t) { return 1.5 * std::cos(0.5 * t); };
  auto j = [](double t) { return -0.75 * std::sin(0.5 * t); };
  const double duration = 20.0;
  DrivingCase d = DeriveKinematics(SpeedProfile(401, 0.05, v));

  const VehicleParams vp;
  const ComfortParams cp;
  const RoadContext road;
  const double lim = road.SpeedLimit(RoadSection::kUrbanRoad);
  const int fine = 400000;
  const double h = duration / fine;
  double eff = 0.0, comf = 0.0, energy = 0.0;
  for (int i = 0; i < fine; ++i) {
    const double t = (i + 0.5) * h;
    const double u = 3.6 * v(t);
    eff += InstantaneousEfficiency(v(t), lim) * h;
    comf += cp.jerk_weight * j(t) * j(t) * h;
    energy += (vp.delta * vp.mass * u / 3600.0 * a(t) +
               vp.drag_coeff * vp.frontal_area * u * u * u / 76140.0 +
               vp.mass * vp.gravity * road.rolling_coeff * u / 3600.0) * h;
  }
  eff /= duration;
  comf /= duration;
  energy /= duration;
  EXPECT_NEAR(EfficiencyScore(d), eff, 0.005 * eff);
  EXPECT_NEAR(ComfortScore(d, cp), comf, 0.005 * comf);
  EXPECT_NEAR(EnergyScore(d, vp), energy, 0.005 * energy);
}

TEST(MotionEvents, StraightDriveHasNone) {
  DrivingCase d = DeriveKinematics(testing::Cruise(100, 0.1, 10.0));
  UnpleasantMotionLoss loss = ComputeUnpleasantMotionLoss(d, {});
  EXPECT_TRUE(loss.events.empty());
  for (double l : loss.loss) EXPECT_EQ(l, 0.0);
}

TEST(MotionEvents, UTurnDetectedOnce) {
  const double pi = std::numbers::pi;
  DrivingCase d = DeriveKinematics(MakeCase(121, 0.1, [&](double t) {
    const double heading = WrapAngle(t < 8.0 ? pi * t / 8.0 : pi);
    const double r = 8.0 / pi * 4.0;
    return EgoPose{r * std::sin(heading), r * (1 - std::cos(heading)), heading,
                   4.0};
  }));
  UnpleasantMotionLoss loss = ComputeUnpleasantMotionLoss(d, {});
  ASSERT_EQ(loss.events.size(), 1u);
  const MotionEvent& e = loss.events[0];
  EXPECT_EQ(e.kind, MotionEventKind::kUTurn);
  EXPECT_DOUBLE_EQ(e.penalty, 5.0);
  double total = 0.0;
  for (double l : loss.loss) total += l;
  EXPECT_DOUBLE_EQ(total, 5.0 * static_cast<double>(e.last - e.first + 1));
  // The turn closes once 150 degrees are reached, at about 6.7 s.
  EXPECT_NEAR(d.frames[e.last].t, 8.0 * 150.0 / 180.0, 0.11);
}

TEST(MotionEvents, SlowTurnIsNotAUTurn) {
  const double pi = std::numbers::pi;
  DrivingCase d = DeriveKinematics(MakeCase(301, 0.1, [&](double t) {
    return EgoPose{t, 0.0, WrapAngle(pi * t / 25.0), 2.0};
  }));
  EXPECT_TRUE(ComputeUnpleasantMotionLoss(d, {}).events.empty());
}

DrivingCase Braking(double decel_duration) {
  auto v = [=](double t) {
    if (t <= 1.0) return 20.0;
    if (t <= 1.0 + decel_duration) return 20.0 - 7.0 * (t - 1.0);
    return 20.0 - 7.0 * decel_duration;
  };
  return DeriveKinematics(SpeedProfile(61, 0.05, v));
}

TEST(MotionEvents, EmergencyStopDetectedOnce) {
  DrivingCase d = Braking(0.5);
  UnpleasantMotionLoss loss = ComputeUnpleasantMotionLoss(d, {});
  ASSERT_EQ(loss.events.size(), 1u);
  EXPECT_EQ(loss.events[0].kind, MotionEventKind::kEmergencyStop);
  EXPECT_NEAR(d.frames[loss.events[0].first].t, 1.05, 1e-9);
  EXPECT_NEAR(d.frames[loss.events[0].last].t, 1.45, 1e-9);
}

TEST(MotionEvents, ShortBrakeIsNotAnEmergencyStop) {
  EXPECT_TRUE(ComputeUnpleasantMotionLoss(Braking(0.2), {}).events.empty());
}

TEST(MotionEvents, EmergencyStopRaisesComfort) {
  const double calm = ComfortScore(Braking(0.2), {});
  const double hard = ComfortScore(Braking(0.5), {});
  EXPECT_GT(hard, calm);
}

}  // namespace
}  // namespace s2o
