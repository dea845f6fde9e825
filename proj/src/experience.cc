#include "s2o/experience.h"

#include <algorithm>
#include <cmath>

#include "s2o/errors.h"
#include "s2o/motion_events.h"
#include "s2o/quadrature.h"

namespace s2o {

namespace {

std::vector<double> Times(const DrivingCase& c) {
  std::vector<double> t;
  t.reserve(c.frames.size());
  for (const SceneFrame& f : c.frames) t.push_back(f.t);
  return t;
}

void RequireFrames(const DrivingCase& c) {
  if (c.frames.size() < 2) throw ValidationError("fewer than 2 frames");
}

}  // namespace

void VehicleParams::Validate() const {
  if (!(delta >= 1.0)) throw ValidationError("vehicle.delta must be >= 1");
  if (!(drag_coeff > 0.0) || !(frontal_area > 0.0) || !(mass > 0.0) ||
      !(gravity > 0.0)) {
    throw ValidationError("vehicle parameters must be positive");
  }
}

void ComfortParams::Validate() const {
  if (!(jerk_weight >= 0.0)) throw ValidationError("comfort.k must be >= 0");
  if (!(u_turn_penalty >= 0.0) || !(emergency_stop_penalty >= 0.0)) {
    throw ValidationError("comfort penalties must be >= 0");
  }
  if (!(emergency_decel > 0.0) || !(emergency_min_duration > 0.0) ||
      !(u_turn_angle > 0.0) || !(u_turn_window > 0.0)) {
    throw ValidationError("comfort detection thresholds must be positive");
  }
}

double InstantaneousEfficiency(double v, double v_lim) {
  if (!(v_lim > 0.0)) throw DomainError("speed limit must be positive");
  if (v < v_lim) return 1.0 - v / v_lim;
  // Breakpoints in speed units: 1.2 v_lim maps to 0 and 1.5 v_lim to 1
  // exactly.
  const double tolerated = 1.2 * v_lim;
  const double saturated = 1.5 * v_lim;
  if (v <= tolerated) return 0.0;
  if (v >= saturated) return 1.0;
  return (v - tolerated) / (saturated - tolerated);
}

std::vector<double> EfficiencySeries(const DrivingCase& c,
                                     const RoadContext& road) {
  std::vector<double> out;
  out.reserve(c.frames.size());
  for (const SceneFrame& f : c.frames) {
    out.push_back(
        InstantaneousEfficiency(f.ego.speed, road.SpeedLimit(f.ego.section)));
  }
  return out;
}

double EfficiencyScore(const DrivingCase& c, const RoadContext& road) {
  RequireFrames(c);
  return TrapezoidMean(Times(c), EfficiencySeries(c, road));
}

double InstantaneousComfort(double omega, double v, double jerk, double loss,
                            const ComfortParams& cp) {
  return std::abs(omega) * v + cp.jerk_weight * jerk * jerk + loss;
}

std::vector<double> ComfortSeries(const DrivingCase& c,
                                  const ComfortParams& cp) {
  const UnpleasantMotionLoss loss = ComputeUnpleasantMotionLoss(c, cp);
  std::vector<double> out;
  out.reserve(c.frames.size());
  for (std::size_t i = 0; i < c.frames.size(); ++i) {
    const EgoState& e = c.frames[i].ego;
    out.push_back(InstantaneousComfort(
        e.yaw_rate, e.speed, std::hypot(e.jerk_long, e.jerk_lat),
        loss.loss[i], cp));
  }
  return out;
}

double ComfortScore(const DrivingCase& c, const ComfortParams& cp) {
  RequireFrames(c);
  return TrapezoidMean(Times(c), ComfortSeries(c, cp));
}

PowerBreakdown ComputePowerBreakdown(const EgoState& ego,
                                     const VehicleParams& vp,
                                     const RoadContext& road) {
  const double u_a = 3.6 * ego.speed;  // km/h
  const double weight = ego.mass * vp.gravity;
  PowerBreakdown p;
  p.accel = vp.delta * ego.mass * u_a / 3600.0 * ego.accel_long;
  p.wind = vp.drag_coeff * vp.frontal_area * u_a * u_a * u_a / 76140.0;
  p.grade = weight * road.gradient * u_a / 3600.0;
  p.roll = weight * road.rolling_coeff * u_a / 3600.0;
  p.total = p.accel + p.wind + p.grade + p.roll;
  return p;
}

std::vector<double> PowerSeries(const DrivingCase& c, const VehicleParams& vp,
                                const RoadContext& road) {
  std::vector<double> out;
  out.reserve(c.frames.size());
  for (const SceneFrame& f : c.frames) {
    out.push_back(ComputePowerBreakdown(f.ego, vp, road).total);
  }
  return out;
}

double EnergyScore(const DrivingCase& c, const VehicleParams& vp,
                   const RoadContext& road) {
  RequireFrames(c);
  return TrapezoidMean(Times(c), PowerSeries(c, vp, road));
}

}  // namespace s2o
