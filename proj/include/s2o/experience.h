#pragma once

#include <numbers>
#include <vector>

#include "s2o/trajectory.h"

namespace s2o {

struct VehicleParams {
  double delta = 1.1;         // rotating-mass conversion coefficient
  double drag_coeff = 0.30;   // C_D
  double frontal_area = 2.0;  // m^2
  double mass = 1500.0;       // kg, used when a log omits the ego mass
  double gravity = 9.81;      // m/s^2

  void Validate() const;
};

struct ComfortParams {
  double jerk_weight = 0.5;
  double u_turn_penalty = 5.0;
  double emergency_stop_penalty = 5.0;
  // Emergency stop: deceleration at or above this, sustained this long.
  double emergency_decel = 6.0;          // m/s^2
  double emergency_min_duration = 0.3;   // s
  // U-turn: heading change of at least this within the window.
  double u_turn_angle = 150.0 * std::numbers::pi / 180.0;  // rad
  double u_turn_window = 10.0;                             // s

  void Validate() const;
};

// Kilowatts.
struct PowerBreakdown {
  double accel = 0.0;
  double wind = 0.0;
  double grade = 0.0;
  double roll = 0.0;
  double total = 0.0;
};

// Efficiency penalty in [0, 1], higher is worse:
//   v < v_lim                 1 - v / v_lim
//   v_lim <= v <= 1.2 v_lim   0
//   v > 1.2 v_lim             min(1, (10/3) (v / v_lim) - 4)
// The overspeed ramp is the affine law that is 0 at 1.2 v_lim and saturates
// at 1.5 v_lim. Throws DomainError for v_lim <= 0.
double InstantaneousEfficiency(double v, double v_lim);

std::vector<double> EfficiencySeries(const DrivingCase& c,
                                     const RoadContext& road);
double EfficiencyScore(const DrivingCase& c, const RoadContext& road);
inline double EfficiencyScore(const DrivingCase& c) {
  return EfficiencyScore(c, c.road);
}

// |omega| * v + k * j^2 + loss.
double InstantaneousComfort(double omega, double v, double jerk, double loss,
                            const ComfortParams& cp);

// Comfort series for a case whose kinematics are already derived. Jerk is the
// magnitude of the longitudinal and lateral components.
std::vector<double> ComfortSeries(const DrivingCase& c, const ComfortParams& cp);
double ComfortScore(const DrivingCase& c, const ComfortParams& cp);

// Uses ego.mass, ego.speed and ego.accel_long.
PowerBreakdown ComputePowerBreakdown(const EgoState& ego,
                                     const VehicleParams& vp,
                                     const RoadContext& road);
std::vector<double> PowerSeries(const DrivingCase& c, const VehicleParams& vp,
                                const RoadContext& road);
double EnergyScore(const DrivingCase& c, const VehicleParams& vp,
                   const RoadContext& road);
inline double EnergyScore(const DrivingCase& c, const VehicleParams& vp) {
  return EnergyScore(c, vp, c.road);
}

}  // namespace s2o
