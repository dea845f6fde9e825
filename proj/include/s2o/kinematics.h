#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "s2o/trajectory.h"

namespace s2o {

// Column view of the raw ego samples that kinematics are derived from.
struct EgoSamples {
  std::span<const double> t;
  std::span<const double> x;
  std::span<const double> y;
  std::span<const double> heading;
  std::span<const double> speed;  // NaN entries are derived from positions
};

struct KinematicSeries {
  std::vector<double> speed;
  std::vector<double> accel_long;
  std::vector<double> accel_lat;
  std::vector<double> jerk_long;
  std::vector<double> jerk_lat;
  std::vector<double> yaw_rate;

  void Resize(std::size_t n);
};

// Three-point, second-order derivative of `f` at index i on the possibly
// non-uniform grid `t`. Central in the interior, one-sided at the endpoints;
// two-point when only two samples exist. Throws DomainError on a zero step.
double Derivative(std::span<const double> t, std::span<const double> f,
                  std::size_t i);

// Same, for an angle sequence: differences are wrapped to [-pi, pi].
double AngularDerivative(std::span<const double> t,
                         std::span<const double> angle, std::size_t i);

// Smallest sample index read by the stencil at index i of an n-sample series.
std::size_t StencilLow(std::size_t i, std::size_t n);

// Fills `out` for indices [first, n). Entries below `first` are left as they
// are. Results agree exactly with a full-range call, so a streaming caller
// only has to recompute the tail that can still change.
void DeriveKinematicSeries(const EgoSamples& samples, std::size_t first,
                           KinematicSeries* out);

// Returns a copy of `c` with ego speed (where missing), longitudinal and
// lateral acceleration, jerk and yaw rate filled in.
DrivingCase DeriveKinematics(DrivingCase c);

}  // namespace s2o
