#include "s2o/kinematics.h"

#include <array>
#include <cmath>

#include "s2o/errors.h"

namespace s2o {

namespace {

template <typename ValueAt>
double ThreePoint(std::span<const double> t, std::size_t i, ValueAt value) {
  const std::size_t n = t.size();
  if (n < 2) throw DomainError("derivative needs at least two samples");
  if (n == 2) {
    const double h = t[1] - t[0];
    if (h == 0.0) throw DomainError("zero time step between frames");
    return (value(1) - value(0)) / h;
  }
  std::size_t lo = StencilLow(i, n);
  const double h1 = t[lo + 1] - t[lo];
  const double h2 = t[lo + 2] - t[lo + 1];
  if (h1 == 0.0 || h2 == 0.0) {
    throw DomainError("zero time step between frames");
  }
  const double f0 = value(lo);
  const double f1 = value(lo + 1);
  const double f2 = value(lo + 2);
  const double h12 = h1 + h2;
  if (i == lo) {
    return -(2.0 * h1 + h2) / (h1 * h12) * f0 + h12 / (h1 * h2) * f1 -
           h1 / (h2 * h12) * f2;
  }
  if (i == lo + 2) {
    return h2 / (h1 * h12) * f0 - h12 / (h1 * h2) * f1 +
           (h1 + 2.0 * h2) / (h2 * h12) * f2;
  }
  return -h2 / (h1 * h12) * f0 + (h2 - h1) / (h1 * h2) * f1 +
         h1 / (h2 * h12) * f2;
}

std::size_t RangeLow(std::size_t first, std::size_t n) {
  if (first >= n) return n;
  return std::min(StencilLow(first, n), StencilLow(n - 1, n));
}

}  // namespace

void KinematicSeries::Resize(std::size_t n) {
  speed.resize(n);
  accel_long.resize(n);
  accel_lat.resize(n);
  jerk_long.resize(n);
  jerk_lat.resize(n);
  yaw_rate.resize(n);
}

std::size_t StencilLow(std::size_t i, std::size_t n) {
  if (n <= 3 || i == 0) return 0;
  if (i >= n - 1) return n - 3;
  return i - 1;
}

double Derivative(std::span<const double> t, std::span<const double> f,
                  std::size_t i) {
  return ThreePoint(t, i, [&](std::size_t k) { return f[k]; });
}

double AngularDerivative(std::span<const double> t,
                         std::span<const double> angle, std::size_t i) {
  // Unwrap locally relative to the first stencil sample.
  const std::size_t lo = t.size() == 2 ? 0 : StencilLow(i, t.size());
  std::array<double, 3> unwrapped{0.0, 0.0, 0.0};
  const std::size_t width = t.size() == 2 ? 2 : 3;
  for (std::size_t k = 1; k < width; ++k) {
    unwrapped[k] =
        unwrapped[k - 1] + WrapAngle(angle[lo + k] - angle[lo + k - 1]);
  }
  return ThreePoint(t, i, [&](std::size_t k) { return unwrapped[k - lo]; });
}

void DeriveKinematicSeries(const EgoSamples& s, std::size_t first,
                           KinematicSeries* out) {
  const std::size_t n = s.t.size();
  if (n < 2) throw DomainError("kinematics need at least two frames");
  out->Resize(n);
  const std::size_t lo_accel = RangeLow(first, n);
  const std::size_t lo_speed = RangeLow(lo_accel, n);

  for (std::size_t i = lo_speed; i < n; ++i) {
    if (std::isnan(s.speed[i])) {
      out->speed[i] =
          std::hypot(Derivative(s.t, s.x, i), Derivative(s.t, s.y, i));
    } else {
      out->speed[i] = s.speed[i];
    }
  }
  for (std::size_t i = lo_accel; i < n; ++i) {
    out->yaw_rate[i] = AngularDerivative(s.t, s.heading, i);
    out->accel_lat[i] = out->speed[i] * out->yaw_rate[i];
  }
  for (std::size_t i = lo_accel; i < n; ++i) {
    out->accel_long[i] = Derivative(s.t, out->speed, i);
  }
  for (std::size_t i = first; i < n; ++i) {
    out->jerk_long[i] = Derivative(s.t, out->accel_long, i);
    out->jerk_lat[i] = Derivative(s.t, out->accel_lat, i);
  }
}

DrivingCase DeriveKinematics(DrivingCase c) {
  const std::size_t n = c.frames.size();
  if (n < 2) throw ValidationError("fewer than 2 frames");
  std::vector<double> t(n), x(n), y(n), heading(n), speed(n);
  for (std::size_t i = 0; i < n; ++i) {
    const SceneFrame& f = c.frames[i];
    t[i] = f.t;
    x[i] = f.ego.x;
    y[i] = f.ego.y;
    heading[i] = f.ego.heading;
    speed[i] = f.ego.speed;
  }
  KinematicSeries k;
  DeriveKinematicSeries({t, x, y, heading, speed}, 0, &k);
  for (std::size_t i = 0; i < n; ++i) {
    EgoState& e = c.frames[i].ego;
    e.speed = k.speed[i];
    if (std::isnan(e.v_long)) e.v_long = k.speed[i];
    e.accel_long = k.accel_long[i];
    e.accel_lat = k.accel_lat[i];
    e.jerk_long = k.jerk_long[i];
    e.jerk_lat = k.jerk_lat[i];
    e.yaw_rate = k.yaw_rate[i];
  }
  return c;
}

}  // namespace s2o
