#pragma once

#include <cstddef>
#include <span>

#include "s2o/errors.h"

namespace s2o {

// Trapezoidal integral of samples `v` over the grid `t`.
inline double TrapezoidIntegral(std::span<const double> t,
                                std::span<const double> v) {
  double sum = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    sum += 0.5 * (v[i] + v[i - 1]) * (t[i] - t[i - 1]);
  }
  return sum;
}

// Time average over [t.front(), t.back()].
inline double TrapezoidMean(std::span<const double> t,
                            std::span<const double> v) {
  if (t.size() < 2) throw DomainError("time average needs at least two frames");
  const double duration = t.back() - t.front();
  if (!(duration > 0.0)) throw DomainError("time average needs positive duration");
  return TrapezoidIntegral(t, v) / duration;
}

}  // namespace s2o
