#include <algorithm>
#include <cmath>

#include "s2o/errors.h"
#include "s2o/harness.h"

namespace s2o {

void IdmParams::Validate() const {
  if (!(desired_speed >= 0.0) || !(time_headway > 0.0) || !(min_gap > 0.0) ||
      !(max_accel > 0.0) || !(comfort_decel > 0.0) || !(exponent > 0.0)) {
    throw ValidationError("IDM parameters must be positive");
  }
}

double IdmAccel(double v, double gap, double dv, const IdmParams& p) {
  if (!(gap > 0.0)) throw DomainError("IDM gap must be positive");
  if (!(p.desired_speed > 0.0)) throw DomainError("IDM desired speed unset");
  // The dynamic part is clamped so a fast-receding leader cannot pull the
  // desired gap below s0.
  const double dynamic =
      v * p.time_headway +
      v * dv / (2.0 * std::sqrt(p.max_accel * p.comfort_decel));
  const double s_star = p.min_gap + std::max(0.0, dynamic);
  const double free = std::pow(std::max(v, 0.0) / p.desired_speed, p.exponent);
  const double interaction = (s_star / gap) * (s_star / gap);
  return p.max_accel * (1.0 - free - interaction);
}

}  // namespace s2o
