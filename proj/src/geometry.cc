#include "s2o/geometry.h"

#include <algorithm>
#include <array>
#include <cmath>

namespace s2o {

namespace {

struct Axis {
  double x;
  double y;
};

double ProjectedRadius(const AgentState& box, const Axis& axis) {
  const double c = std::cos(box.heading);
  const double s = std::sin(box.heading);
  return 0.5 * box.length * std::abs(c * axis.x + s * axis.y) +
         0.5 * box.width * std::abs(-s * axis.x + c * axis.y);
}

}  // namespace

LocalOffset ToLocal(const AgentState& origin, double x, double y) {
  const double dx = x - origin.x;
  const double dy = y - origin.y;
  const double c = std::cos(origin.heading);
  const double s = std::sin(origin.heading);
  return {c * dx + s * dy, -s * dx + c * dy};
}

bool InRoi(const AgentState& ego, const AgentState& agent, const RoiSpec& roi) {
  const double lon = ToLocal(ego, agent.x, agent.y).longitudinal;
  return lon >= -roi.rear && lon <= roi.front;
}

std::vector<AgentState> RoiFilter(const SceneFrame& frame, const RoiSpec& roi) {
  std::vector<AgentState> kept;
  std::copy_if(frame.agents.begin(), frame.agents.end(),
               std::back_inserter(kept),
               [&](const AgentState& a) { return InRoi(frame.ego, a, roi); });
  return kept;
}

bool BoxesOverlap(const AgentState& a, const AgentState& b) {
  const double ca = std::cos(a.heading), sa = std::sin(a.heading);
  const double cb = std::cos(b.heading), sb = std::sin(b.heading);
  const std::array<Axis, 4> axes = {
      Axis{ca, sa}, Axis{-sa, ca}, Axis{cb, sb}, Axis{-sb, cb}};
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  for (const Axis& axis : axes) {
    const double distance = std::abs(dx * axis.x + dy * axis.y);
    if (distance > ProjectedRadius(a, axis) + ProjectedRadius(b, axis)) {
      return false;
    }
  }
  return true;
}

bool FrameHasCollision(const SceneFrame& frame) {
  return std::any_of(
      frame.agents.begin(), frame.agents.end(),
      [&](const AgentState& a) { return BoxesOverlap(frame.ego, a); });
}

bool DetectCrash(const DrivingCase& c) {
  return std::any_of(c.frames.begin(), c.frames.end(), FrameHasCollision);
}

}  // namespace s2o
