#include "s2o/trajectory.h"

#include <cmath>
#include <numbers>
#include <unordered_set>

#include "s2o/errors.h"

namespace s2o {

namespace {

constexpr std::array<std::string_view, 5> kAgentKindNames = {
    "car", "truck", "bus", "pedestrian", "cyclist"};
constexpr std::array<std::string_view, kNumRoadSections> kSectionNames = {
    "urban_road", "urban_intersection", "highway_slow", "highway_express"};

}  // namespace

std::string_view ToString(AgentKind kind) {
  return kAgentKindNames[static_cast<std::size_t>(kind)];
}

std::string_view ToString(RoadSection section) {
  return kSectionNames[static_cast<std::size_t>(section)];
}

std::optional<AgentKind> ParseAgentKind(std::string_view name) {
  for (std::size_t i = 0; i < kAgentKindNames.size(); ++i) {
    if (kAgentKindNames[i] == name) return static_cast<AgentKind>(i);
  }
  return std::nullopt;
}

std::optional<RoadSection> ParseRoadSection(std::string_view name) {
  for (std::size_t i = 0; i < kSectionNames.size(); ++i) {
    if (kSectionNames[i] == name) return static_cast<RoadSection>(i);
  }
  return std::nullopt;
}

double DefaultMass(AgentKind kind) {
  switch (kind) {
    case AgentKind::kCar:
      return 1500.0;
    case AgentKind::kTruck:
      return 10000.0;
    case AgentKind::kBus:
      return 12000.0;
    case AgentKind::kPedestrian:
      return 75.0;
    case AgentKind::kCyclist:
      return 90.0;
  }
  return 1500.0;
}

void AgentState::Validate() const {
  if (!(length > 0.0) || !(width > 0.0)) {
    throw ValidationError("agent '" + id + "': box extents must be positive");
  }
  if (!(mass > 0.0)) {
    throw ValidationError("agent '" + id + "': mass must be positive");
  }
  // NaN speed is allowed: it marks a speed to be derived from positions.
  if (speed < 0.0) {
    throw ValidationError("agent '" + id + "': negative speed");
  }
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(heading)) {
    throw ValidationError("agent '" + id + "': non-finite pose");
  }
}

double RoadContext::SpeedLimit(RoadSection section) const {
  return speed_limit_kmh[static_cast<std::size_t>(section)] / 3.6;
}

void RoadContext::Validate() const {
  for (std::size_t i = 0; i < kNumRoadSections; ++i) {
    if (!(speed_limit_kmh[i] > 0.0)) {
      throw ValidationError("speed limit for " +
                            std::string(kSectionNames[i]) +
                            " must be positive");
    }
  }
  if (!(rolling_coeff >= 0.0)) {
    throw ValidationError("rolling coefficient must be non-negative");
  }
  if (!(std::abs(gradient) < 1.0)) {
    throw ValidationError("road gradient must satisfy |i| < 1");
  }
}

void DrivingCase::Validate() const {
  if (frames.size() < 2) {
    throw ValidationError("fewer than 2 frames");
  }
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const SceneFrame& frame = frames[i];
    if (!std::isfinite(frame.t)) {
      throw ValidationError("frame " + std::to_string(i) +
                            ": non-finite timestamp");
    }
    if (i > 0 && !(frame.t > frames[i - 1].t)) {
      throw ValidationError("frame " + std::to_string(i) +
                            ": timestamps not strictly increasing");
    }
    frame.ego.Validate();
    std::unordered_set<std::string> ids;
    for (const AgentState& agent : frame.agents) {
      agent.Validate();
      if (!ids.insert(agent.id).second) {
        throw ValidationError("frame " + std::to_string(i) +
                              ": duplicate agent id '" + agent.id + "'");
      }
    }
  }
  if (!(Duration() > 0.0)) {
    throw ValidationError("case duration must be positive");
  }
  road.Validate();
}

void RoiSpec::Validate() const {
  if (!(front > 0.0) || !(rear > 0.0)) {
    throw ValidationError("ROI extents must be positive");
  }
}

double WrapAngle(double angle) {
  return std::remainder(angle, 2.0 * std::numbers::pi);
}

}  // namespace s2o
