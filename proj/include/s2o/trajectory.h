#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace s2o {

enum class AgentKind { kCar, kTruck, kBus, kPedestrian, kCyclist };

// Road section types with their own speed limits.
enum class RoadSection {
  kUrbanRoad = 0,
  kUrbanIntersection = 1,
  kHighwaySlow = 2,
  kHighwayExpress = 3,
};

inline constexpr std::size_t kNumRoadSections = 4;

std::string_view ToString(AgentKind kind);
std::string_view ToString(RoadSection section);
std::optional<AgentKind> ParseAgentKind(std::string_view name);
std::optional<RoadSection> ParseRoadSection(std::string_view name);

// Mass used when a log omits it.
double DefaultMass(AgentKind kind);

struct AgentState {
  std::string id;
  AgentKind kind = AgentKind::kCar;
  double x = 0.0;        // m
  double y = 0.0;        // m
  double heading = 0.0;  // rad
  double speed = 0.0;    // m/s, magnitude
  double v_long = 0.0;   // m/s, along the agent's own heading
  double length = 4.5;   // m
  double width = 1.8;    // m
  double mass = 1500.0;  // kg

  // Throws ValidationError.
  void Validate() const;
};

struct EgoState : AgentState {
  double accel_long = 0.0;
  double accel_lat = 0.0;
  double jerk_long = 0.0;
  double jerk_lat = 0.0;
  double yaw_rate = 0.0;
  RoadSection section = RoadSection::kUrbanRoad;
};

struct SceneFrame {
  double t = 0.0;
  EgoState ego;
  std::vector<AgentState> agents;
};

struct RoadContext {
  // km/h, indexed by RoadSection.
  std::array<double, kNumRoadSections> speed_limit_kmh = {60.0, 30.0, 80.0,
                                                          120.0};
  double gradient = 0.0;       // rise / run
  double rolling_coeff = 0.015;

  double SpeedLimit(RoadSection section) const;  // m/s
  void Validate() const;
};

struct CaseMeta {
  std::string scenario_id;
  std::string driver_id;
  double dt = 0.0;  // nominal sample period, s
};

struct DrivingCase {
  std::vector<SceneFrame> frames;
  bool crash = false;
  CaseMeta meta;
  RoadContext road;

  double StartTime() const { return frames.front().t; }
  double EndTime() const { return frames.back().t; }
  double Duration() const { return EndTime() - StartTime(); }

  // At least two frames, strictly increasing timestamps, unique agent ids
  // per frame, valid agent geometry. Throws ValidationError.
  void Validate() const;
};

// Region of interest in the ego frame: [-rear, +front] along the ego heading.
struct RoiSpec {
  double front = 100.0;
  double rear = 50.0;

  void Validate() const;
};

// Wraps an angle to [-pi, pi].
double WrapAngle(double angle);

}  // namespace s2o
