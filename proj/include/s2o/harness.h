#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "s2o/evaluate.h"
#include "s2o/ratings.h"
#include "s2o/trajectory.h"

namespace s2o {

struct IdmParams {
  double desired_speed = 0.0;  // m/s; 0 means the section speed limit
  double time_headway = 1.5;   // s
  double min_gap = 2.0;        // m
  double max_accel = 1.5;      // m/s^2
  double comfort_decel = 2.0;  // m/s^2
  double exponent = 4.0;

  // desired_speed may be 0 (resolved later); everything else positive.
  void Validate() const;
};

// a_max (1 - (v/v0)^4 - (s*/s)^2) with
// s* = s0 + max(0, v T + v dv / (2 sqrt(a_max b))), dv = v - v_leader.
// Throws DomainError for s <= 0 or v0 <= 0.
double IdmAccel(double v, double gap, double dv, const IdmParams& p);

enum class ScenarioKind {
  kCarFollowing,
  kOvertake,
  kMerge,
  kMultiAgent,
  kIntersection,
};
std::string_view ToString(ScenarioKind kind);

enum class AgentPolicy { kConstant, kIdm, kStopAndGo, kCutIn, kCrossing };
std::string_view ToString(AgentPolicy policy);

// Straight road along +x with lanes at y = 0, 3.5, 7, ...; lane 0 is the
// ego's starting lane. Crossing agents drive along +y through x = cross_x.
inline constexpr double kLaneWidth = 3.5;

struct AgentScript {
  std::string id;
  AgentKind kind = AgentKind::kCar;
  double x = 0.0;  // longitudinal position relative to the ego start
  int lane = 0;
  double speed = 0.0;
  AgentPolicy policy = AgentPolicy::kConstant;
  IdmParams idm;
  // kCutIn: lane to move into and when.
  int target_lane = 0;
  double cut_in_time = 0.0;
  // kStopAndGo: cycle period; the first half cruises, the second half stops.
  double cycle = 16.0;
  // kCrossing: start offset before the crossing point along +y.
  double cross_x = 0.0;
  double cross_offset = 0.0;
};

struct ScenarioSpec {
  std::string name;
  ScenarioKind kind = ScenarioKind::kCarFollowing;
  RoadSection section = RoadSection::kUrbanRoad;
  double duration = 20.0;
  double dt = 0.1;
  std::uint64_t seed = 0;
  double ego_speed = 10.0;
  int ego_lane = 0;
  // Scripted agents. When empty, `agent_count` agents are laid out from the
  // scenario kind.
  std::vector<AgentScript> agents;
  std::size_t agent_count = 2;
  // Seeded uniform perturbation of initial positions (m) and speeds (m/s).
  double position_jitter = 0.0;
  double speed_jitter = 0.0;
  RoadContext road;

  void Validate() const;
};

// {"schema":"s2o.scenario/1","name":..,"kind":"car_following",
//  "section":"urban_road","duration":20,"dt":0.1,"seed":7,"ego_speed":12,
//  "ego_lane":0,"agent_count":2,"position_jitter":0,"speed_jitter":0,
//  "agents":[{"id":"lead","kind":"car","x":30,"lane":0,"speed":8,
//             "policy":"constant"}, ...]}
inline constexpr const char* kScenarioSchema = "s2o.scenario/1";
ScenarioSpec ParseScenarioSpec(std::istream& in);
ScenarioSpec ParseScenarioSpecFile(const std::string& path);
std::string WriteScenarioSpec(const ScenarioSpec& spec);

struct WorldAgent {
  AgentState state;
  AgentScript script;
  double lane_y = 0.0;  // current lateral target
};

struct World {
  ScenarioSpec spec;
  EgoState ego;
  double ego_lane_y = 0.0;
  std::vector<WorldAgent> agents;
};

// Deterministic in spec.seed. Throws ValidationError for an invalid spec and
// SimulationError when the jittered layout overlaps.
World GenerateScenario(const ScenarioSpec& spec);

enum class PlannerKind {
  kIdm,
  kConservative,  // long headway, large accepted gaps
  kAggressive,    // short headway, small accepted gaps
  kReckless,      // full throttle, never yields
  kScripted,      // acceleration from a callback
};
std::string_view ToString(PlannerKind kind);
bool ParsePlannerKind(std::string_view name, PlannerKind* out);

struct PlannerSpec {
  PlannerKind kind = PlannerKind::kIdm;
  IdmParams idm;
  // Desired speed as a multiple of the section limit when idm.desired_speed
  // is 0.
  double speed_factor = 1.0;
  // Lane changes: minimum free gap ahead of and behind the ego in the target
  // lane, and the leader speed (relative to desired) that triggers one.
  bool lane_changes = false;
  double accept_front = 40.0;
  double accept_rear = 30.0;
  double overtake_ratio = 0.85;
  // Crossing traffic must clear the conflict zone this long before the ego
  // arrives (or arrive this long after the ego has left).
  double accept_time_gap = 2.5;
  // Imperfect-driver perturbations on top of the car-following law: a
  // sinusoidal throttle wobble (m/s^2) and a lateral weave around the lane
  // center (m).
  double accel_wobble = 0.0;
  double accel_wobble_period = 6.0;
  double weave = 0.0;
  double weave_period = 8.0;
  double phase = 0.0;
  // kScripted: longitudinal acceleration at time t.
  std::function<double(double t, const EgoState& ego)> script;

  static PlannerSpec Named(PlannerKind kind);
};

// Forward-Euler point mass with heading. Stops at the first collision and
// marks the case crashed. Throws SimulationError when any speed exceeds
// 200 m/s.
DrivingCase RunClosedLoop(const World& world, const PlannerSpec& planner,
                          double dt, double duration);

// Same, with the spec's own dt and duration.
DrivingCase RunScenario(const ScenarioSpec& spec, const PlannerSpec& planner);

// The eight interactive test scenes.
std::vector<ScenarioSpec> StandardScenarios();

// A randomized scene for building synthetic corpora.
ScenarioSpec SampleScenarioSpec(std::uint64_t seed);
PlannerSpec SamplePlanner(std::uint64_t seed);

struct CorpusEntry {
  std::string id;
  TermScores raw;
  bool crash = false;
};

// `count` sampled scenes driven by sampled planners, scene i seeded with
// seed + i. Scenes whose random layout overlaps are resampled
// deterministically. Runs on all cores; the result does not depend on it.
std::vector<CorpusEntry> SimulateCorpus(std::size_t count, std::uint64_t seed,
                                        const EvaluationParams& params);

// Level boundaries implied by a weight table: a case is high when the high
// row scores above mid_upper, else mid when the mid row scores above
// low_upper.
LinearSvmModel BoundariesFromWeights(const SegmentWeights& w,
                                     const SegmentThresholds& t);

// Simulated raters: each rating is the segment's linear score under `truth`
// plus N(0, sigma) noise, clipped to [0, 100]. Crash cases get U[0, 20].
std::vector<RatedCase> SyntheticRatingOracle(
    std::span<const EvaluationReport> reports, const SegmentWeights& truth,
    double sigma, std::size_t raters, std::uint64_t seed);

}  // namespace s2o
