#include "s2o/harness.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"
#include "s2o/errors.h"
#include "s2o/geometry.h"

namespace s2o {

namespace {

using nlohmann::json;

constexpr double kMaxSpeed = 200.0;
constexpr double kMinAccel = -8.0;
constexpr double kMaxAccel = 4.0;
constexpr double kLaneChangeCooldown = 5.0;

constexpr std::array<std::string_view, 5> kScenarioNames = {
    "car_following", "overtake", "merge", "multi_agent", "intersection"};
constexpr std::array<std::string_view, 5> kPolicyNames = {
    "constant", "idm", "stop_and_go", "cut_in", "crossing"};
constexpr std::array<std::string_view, 5> kPlannerNames = {
    "idm", "conservative", "aggressive", "reckless", "scripted"};

template <typename Enum, std::size_t N>
Enum ParseName(const std::array<std::string_view, N>& names,
               const std::string& value, const char* what) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == value) return static_cast<Enum>(i);
  }
  throw ValidationError(std::string("unknown ") + what + " '" + value + "'");
}

void Footprint(AgentKind kind, double* length, double* width) {
  switch (kind) {
    case AgentKind::kTruck:
    case AgentKind::kBus:
      *length = 12.0;
      *width = 2.5;
      return;
    case AgentKind::kPedestrian:
      *length = 0.5;
      *width = 0.5;
      return;
    case AgentKind::kCyclist:
      *length = 1.8;
      *width = 0.6;
      return;
    case AgentKind::kCar:
      break;
  }
  *length = 4.5;
  *width = 1.8;
}

AgentScript Script(std::string id, double x, int lane, double speed,
                   AgentPolicy policy) {
  AgentScript s;
  s.id = std::move(id);
  s.x = x;
  s.lane = lane;
  s.speed = speed;
  s.policy = policy;
  return s;
}

// Layout used when a spec lists no agents explicitly.
std::vector<AgentScript> DefaultLayout(const ScenarioSpec& spec) {
  const double v = spec.ego_speed;
  const int lane = spec.ego_lane;
  const int side = lane + 1;
  std::vector<AgentScript> out;
  const std::size_t n = spec.agent_count;
  auto id = [&out] { return "a" + std::to_string(out.size() + 1); };
  switch (spec.kind) {
    case ScenarioKind::kCarFollowing:
      out.push_back(Script(id(), 35.0, lane, 0.7 * v, AgentPolicy::kConstant));
      while (out.size() < n) {
        const double x = -20.0 + 25.0 * static_cast<double>(out.size() - 1);
        out.push_back(Script(id(), x, side, v, AgentPolicy::kIdm));
      }
      break;
    case ScenarioKind::kOvertake:
      out.push_back(Script(id(), 40.0, lane, 0.6 * v, AgentPolicy::kConstant));
      while (out.size() < n) {
        const double x = -60.0 - 30.0 * static_cast<double>(out.size() - 1);
        out.push_back(Script(id(), x, side, 1.3 * v, AgentPolicy::kIdm));
      }
      break;
    case ScenarioKind::kMerge: {
      AgentScript cut = Script(id(), 15.0, side, v, AgentPolicy::kCutIn);
      cut.target_lane = lane;
      cut.cut_in_time = 3.0;
      out.push_back(cut);
      if (out.size() < n) {
        out.push_back(Script(id(), 45.0, lane, 0.9 * v, AgentPolicy::kIdm));
      }
      while (out.size() < n) {
        const double x = -25.0 * static_cast<double>(out.size() - 1);
        out.push_back(Script(id(), x, side, v, AgentPolicy::kConstant));
      }
      break;
    }
    case ScenarioKind::kMultiAgent: {
      const std::array<std::pair<double, int>, 4> slots = {
          {{30.0, lane}, {8.0, side}, {-18.0, side}, {-25.0, lane}}};
      for (std::size_t k = 0; k < n; ++k) {
        const auto& [x, l] = slots[k % slots.size()];
        const double shift = -50.0 * static_cast<double>(k / slots.size());
        AgentScript s = Script(id(), x + shift, l, v, AgentPolicy::kIdm);
        if (k == 0) s.policy = AgentPolicy::kStopAndGo;
        out.push_back(s);
      }
      break;
    }
    case ScenarioKind::kIntersection: {
      AgentScript cross = Script(id(), 0.0, lane, 0.8 * v, AgentPolicy::kCrossing);
      cross.cross_x = 45.0;
      cross.cross_offset = 45.0 / std::max(v, 1.0) * cross.speed;
      out.push_back(cross);
      while (out.size() < n) {
        const double x = 70.0 + 30.0 * static_cast<double>(out.size() - 1);
        out.push_back(Script(id(), x, lane, 0.5 * v, AgentPolicy::kConstant));
      }
      break;
    }
  }
  return out;
}

// Nearest body ahead of (x, y) within half a lane of `band_y` laterally,
// now or one second from now.
struct Neighbor {
  double gap = std::numeric_limits<double>::infinity();
  double speed = 0.0;
  bool found = false;
};

struct Body {
  const AgentState* state;
  bool crossing;
};

bool InBand(const AgentState& s, double band_y) {
  const double soon = s.y + s.speed * std::sin(s.heading);
  return std::abs(s.y - band_y) < 0.5 * kLaneWidth ||
         std::abs(soon - band_y) < 0.5 * kLaneWidth;
}

Neighbor FindAhead(const AgentState& self, double band_y,
                   const std::vector<Body>& bodies) {
  Neighbor n;
  for (const Body& b : bodies) {
    if (b.state == &self || b.crossing) continue;
    if (!InBand(*b.state, band_y)) continue;
    const double dx = b.state->x - self.x;
    if (dx <= 0.0) continue;
    const double gap = dx - 0.5 * (self.length + b.state->length);
    if (gap < n.gap) {
      n.gap = gap;
      n.speed = b.state->speed * std::cos(b.state->heading);
      n.found = true;
    }
  }
  return n;
}

Neighbor FindBehind(const AgentState& self, double band_y,
                    const std::vector<Body>& bodies) {
  Neighbor n;
  for (const Body& b : bodies) {
    if (b.state == &self || b.crossing) continue;
    if (std::abs(b.state->y - band_y) >= 0.5 * kLaneWidth) continue;
    const double dx = self.x - b.state->x;
    if (dx < 0.0) continue;
    const double gap = dx - 0.5 * (self.length + b.state->length);
    if (gap < n.gap) {
      n.gap = gap;
      n.speed = b.state->speed * std::cos(b.state->heading);
      n.found = true;
    }
  }
  return n;
}

double FollowAccel(const AgentState& self, const Neighbor& lead,
                   const IdmParams& p) {
  if (!lead.found) return IdmAccel(self.speed, 1e6, 0.0, p);
  return IdmAccel(self.speed, std::max(lead.gap, 0.05),
                  self.speed - lead.speed, p);
}

// Heading-rate command steering toward the lane center `lane_y`.
double LaneKeepYawRate(const AgentState& s, double lane_y) {
  const double ey = lane_y - s.y;
  const double target =
      std::clamp(std::atan(0.6 * ey / std::max(s.speed, 1.0)), -0.25, 0.25);
  return std::clamp((target - s.heading) / 0.4, -0.6, 0.6);
}

void Advance(AgentState& s, double accel, double yaw_rate, double dt) {
  accel = std::clamp(accel, kMinAccel, kMaxAccel);
  const double v = s.speed;
  const double h = s.heading;
  s.x += v * std::cos(h) * dt;
  s.y += v * std::sin(h) * dt;
  s.heading = h + yaw_rate * dt;
  s.speed = std::max(0.0, v + accel * dt);
  s.v_long = s.speed;
}

// Whether the ego should hold at the stop line for a crossing agent.
bool MustYield(const EgoState& ego, const AgentState& cross, double cross_x,
               double time_gap) {
  const double half_zone = 0.5 * (cross.width + ego.length) + 1.0;
  const double to_entry = cross_x - half_zone - ego.x;
  if (to_entry <= 0.0) return false;  // already committed
  const double ego_speed = std::max(ego.speed, 0.5);
  const double ego_arrive = to_entry / ego_speed;
  const double ego_leave = (to_entry + 2.0 * half_zone) / ego_speed;

  const double lane_half = 0.5 * (cross.length + ego.width) + 1.0;
  const double agent_to_entry = (ego.y - lane_half) - cross.y;
  const double agent_to_exit = (ego.y + lane_half) - cross.y;
  if (agent_to_exit <= 0.0) return false;  // already through
  const double agent_speed = std::max(cross.speed, 0.1);
  const double agent_arrive = std::max(agent_to_entry, 0.0) / agent_speed;
  const double agent_leave = agent_to_exit / agent_speed;

  if (agent_leave + time_gap <= ego_arrive) return false;
  if (ego_leave + time_gap <= agent_arrive) return false;
  return true;
}

std::string Diagnostic(const std::string& who, double speed, double t) {
  std::ostringstream os;
  os << "numerical blow-up: speed " << speed << " m/s of '" << who
     << "' at t = " << t << " s";
  return os.str();
}

}  // namespace

std::string_view ToString(ScenarioKind kind) {
  return kScenarioNames[static_cast<std::size_t>(kind)];
}
std::string_view ToString(AgentPolicy policy) {
  return kPolicyNames[static_cast<std::size_t>(policy)];
}
std::string_view ToString(PlannerKind kind) {
  return kPlannerNames[static_cast<std::size_t>(kind)];
}

bool ParsePlannerKind(std::string_view name, PlannerKind* out) {
  for (std::size_t i = 0; i < kPlannerNames.size(); ++i) {
    if (kPlannerNames[i] == name) {
      *out = static_cast<PlannerKind>(i);
      return true;
    }
  }
  return false;
}

void ScenarioSpec::Validate() const {
  if (!(duration > 0.0)) throw ValidationError("scenario duration must be > 0");
  if (!(dt > 0.0) || dt > duration) {
    throw ValidationError("scenario dt must be in (0, duration]");
  }
  if (agents.empty() && agent_count < 1) {
    throw ValidationError("scenario needs at least one agent");
  }
  if (!(ego_speed >= 0.0) || ego_speed > kMaxSpeed) {
    throw ValidationError("ego speed out of range");
  }
  if (ego_lane < 0) throw ValidationError("lane index must be >= 0");
  if (!(position_jitter >= 0.0) || !(speed_jitter >= 0.0)) {
    throw ValidationError("jitter must be >= 0");
  }
  for (const AgentScript& a : agents) {
    if (a.lane < 0 || a.target_lane < 0) {
      throw ValidationError("lane index must be >= 0");
    }
    if (!(a.speed >= 0.0) || !std::isfinite(a.x)) {
      throw ValidationError("agent '" + a.id + "' has an invalid initial state");
    }
    if (a.policy == AgentPolicy::kStopAndGo && !(a.cycle > 0.0)) {
      throw ValidationError("stop-and-go cycle must be > 0");
    }
    if (a.policy == AgentPolicy::kIdm) a.idm.Validate();
  }
  road.Validate();
}

World GenerateScenario(const ScenarioSpec& spec) {
  spec.Validate();
  World world;
  world.spec = spec;
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  std::vector<AgentScript> scripts =
      spec.agents.empty() ? DefaultLayout(spec) : spec.agents;

  EgoState& ego = world.ego;
  ego.id = "ego";
  ego.x = 0.0;
  ego.y = spec.ego_lane * kLaneWidth;
  ego.speed = std::max(0.0, spec.ego_speed + spec.speed_jitter * unit(rng));
  ego.v_long = ego.speed;
  ego.section = spec.section;
  world.ego_lane_y = ego.y;

  for (AgentScript& s : scripts) {
    const double dx = spec.position_jitter * unit(rng);
    const double dv = spec.speed_jitter * unit(rng);
    WorldAgent a;
    a.script = s;
    a.state.id = s.id;
    a.state.kind = s.kind;
    Footprint(s.kind, &a.state.length, &a.state.width);
    a.state.mass = DefaultMass(s.kind);
    a.state.speed = std::max(0.0, s.speed + dv);
    a.state.v_long = a.state.speed;
    if (s.policy == AgentPolicy::kCrossing) {
      a.state.x = s.cross_x;
      a.state.y = ego.y - s.cross_offset + dx;
      a.state.heading = std::numbers::pi / 2.0;
      a.lane_y = a.state.y;
    } else {
      a.state.x = s.x + dx;
      a.state.y = s.lane * kLaneWidth;
      a.lane_y = a.state.y;
    }
    world.agents.push_back(std::move(a));
  }

  for (std::size_t i = 0; i < world.agents.size(); ++i) {
    const AgentState& a = world.agents[i].state;
    if (a.id.empty() || a.id == ego.id) {
      throw ValidationError("agent ids must be non-empty and not 'ego'");
    }
    if (BoxesOverlap(ego, a)) {
      throw SimulationError("unsatisfiable placement: '" + a.id +
                            "' overlaps the ego");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const AgentState& b = world.agents[j].state;
      if (a.id == b.id) throw ValidationError("duplicate agent id '" + a.id + "'");
      if (BoxesOverlap(a, b)) {
        throw SimulationError("unsatisfiable placement: '" + a.id +
                              "' overlaps '" + b.id + "'");
      }
    }
  }
  return world;
}

PlannerSpec PlannerSpec::Named(PlannerKind kind) {
  PlannerSpec p;
  p.kind = kind;
  switch (kind) {
    case PlannerKind::kConservative:
      p.idm.time_headway = 2.2;
      p.idm.min_gap = 4.0;
      p.idm.max_accel = 1.0;
      p.idm.comfort_decel = 1.5;
      p.speed_factor = 0.9;
      p.lane_changes = true;
      p.accept_front = 40.0;
      p.accept_rear = 30.0;
      p.overtake_ratio = 0.8;
      p.accept_time_gap = 4.0;
      break;
    case PlannerKind::kAggressive:
      p.idm.time_headway = 0.8;
      p.idm.min_gap = 1.0;
      p.idm.max_accel = 3.0;
      p.idm.comfort_decel = 4.0;
      p.speed_factor = 1.15;
      p.lane_changes = true;
      p.accept_front = 12.0;
      p.accept_rear = 6.0;
      p.overtake_ratio = 0.97;
      p.accept_time_gap = 1.0;
      break;
    case PlannerKind::kIdm:
    case PlannerKind::kReckless:
    case PlannerKind::kScripted:
      break;
  }
  return p;
}

DrivingCase RunClosedLoop(const World& world, const PlannerSpec& planner,
                          double dt, double duration) {
  if (!(dt > 0.0) || !(duration > 0.0)) {
    throw ValidationError("closed loop needs dt > 0 and duration > 0");
  }
  if (planner.kind == PlannerKind::kScripted && !planner.script) {
    throw ValidationError("scripted planner without a script");
  }
  const ScenarioSpec& spec = world.spec;
  const double limit = spec.road.SpeedLimit(spec.section);
  IdmParams ego_idm = planner.idm;
  if (ego_idm.desired_speed == 0.0) {
    ego_idm.desired_speed = planner.speed_factor * limit;
  }
  ego_idm.Validate();

  DrivingCase out;
  out.meta.scenario_id = spec.name;
  out.meta.driver_id = std::string(ToString(planner.kind));
  out.meta.dt = dt;
  out.road = spec.road;

  EgoState ego = world.ego;
  double ego_lane_y = world.ego_lane_y;
  double last_lane_change = -kLaneChangeCooldown;
  std::vector<WorldAgent> agents = world.agents;
  std::vector<IdmParams> agent_idm;
  for (const WorldAgent& a : agents) {
    IdmParams p = a.script.idm;
    if (p.desired_speed == 0.0) p.desired_speed = std::max(a.script.speed, 1.0);
    agent_idm.push_back(p);
  }

  const auto steps = static_cast<std::size_t>(std::floor(duration / dt + 1e-9));
  std::vector<double> accel(agents.size());
  std::vector<double> yaw(agents.size());

  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    SceneFrame frame;
    frame.t = t;
    frame.ego = ego;
    for (const WorldAgent& a : agents) frame.agents.push_back(a.state);
    const bool hit = FrameHasCollision(frame);
    out.frames.push_back(std::move(frame));
    if (hit) {
      out.crash = true;
      break;
    }
    if (k == steps) break;

    std::vector<Body> bodies;
    bodies.push_back({&ego, false});
    for (const WorldAgent& a : agents) {
      bodies.push_back({&a.state, a.script.policy == AgentPolicy::kCrossing});
    }

    // Surrounding traffic.
    for (std::size_t i = 0; i < agents.size(); ++i) {
      WorldAgent& a = agents[i];
      const AgentScript& s = a.script;
      accel[i] = 0.0;
      switch (s.policy) {
        case AgentPolicy::kConstant:
        case AgentPolicy::kCrossing:
          break;
        case AgentPolicy::kIdm:
          accel[i] = FollowAccel(a.state, FindAhead(a.state, a.lane_y, bodies),
                                 agent_idm[i]);
          break;
        case AgentPolicy::kStopAndGo: {
          const double phase = std::fmod(t, s.cycle);
          const double target = phase < 0.5 * s.cycle ? s.speed : 0.0;
          accel[i] = std::clamp(0.8 * (target - a.state.speed), -2.5, 1.5);
          break;
        }
        case AgentPolicy::kCutIn: {
          const double target_y = s.target_lane * kLaneWidth;
          if (t >= s.cut_in_time && a.lane_y != target_y) {
            // Merges once the target lane has room; keeps its lane otherwise.
            const Neighbor rear = FindBehind(a.state, target_y, bodies);
            const Neighbor front = FindAhead(a.state, target_y, bodies);
            const double rear_need =
                6.0 + 1.5 * std::max(0.0, rear.speed - a.state.speed);
            if ((!rear.found || rear.gap >= rear_need) &&
                (!front.found || front.gap >= 4.0)) {
              a.lane_y = target_y;
            }
          }
          break;
        }
      }
      yaw[i] = s.policy == AgentPolicy::kCrossing
                   ? 0.0
                   : LaneKeepYawRate(a.state, a.lane_y);
    }

    // Ego.
    double ego_accel = 0.0;
    switch (planner.kind) {
      case PlannerKind::kScripted:
        ego_accel = planner.script(t, ego);
        break;
      case PlannerKind::kReckless:
        ego_accel = ego.speed < 1.5 * limit ? 3.0 : 0.0;
        break;
      case PlannerKind::kIdm:
      case PlannerKind::kConservative:
      case PlannerKind::kAggressive: {
        Neighbor lead = FindAhead(ego, ego_lane_y, bodies);
        const Neighbor here = FindAhead(ego, ego.y, bodies);
        if (here.found && here.gap < lead.gap) lead = here;
        if (planner.lane_changes && lead.found && lead.gap < 60.0 &&
            lead.speed < planner.overtake_ratio * ego_idm.desired_speed &&
            t - last_lane_change >= kLaneChangeCooldown &&
            std::abs(ego.y - ego_lane_y) < 0.3) {
          const int current =
              static_cast<int>(std::lround(ego_lane_y / kLaneWidth));
          for (int target : {current + 1, current - 1}) {
            if (target < 0 || target > 2) continue;
            const double y = target * kLaneWidth;
            const Neighbor front = FindAhead(ego, y, bodies);
            const Neighbor rear = FindBehind(ego, y, bodies);
            const double rear_need =
                planner.accept_rear +
                (rear.found ? std::max(0.0, rear.speed - ego.speed) *
                                  planner.idm.time_headway
                            : 0.0);
            if ((!front.found || front.gap >= planner.accept_front) &&
                (!rear.found || rear.gap >= rear_need)) {
              ego_lane_y = y;
              last_lane_change = t;
              break;
            }
          }
        }
        ego_accel = FollowAccel(ego, lead, ego_idm);
        if (planner.accel_wobble > 0.0) {
          ego_accel += planner.accel_wobble *
                       std::sin(2.0 * std::numbers::pi * t /
                                    planner.accel_wobble_period +
                                planner.phase);
        }
        for (const WorldAgent& a : agents) {
          if (a.script.policy != AgentPolicy::kCrossing) continue;
          if (!MustYield(ego, a.state, a.script.cross_x,
                         planner.accept_time_gap)) {
            continue;
          }
          Neighbor stop;
          stop.found = true;
          stop.speed = 0.0;
          stop.gap = a.script.cross_x - 0.5 * a.state.width - 3.0 - ego.x -
                     0.5 * ego.length;
          ego_accel = std::min(ego_accel, FollowAccel(ego, stop, ego_idm));
        }
        break;
      }
    }
    double weave = 0.0;
    if (planner.weave > 0.0 && planner.kind != PlannerKind::kScripted) {
      weave = planner.weave *
              std::sin(2.0 * std::numbers::pi * t / planner.weave_period +
                       planner.phase);
    }
    const double ego_yaw = LaneKeepYawRate(ego, ego_lane_y + weave);

    Advance(ego, ego_accel, ego_yaw, dt);
    if (!std::isfinite(ego.speed) || ego.speed > kMaxSpeed) {
      throw SimulationError(Diagnostic(ego.id, ego.speed, t + dt));
    }
    for (std::size_t i = 0; i < agents.size(); ++i) {
      Advance(agents[i].state, accel[i], yaw[i], dt);
      if (!std::isfinite(agents[i].state.speed) ||
          agents[i].state.speed > kMaxSpeed) {
        throw SimulationError(
            Diagnostic(agents[i].state.id, agents[i].state.speed, t + dt));
      }
    }
  }
  return out;
}

DrivingCase RunScenario(const ScenarioSpec& spec, const PlannerSpec& planner) {
  return RunClosedLoop(GenerateScenario(spec), planner, spec.dt, spec.duration);
}

std::vector<ScenarioSpec> StandardScenarios() {
  std::vector<ScenarioSpec> out;
  auto make = [&out](std::string name, ScenarioKind kind, RoadSection section,
                     double ego_speed, std::vector<AgentScript> agents) {
    ScenarioSpec s;
    s.name = std::move(name);
    s.kind = kind;
    s.section = section;
    s.duration = 25.0;
    s.dt = 0.1;
    s.seed = out.size() + 1;
    s.ego_speed = ego_speed;
    s.agents = std::move(agents);
    s.agent_count = s.agents.size();
    out.push_back(std::move(s));
  };
  using P = AgentPolicy;

  make("car_follow_slow_leader", ScenarioKind::kCarFollowing,
       RoadSection::kUrbanRoad, 14.0,
       {Script("lead", 35.0, 0, 8.0, P::kConstant),
        Script("side", -15.0, 1, 12.0, P::kIdm)});

  AgentScript sg = Script("lead", 40.0, 0, 16.0, P::kStopAndGo);
  sg.cycle = 20.0;
  make("stop_and_go", ScenarioKind::kCarFollowing, RoadSection::kHighwaySlow,
       18.0, {sg, Script("side", 20.0, 1, 18.0, P::kConstant)});

  AgentScript truck = Script("truck", 60.0, 0, 15.0, P::kConstant);
  truck.kind = AgentKind::kTruck;
  make("overtake_slow_truck", ScenarioKind::kOvertake,
       RoadSection::kHighwayExpress, 25.0,
       {truck, Script("far", 150.0, 1, 30.0, P::kConstant)});

  make("overtake_fast_rear", ScenarioKind::kOvertake,
       RoadSection::kHighwayExpress, 25.0,
       {Script("lead", 50.0, 0, 17.0, P::kConstant),
        Script("fast", -60.0, 1, 36.0, P::kIdm)});

  AgentScript cut = Script("cutter", 12.0, 1, 18.0, P::kCutIn);
  cut.target_lane = 0;
  cut.cut_in_time = 3.0;
  make("cut_in_merge", ScenarioKind::kMerge, RoadSection::kHighwaySlow, 20.0,
       {cut, Script("lead", 60.0, 0, 19.0, P::kIdm)});

  AgentScript dense_lead = Script("lead", 25.0, 0, 10.0, P::kStopAndGo);
  dense_lead.cycle = 14.0;
  make("dense_multi_agent", ScenarioKind::kMultiAgent, RoadSection::kUrbanRoad,
       12.0,
       {dense_lead, Script("left_front", 8.0, 1, 13.0, P::kIdm),
        Script("left_rear", -18.0, 1, 13.0, P::kIdm),
        Script("follower", -20.0, 0, 12.0, P::kIdm)});

  AgentScript cross = Script("crossing", 0.0, 0, 7.0, P::kCrossing);
  cross.cross_x = 45.0;
  cross.cross_offset = 38.0;
  AgentScript cyclist = Script("cyclist", 70.0, 0, 4.0, P::kConstant);
  cyclist.kind = AgentKind::kCyclist;
  make("urban_intersection", ScenarioKind::kIntersection,
       RoadSection::kUrbanIntersection, 8.0, {cross, cyclist});

  make("three_fast_overtakers", ScenarioKind::kOvertake,
       RoadSection::kHighwayExpress, 24.0,
       {Script("lead", 70.0, 0, 20.0, P::kConstant),
        Script("fast1", -40.0, 1, 34.0, P::kIdm),
        Script("fast2", -70.0, 1, 34.0, P::kIdm),
        Script("fast3", -100.0, 1, 34.0, P::kIdm)});
  return out;
}

ScenarioSpec SampleScenarioSpec(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto pick = [&rng](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  ScenarioSpec s;
  s.kind = static_cast<ScenarioKind>(pick(kScenarioNames.size()));
  s.section = s.kind == ScenarioKind::kIntersection
                  ? static_cast<RoadSection>(pick(2))
                  : static_cast<RoadSection>(pick(kNumRoadSections));
  s.name = std::string(ToString(s.kind)) + "_" + std::to_string(seed);
  s.seed = seed;
  s.duration = 15.0 + 15.0 * u(rng);
  s.dt = 0.1;
  s.ego_speed = (0.4 + 0.6 * u(rng)) * s.road.SpeedLimit(s.section);
  s.agent_count = 1 + pick(4);
  s.position_jitter = 5.0;
  s.speed_jitter = 2.0;
  return s;
}

PlannerSpec SamplePlanner(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::array<PlannerKind, 3> kinds = {
      PlannerKind::kIdm, PlannerKind::kConservative, PlannerKind::kAggressive};
  PlannerSpec p = PlannerSpec::Named(
      kinds[std::uniform_int_distribution<std::size_t>(0, 2)(rng)]);
  p.idm.time_headway = 0.8 + 1.7 * u(rng);
  p.idm.min_gap = 1.0 + 3.0 * u(rng);
  p.idm.max_accel = 0.8 + 2.2 * u(rng);
  p.idm.comfort_decel = 1.5 + 2.5 * u(rng);
  p.speed_factor = 0.6 + 0.6 * u(rng);
  p.accel_wobble = 2.0 * u(rng);
  p.accel_wobble_period = 3.0 + 7.0 * u(rng);
  p.weave = 0.6 * u(rng);
  p.weave_period = 4.0 + 8.0 * u(rng);
  p.phase = 2.0 * std::numbers::pi * u(rng);
  return p;
}

ScenarioSpec ParseScenarioSpec(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed scenario: ") + e.what(), 0);
  }
  if (j.value("schema", std::string()) != kScenarioSchema) {
    throw ParseError("scenario schema must be " + std::string(kScenarioSchema),
                     0);
  }
  ScenarioSpec s;
  try {
    s.name = j.value("name", std::string());
    s.kind = ParseName<ScenarioKind>(kScenarioNames,
                                     j.value("kind", "car_following"),
                                     "scenario kind");
    const auto section = ParseRoadSection(j.value("section", "urban_road"));
    if (!section) throw ValidationError("unknown road section");
    s.section = *section;
    s.duration = j.value("duration", s.duration);
    s.dt = j.value("dt", s.dt);
    s.seed = j.value("seed", s.seed);
    s.ego_speed = j.value("ego_speed", s.ego_speed);
    s.ego_lane = j.value("ego_lane", s.ego_lane);
    s.agent_count = j.value("agent_count", s.agent_count);
    s.position_jitter = j.value("position_jitter", s.position_jitter);
    s.speed_jitter = j.value("speed_jitter", s.speed_jitter);
    for (const json& a : j.value("agents", json::array())) {
      AgentScript as;
      as.id = a.at("id").get<std::string>();
      const auto kind = ParseAgentKind(a.value("kind", "car"));
      if (!kind) throw ValidationError("unknown agent kind");
      as.kind = *kind;
      as.x = a.value("x", 0.0);
      as.lane = a.value("lane", 0);
      as.speed = a.value("speed", 0.0);
      as.policy = ParseName<AgentPolicy>(kPolicyNames,
                                         a.value("policy", "constant"),
                                         "agent policy");
      as.target_lane = a.value("target_lane", as.lane);
      as.cut_in_time = a.value("cut_in_time", 0.0);
      as.cycle = a.value("cycle", as.cycle);
      as.cross_x = a.value("cross_x", 0.0);
      as.cross_offset = a.value("cross_offset", 0.0);
      if (a.contains("idm")) {
        const json& p = a["idm"];
        as.idm.desired_speed = p.value("desired_speed", as.idm.desired_speed);
        as.idm.time_headway = p.value("time_headway", as.idm.time_headway);
        as.idm.min_gap = p.value("min_gap", as.idm.min_gap);
        as.idm.max_accel = p.value("max_accel", as.idm.max_accel);
        as.idm.comfort_decel = p.value("comfort_decel", as.idm.comfort_decel);
      }
      s.agents.push_back(std::move(as));
    }
    if (!s.agents.empty()) s.agent_count = s.agents.size();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad scenario field: ") + e.what(), 0);
  }
  s.Validate();
  return s;
}

ScenarioSpec ParseScenarioSpecFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario '" + path + "'");
  return ParseScenarioSpec(in);
}

std::string WriteScenarioSpec(const ScenarioSpec& s) {
  json agents = json::array();
  for (const AgentScript& a : s.agents) {
    agents.push_back({{"id", a.id},
                      {"kind", ToString(a.kind)},
                      {"x", a.x},
                      {"lane", a.lane},
                      {"speed", a.speed},
                      {"policy", ToString(a.policy)},
                      {"target_lane", a.target_lane},
                      {"cut_in_time", a.cut_in_time},
                      {"cycle", a.cycle},
                      {"cross_x", a.cross_x},
                      {"cross_offset", a.cross_offset},
                      {"idm",
                       {{"desired_speed", a.idm.desired_speed},
                        {"time_headway", a.idm.time_headway},
                        {"min_gap", a.idm.min_gap},
                        {"max_accel", a.idm.max_accel},
                        {"comfort_decel", a.idm.comfort_decel}}}});
  }
  json j = {{"schema", kScenarioSchema},
            {"name", s.name},
            {"kind", ToString(s.kind)},
            {"section", ToString(s.section)},
            {"duration", s.duration},
            {"dt", s.dt},
            {"seed", s.seed},
            {"ego_speed", s.ego_speed},
            {"ego_lane", s.ego_lane},
            {"agent_count", s.agent_count},
            {"position_jitter", s.position_jitter},
            {"speed_jitter", s.speed_jitter},
            {"agents", agents}};
  return j.dump(2);
}

}  // namespace s2o
