#include "s2o/case_log.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "s2o/errors.h"

namespace s2o {

namespace {

using nlohmann::json;

double RequireNumber(const json& obj, const char* key, std::size_t line_no,
                     const char* where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) {
    throw ParseError(std::string(where) + ": missing numeric field '" + key +
                         "'",
                     line_no);
  }
  return it->get<double>();
}

double OptionalNumber(const json& obj, const char* key, double fallback,
                      std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_number()) {
    throw ParseError(std::string("field '") + key + "' must be numeric",
                     line_no);
  }
  return it->get<double>();
}

json ParseJsonLine(std::string_view line, std::size_t line_no) {
  try {
    json j = json::parse(line.begin(), line.end());
    if (!j.is_object()) throw ParseError("record is not an object", line_no);
    return j;
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
  }
}

AgentState ParseAgent(const json& j, std::size_t line_no) {
  if (!j.is_object()) throw ParseError("agent is not an object", line_no);
  AgentState a;
  auto id = j.find("id");
  if (id == j.end()) throw ParseError("agent missing 'id'", line_no);
  a.id = id->is_string() ? id->get<std::string>() : id->dump();
  auto kind = j.find("kind");
  if (kind != j.end()) {
    if (!kind->is_string()) throw ParseError("agent 'kind' not a string", line_no);
    auto parsed = ParseAgentKind(kind->get<std::string>());
    if (!parsed) {
      throw ParseError("unknown agent kind '" + kind->get<std::string>() + "'",
                       line_no);
    }
    a.kind = *parsed;
  }
  a.x = RequireNumber(j, "x", line_no, "agent");
  a.y = RequireNumber(j, "y", line_no, "agent");
  a.heading = RequireNumber(j, "heading", line_no, "agent");
  a.speed = RequireNumber(j, "speed", line_no, "agent");
  a.v_long = OptionalNumber(j, "v_long", a.speed, line_no);
  a.length = RequireNumber(j, "length", line_no, "agent");
  a.width = RequireNumber(j, "width", line_no, "agent");
  a.mass = OptionalNumber(j, "mass", DefaultMass(a.kind), line_no);
  return a;
}

json AgentToJson(const AgentState& a) {
  json j = {{"id", a.id},         {"kind", ToString(a.kind)},
            {"x", a.x},           {"y", a.y},
            {"heading", a.heading}, {"speed", a.speed},
            {"length", a.length}, {"width", a.width},
            {"mass", a.mass}};
  if (a.v_long != a.speed) j["v_long"] = a.v_long;
  return j;
}

json RoadToJson(const RoadContext& road) {
  json limits = json::object();
  for (std::size_t i = 0; i < kNumRoadSections; ++i) {
    limits[std::string(ToString(static_cast<RoadSection>(i)))] =
        road.speed_limit_kmh[i];
  }
  return {{"speed_limits_kmh", limits},
          {"gradient", road.gradient},
          {"rolling_coeff", road.rolling_coeff}};
}

double Lerp(double a, double b, double alpha) { return a + (b - a) * alpha; }

double LerpAngle(double a, double b, double alpha) {
  return WrapAngle(a + WrapAngle(b - a) * alpha);
}

void LerpAgent(const AgentState& a, const AgentState& b, double alpha,
               AgentState* out) {
  out->x = Lerp(a.x, b.x, alpha);
  out->y = Lerp(a.y, b.y, alpha);
  out->heading = LerpAngle(a.heading, b.heading, alpha);
  out->speed = Lerp(a.speed, b.speed, alpha);
  out->v_long = Lerp(a.v_long, b.v_long, alpha);
}

}  // namespace

bool IsCaseHeaderLine(std::string_view line) {
  return line.find("\"schema\"") != std::string_view::npos;
}

void ParseCaseHeader(std::string_view line, std::size_t line_no,
                     DrivingCase* into) {
  json j = ParseJsonLine(line, line_no);
  auto schema = j.find("schema");
  if (schema == j.end() || !schema->is_string()) {
    throw ParseError("header missing 'schema'", line_no);
  }
  if (schema->get<std::string>() != kCaseSchema) {
    throw ParseError("unsupported case schema '" +
                         schema->get<std::string>() + "'",
                     line_no);
  }
  into->meta.scenario_id = j.value("scenario", std::string());
  into->meta.driver_id = j.value("driver", std::string());
  into->crash = j.value("crash", false);
  auto road = j.find("road");
  if (road != j.end()) {
    if (!road->is_object()) throw ParseError("'road' not an object", line_no);
    auto limits = road->find("speed_limits_kmh");
    if (limits != road->end()) {
      for (auto& [name, value] : limits->items()) {
        auto section = ParseRoadSection(name);
        if (!section) {
          throw ParseError("unknown road section '" + name + "'", line_no);
        }
        if (!value.is_number()) {
          throw ParseError("speed limit must be numeric", line_no);
        }
        into->road.speed_limit_kmh[static_cast<std::size_t>(*section)] =
            value.get<double>();
      }
    }
    into->road.gradient =
        OptionalNumber(*road, "gradient", into->road.gradient, line_no);
    into->road.rolling_coeff =
        OptionalNumber(*road, "rolling_coeff", into->road.rolling_coeff,
                       line_no);
  }
}

SceneFrame ParseFrameLine(std::string_view line, std::size_t line_no,
                          double default_ego_mass) {
  json j = ParseJsonLine(line, line_no);
  SceneFrame frame;
  frame.t = RequireNumber(j, "t", line_no, "frame");
  auto ego = j.find("ego");
  if (ego == j.end() || !ego->is_object()) {
    throw ParseError("frame missing 'ego' object", line_no);
  }
  EgoState& e = frame.ego;
  e.id = "ego";
  e.x = RequireNumber(*ego, "x", line_no, "ego");
  e.y = RequireNumber(*ego, "y", line_no, "ego");
  e.heading = RequireNumber(*ego, "heading", line_no, "ego");
  e.speed = OptionalNumber(*ego, "speed",
                           std::numeric_limits<double>::quiet_NaN(), line_no);
  e.v_long = e.speed;
  e.length = RequireNumber(*ego, "length", line_no, "ego");
  e.width = RequireNumber(*ego, "width", line_no, "ego");
  e.mass = OptionalNumber(*ego, "mass", default_ego_mass, line_no);
  auto section = ego->find("section");
  if (section != ego->end()) {
    if (!section->is_string()) throw ParseError("'section' not a string", line_no);
    auto parsed = ParseRoadSection(section->get<std::string>());
    if (!parsed) {
      throw ParseError(
          "unknown road section '" + section->get<std::string>() + "'",
          line_no);
    }
    e.section = *parsed;
  }
  auto agents = j.find("agents");
  if (agents != j.end()) {
    if (!agents->is_array()) throw ParseError("'agents' not an array", line_no);
    frame.agents.reserve(agents->size());
    for (const json& a : *agents) frame.agents.push_back(ParseAgent(a, line_no));
  }
  return frame;
}

DrivingCase ParseCase(std::istream& in, const CaseParseOptions& options) {
  DrivingCase c;
  c.road = options.default_road;
  std::string line;
  std::size_t line_no = 0;
  bool first_record = true;
  while (std::getline(in, line)) {
    ++line_no;
    auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::string_view view(line);
    view.remove_prefix(start);
    if (first_record && IsCaseHeaderLine(view)) {
      ParseCaseHeader(view, line_no, &c);
      first_record = false;
      continue;
    }
    first_record = false;
    c.frames.push_back(ParseFrameLine(view, line_no, options.default_ego_mass));
  }
  c.Validate();

  const double median = MedianTimeStep(c);
  c.meta.dt = median;
  double target = options.quadrature_dt;
  if (!(target > 0.0)) {
    double worst = 0.0;
    for (std::size_t i = 1; i < c.frames.size(); ++i) {
      worst = std::max(worst, std::abs((c.frames[i].t - c.frames[i - 1].t) -
                                       median));
    }
    if (worst > options.resample_tolerance * median) target = median;
  }
  if (target > 0.0) c = ResampleUniform(c, target);
  return c;
}

DrivingCase ParseCaseString(std::string_view text,
                            const CaseParseOptions& options) {
  std::istringstream in{std::string(text)};
  return ParseCase(in, options);
}

DrivingCase ParseCaseFile(const std::string& path,
                          const CaseParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open case file '" + path + "'");
  return ParseCase(in, options);
}

std::string FrameToLine(const SceneFrame& frame) {
  const EgoState& e = frame.ego;
  json ego = {{"x", e.x},         {"y", e.y},
              {"heading", e.heading}, {"length", e.length},
              {"width", e.width}, {"mass", e.mass},
              {"section", ToString(e.section)}};
  if (std::isfinite(e.speed)) ego["speed"] = e.speed;
  json agents = json::array();
  for (const AgentState& a : frame.agents) agents.push_back(AgentToJson(a));
  json j = {{"t", frame.t}, {"ego", ego}, {"agents", agents}};
  return j.dump();
}

void WriteCase(const DrivingCase& c, std::ostream& out) {
  json header = {{"schema", kCaseSchema},
                 {"scenario", c.meta.scenario_id},
                 {"driver", c.meta.driver_id},
                 {"crash", c.crash},
                 {"road", RoadToJson(c.road)}};
  out << header.dump() << '\n';
  for (const SceneFrame& frame : c.frames) out << FrameToLine(frame) << '\n';
}

std::string WriteCaseString(const DrivingCase& c) {
  std::ostringstream out;
  WriteCase(c, out);
  return out.str();
}

double MedianTimeStep(const DrivingCase& c) {
  std::vector<double> gaps;
  gaps.reserve(c.frames.size());
  for (std::size_t i = 1; i < c.frames.size(); ++i) {
    gaps.push_back(c.frames[i].t - c.frames[i - 1].t);
  }
  if (gaps.empty()) throw ValidationError("fewer than 2 frames");
  std::sort(gaps.begin(), gaps.end());
  const std::size_t n = gaps.size();
  return n % 2 == 1 ? gaps[n / 2] : 0.5 * (gaps[n / 2 - 1] + gaps[n / 2]);
}

DrivingCase ResampleUniform(const DrivingCase& c, double dt) {
  if (!(dt > 0.0)) throw DomainError("resampling period must be positive");
  c.Validate();
  const double t0 = c.StartTime();
  const double duration = c.Duration();
  const auto steps =
      static_cast<std::size_t>(std::max(1.0, std::round(duration / dt)));
  const double step = duration / static_cast<double>(steps);

  DrivingCase out;
  out.crash = c.crash;
  out.meta = c.meta;
  out.meta.dt = step;
  out.road = c.road;
  out.frames.reserve(steps + 1);

  std::size_t seg = 0;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t =
        k == steps ? c.EndTime() : t0 + static_cast<double>(k) * step;
    while (seg + 2 < c.frames.size() && c.frames[seg + 1].t <= t) ++seg;
    const SceneFrame& a = c.frames[seg];
    const SceneFrame& b = c.frames[seg + 1];
    const double alpha = std::clamp((t - a.t) / (b.t - a.t), 0.0, 1.0);
    const SceneFrame& nearest = alpha < 0.5 ? a : b;

    SceneFrame f;
    f.t = t;
    f.ego = nearest.ego;
    LerpAgent(a.ego, b.ego, alpha, &f.ego);

    std::unordered_map<std::string_view, const AgentState*> in_b;
    for (const AgentState& agent : b.agents) in_b.emplace(agent.id, &agent);
    for (const AgentState& agent : a.agents) {
      auto it = in_b.find(agent.id);
      if (it != in_b.end()) {
        AgentState merged = alpha < 0.5 ? agent : *it->second;
        LerpAgent(agent, *it->second, alpha, &merged);
        f.agents.push_back(std::move(merged));
        in_b.erase(it);
      } else if (alpha < 0.5) {
        f.agents.push_back(agent);
      }
    }
    if (alpha >= 0.5) {
      for (const AgentState& agent : b.agents) {
        if (in_b.count(agent.id) > 0) f.agents.push_back(agent);
      }
    }
    out.frames.push_back(std::move(f));
  }
  return out;
}

}  // namespace s2o
