#include "s2o/config.h"

#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <numbers>

#include "s2o/errors.h"

namespace s2o {

namespace {

using nlohmann::json;

void CheckKeys(const json& j, const char* section,
               std::initializer_list<const char*> allowed) {
  if (!j.is_object()) {
    throw ValidationError(std::string("config section '") + section +
                          "' must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) {
      throw ValidationError(std::string("unknown config key '") + section +
                            "." + key + "'");
    }
  }
}

template <typename T>
void Read(const json& j, const char* key, T* into) {
  if (j.contains(key)) *into = j.at(key).get<T>();
}

constexpr double kDeg = std::numbers::pi / 180.0;

}  // namespace

CaseParseOptions Config::ParseOptions() const {
  CaseParseOptions o;
  o.quadrature_dt = quadrature_dt;
  o.default_ego_mass = eval.vehicle.mass;
  o.default_road = road;
  return o;
}

void Config::Validate() const {
  eval.Validate();
  road.Validate();
  if (!(quadrature_dt >= 0.0)) {
    throw ValidationError("quadrature_dt must be >= 0");
  }
  if (segment_scheme != "three_level") {
    throw ValidationError("segment scheme '" + segment_scheme +
                          "' is not supported; use three_level");
  }
  fit.thresholds.Validate();
  if (!(fit.train_fraction > 0.0 && fit.train_fraction < 1.0)) {
    throw ValidationError("fit.train_fraction must be in (0, 1)");
  }
  if (fit.repeats == 0) throw ValidationError("fit.repeats must be >= 1");
  if (!(fit.svm.lambda > 0.0) || fit.svm.epochs == 0 ||
      fit.svm.batch_size == 0) {
    throw ValidationError("fit.svm options must be positive");
  }
  if (!(fit.raters.min_variance >= 0.0) || !(fit.raters.max_offset > 0.0)) {
    throw ValidationError("fit.raters thresholds out of range");
  }
  if (fit.calibration.robust &&
      !(fit.calibration.lower_percentile >= 0.0 &&
        fit.calibration.lower_percentile < fit.calibration.upper_percentile &&
        fit.calibration.upper_percentile <= 100.0)) {
    throw ValidationError("fit.calibration percentiles out of range");
  }
}

Config ConfigFromJson(const json& j) {
  Config c;
  try {
    CheckKeys(j, "config",
              {"schema", "dsf", "roi", "vehicle", "comfort", "road",
               "quadrature_dt", "model", "seed", "threads", "fit", "segments"});
    if (j.contains("schema") && j["schema"] != kConfigSchema) {
      throw ValidationError("unsupported config schema");
    }
    if (j.contains("dsf")) {
      const json& d = j["dsf"];
      CheckKeys(d, "dsf",
                {"G", "k1", "a", "b", "c", "max_exponent", "min_distance"});
      Read(d, "G", &c.eval.dsf.G);
      Read(d, "k1", &c.eval.dsf.k1);
      Read(d, "a", &c.eval.dsf.a);
      Read(d, "b", &c.eval.dsf.b);
      Read(d, "c", &c.eval.dsf.c);
      Read(d, "max_exponent", &c.eval.dsf.max_exponent);
      Read(d, "min_distance", &c.eval.dsf.min_distance);
    }
    if (j.contains("roi")) {
      const json& r = j["roi"];
      CheckKeys(r, "roi", {"front", "rear"});
      Read(r, "front", &c.eval.dsf.roi.front);
      Read(r, "rear", &c.eval.dsf.roi.rear);
    }
    if (j.contains("vehicle")) {
      const json& v = j["vehicle"];
      CheckKeys(v, "vehicle",
                {"delta", "drag_coeff", "frontal_area", "mass", "gravity"});
      Read(v, "delta", &c.eval.vehicle.delta);
      Read(v, "drag_coeff", &c.eval.vehicle.drag_coeff);
      Read(v, "frontal_area", &c.eval.vehicle.frontal_area);
      Read(v, "mass", &c.eval.vehicle.mass);
      Read(v, "gravity", &c.eval.vehicle.gravity);
    }
    if (j.contains("comfort")) {
      const json& m = j["comfort"];
      CheckKeys(m, "comfort",
                {"jerk_weight", "u_turn_penalty", "emergency_stop_penalty",
                 "emergency_decel", "emergency_min_duration",
                 "u_turn_angle_deg", "u_turn_window"});
      Read(m, "jerk_weight", &c.eval.comfort.jerk_weight);
      Read(m, "u_turn_penalty", &c.eval.comfort.u_turn_penalty);
      Read(m, "emergency_stop_penalty", &c.eval.comfort.emergency_stop_penalty);
      Read(m, "emergency_decel", &c.eval.comfort.emergency_decel);
      Read(m, "emergency_min_duration", &c.eval.comfort.emergency_min_duration);
      if (m.contains("u_turn_angle_deg")) {
        c.eval.comfort.u_turn_angle = m["u_turn_angle_deg"].get<double>() * kDeg;
      }
      Read(m, "u_turn_window", &c.eval.comfort.u_turn_window);
    }
    if (j.contains("road")) {
      const json& r = j["road"];
      CheckKeys(r, "road", {"speed_limits_kmh", "gradient", "rolling_coeff"});
      if (r.contains("speed_limits_kmh")) {
        const json& lim = r["speed_limits_kmh"];
        for (const auto& [key, value] : lim.items()) {
          const auto section = ParseRoadSection(key);
          if (!section) {
            throw ValidationError("unknown road section '" + key + "'");
          }
          c.road.speed_limit_kmh[static_cast<std::size_t>(*section)] =
              value.get<double>();
        }
      }
      Read(r, "gradient", &c.road.gradient);
      Read(r, "rolling_coeff", &c.road.rolling_coeff);
    }
    Read(j, "quadrature_dt", &c.quadrature_dt);
    Read(j, "model", &c.model_path);
    Read(j, "seed", &c.seed);
    Read(j, "threads", &c.threads);
    if (j.contains("fit")) {
      const json& f = j["fit"];
      CheckKeys(f, "fit",
                {"repeats", "train_fraction", "robust_calibration",
                 "lower_percentile", "upper_percentile", "svm_lambda",
                 "svm_epochs", "svm_batch", "min_cases_per_segment",
                 "rater_min_variance", "rater_max_offset"});
      Read(f, "repeats", &c.fit.repeats);
      Read(f, "train_fraction", &c.fit.train_fraction);
      Read(f, "robust_calibration", &c.fit.calibration.robust);
      Read(f, "lower_percentile", &c.fit.calibration.lower_percentile);
      Read(f, "upper_percentile", &c.fit.calibration.upper_percentile);
      Read(f, "svm_lambda", &c.fit.svm.lambda);
      Read(f, "svm_epochs", &c.fit.svm.epochs);
      Read(f, "svm_batch", &c.fit.svm.batch_size);
      Read(f, "min_cases_per_segment", &c.fit.weights.min_cases_per_segment);
      Read(f, "rater_min_variance", &c.fit.raters.min_variance);
      Read(f, "rater_max_offset", &c.fit.raters.max_offset);
    }
    if (j.contains("segments")) {
      const json& s = j["segments"];
      CheckKeys(s, "segments", {"scheme", "low_upper", "mid_upper"});
      Read(s, "scheme", &c.segment_scheme);
      Read(s, "low_upper", &c.fit.thresholds.low_upper);
      Read(s, "mid_upper", &c.fit.thresholds.mid_upper);
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad config value: ") + e.what());
  }
  c.fit.seed = c.seed;
  c.fit.svm.seed = c.seed;
  c.Validate();
  return c;
}

json ConfigToJson(const Config& c) {
  json limits = json::object();
  for (std::size_t i = 0; i < kNumRoadSections; ++i) {
    limits[std::string(ToString(static_cast<RoadSection>(i)))] =
        c.road.speed_limit_kmh[i];
  }
  const DsfParams& d = c.eval.dsf;
  const VehicleParams& v = c.eval.vehicle;
  const ComfortParams& m = c.eval.comfort;
  const FitOptions& f = c.fit;
  return {{"schema", kConfigSchema},
          {"dsf",
           {{"G", d.G},
            {"k1", d.k1},
            {"a", d.a},
            {"b", d.b},
            {"c", d.c},
            {"max_exponent", d.max_exponent},
            {"min_distance", d.min_distance}}},
          {"roi", {{"front", d.roi.front}, {"rear", d.roi.rear}}},
          {"vehicle",
           {{"delta", v.delta},
            {"drag_coeff", v.drag_coeff},
            {"frontal_area", v.frontal_area},
            {"mass", v.mass},
            {"gravity", v.gravity}}},
          {"comfort",
           {{"jerk_weight", m.jerk_weight},
            {"u_turn_penalty", m.u_turn_penalty},
            {"emergency_stop_penalty", m.emergency_stop_penalty},
            {"emergency_decel", m.emergency_decel},
            {"emergency_min_duration", m.emergency_min_duration},
            {"u_turn_angle_deg", m.u_turn_angle / kDeg},
            {"u_turn_window", m.u_turn_window}}},
          {"road",
           {{"speed_limits_kmh", limits},
            {"gradient", c.road.gradient},
            {"rolling_coeff", c.road.rolling_coeff}}},
          {"quadrature_dt", c.quadrature_dt},
          {"model", c.model_path},
          {"seed", c.seed},
          {"threads", c.threads},
          {"fit",
           {{"repeats", f.repeats},
            {"train_fraction", f.train_fraction},
            {"robust_calibration", f.calibration.robust},
            {"lower_percentile", f.calibration.lower_percentile},
            {"upper_percentile", f.calibration.upper_percentile},
            {"svm_lambda", f.svm.lambda},
            {"svm_epochs", f.svm.epochs},
            {"svm_batch", f.svm.batch_size},
            {"min_cases_per_segment", f.weights.min_cases_per_segment},
            {"rater_min_variance", f.raters.min_variance},
            {"rater_max_offset", f.raters.max_offset}}},
          {"segments",
           {{"scheme", c.segment_scheme},
            {"low_upper", f.thresholds.low_upper},
            {"mid_upper", f.thresholds.mid_upper}}}};
}

Config LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed config: ") + e.what(), 0);
  }
  return ConfigFromJson(j);
}

Config ResolveConfig(const std::string& path) {
  if (!path.empty()) return LoadConfigFile(path);
  if (const char* env = std::getenv("S2O_CONFIG"); env && *env) {
    return LoadConfigFile(env);
  }
  Config c;
  c.fit.seed = c.seed;
  c.fit.svm.seed = c.seed;
  return c;
}

}  // namespace s2o
