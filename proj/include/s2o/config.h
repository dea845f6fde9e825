#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "s2o/case_log.h"
#include "s2o/evaluate.h"
#include "s2o/fit_pipeline.h"

namespace s2o {

inline constexpr const char* kConfigSchema = "s2o.config/1";

struct Config {
  EvaluationParams eval;
  RoadContext road;
  double quadrature_dt = 0.0;  // 0 keeps the log's own sampling
  std::string model_path;      // empty selects the built-in model
  std::uint64_t seed = 2024;
  FitOptions fit;
  // Only "three_level" is implemented.
  std::string segment_scheme = "three_level";
  std::size_t threads = 0;  // 0 uses the hardware concurrency

  CaseParseOptions ParseOptions() const;
  // Throws ValidationError naming the offending field.
  void Validate() const;
};

// Missing keys keep their defaults; unknown keys are rejected.
Config ConfigFromJson(const nlohmann::json& j);
nlohmann::json ConfigToJson(const Config& c);
Config LoadConfigFile(const std::string& path);

// `path` when given, else $S2O_CONFIG when set, else defaults.
Config ResolveConfig(const std::string& path);

}  // namespace s2o
