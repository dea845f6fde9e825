#pragma once

#include <string>

#include "json.hpp"
#include "s2o/scoring.h"

namespace s2o {

inline constexpr const char* kModelSchema = "s2o.model/1";

nlohmann::json ModelToJson(const ScoringModel& model);
// Throws ParseError for an unknown schema or missing field and
// ValidationError when an embedded artifact breaks its invariants.
ScoringModel ModelFromJson(const nlohmann::json& j);

std::string ModelToString(const ScoringModel& model);
ScoringModel ModelFromString(const std::string& text);

ScoringModel LoadModelFile(const std::string& path);
void SaveModelFile(const ScoringModel& model, const std::string& path);

// Published weights with a calibration and classifier trained on synthetic
// harness drives. Good enough to run the evaluator; a faithful deployment
// refits on a rated corpus.
const ScoringModel& DefaultScoringModel();

// `path` when non-empty, otherwise the built-in model.
ScoringModel ResolveModel(const std::string& path);

}  // namespace s2o
