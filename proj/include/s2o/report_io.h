#pragma once

#include <string>

#include "json.hpp"
#include "s2o/evaluate.h"

namespace s2o {

inline constexpr const char* kReportSchema = "s2o.report/1";

nlohmann::json ReportToJson(const EvaluationReport& r);
EvaluationReport ReportFromJson(const nlohmann::json& j);

// One compact JSON object, no trailing newline.
std::string ReportToLine(const EvaluationReport& r);

}  // namespace s2o
