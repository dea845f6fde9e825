#include "s2o/report_io.h"

#include "s2o/errors.h"

namespace s2o {

namespace {

using nlohmann::json;

json TermsToJson(const TermVector& v) {
  json j = json::object();
  for (std::size_t i = 0; i < kNumTerms; ++i) {
    j[std::string(ToString(static_cast<Term>(i)))] = v[i];
  }
  return j;
}

TermVector TermsFromJson(const json& j) {
  TermVector v{};
  for (std::size_t i = 0; i < kNumTerms; ++i) {
    v[i] = j.at(std::string(ToString(static_cast<Term>(i)))).get<double>();
  }
  return v;
}

}  // namespace

json ReportToJson(const EvaluationReport& r) {
  return {{"schema", kReportSchema},
          {"case", r.case_id},
          {"frames", r.frames},
          {"duration", r.duration},
          {"raw", TermsToJson(r.raw.AsArray())},
          {"normalized", TermsToJson(r.normalized.values)},
          {"segment", ToString(r.segment)},
          {"crash", r.crash},
          {"integrated", r.integrated},
          {"final", r.final_score}};
}

EvaluationReport ReportFromJson(const json& j) {
  try {
    if (j.at("schema").get<std::string>() != kReportSchema) {
      throw ParseError("unsupported report schema", 0);
    }
    EvaluationReport r;
    r.case_id = j.at("case").get<std::string>();
    r.frames = j.at("frames").get<std::size_t>();
    r.duration = j.at("duration").get<double>();
    r.raw = TermScores::FromArray(TermsFromJson(j.at("raw")));
    r.normalized.values = TermsFromJson(j.at("normalized"));
    auto level = ParseSegmentLevel(j.at("segment").get<std::string>());
    if (!level) throw ParseError("unknown segment label", 0);
    r.segment = *level;
    r.crash = j.at("crash").get<bool>();
    r.integrated = j.at("integrated").get<double>();
    r.final_score = j.at("final").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad report record: ") + e.what(), 0);
  }
}

std::string ReportToLine(const EvaluationReport& r) {
  return ReportToJson(r).dump();
}

}  // namespace s2o
