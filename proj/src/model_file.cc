#include "s2o/model_file.h"

#include <fstream>
#include <sstream>

#include "s2o/errors.h"

namespace s2o {

extern const char* const kDefaultModelJson;

namespace {

using nlohmann::json;

json Vector(const TermVector& v) { return json(std::vector<double>(v.begin(), v.end())); }

TermVector ReadVector(const json& j) {
  if (!j.is_array() || j.size() != kNumTerms) {
    throw ParseError("expected an array of four numbers", 0);
  }
  TermVector v{};
  for (std::size_t i = 0; i < kNumTerms; ++i) v[i] = j[i].get<double>();
  return v;
}

json Boundary(const LinearBoundary& b) {
  return {{"w", Vector(b.w)}, {"bias", b.bias}};
}

LinearBoundary ReadBoundary(const json& j) {
  LinearBoundary b;
  b.w = ReadVector(j.at("w"));
  b.bias = j.at("bias").get<double>();
  return b;
}

}  // namespace

json ModelToJson(const ScoringModel& m) {
  json cal = json::object();
  for (std::size_t i = 0; i < kNumTerms; ++i) {
    cal[std::string(ToString(static_cast<Term>(i)))] = {
        {"min", m.calibration.terms[i].min}, {"max", m.calibration.terms[i].max}};
  }
  json weights = json::object();
  for (std::size_t l = 0; l < kNumLevels; ++l) {
    weights[std::string(ToString(static_cast<SegmentLevel>(l)))] =
        Vector(m.weights.rows[l]);
  }
  weights["offset"] = m.weights.offset;
  return {{"schema", kModelSchema},
          {"calibration", cal},
          {"svm",
           {{"low_mid", Boundary(m.svm.low_mid)},
            {"mid_high", Boundary(m.svm.mid_high)}}},
          {"weights", weights},
          {"thresholds",
           {{"low_upper", m.thresholds.low_upper},
            {"mid_upper", m.thresholds.mid_upper}}}};
}

ScoringModel ModelFromJson(const json& j) {
  if (!j.is_object() || j.value("schema", std::string()) != kModelSchema) {
    throw ParseError("model schema must be " + std::string(kModelSchema), 0);
  }
  ScoringModel m;
  try {
    for (std::size_t i = 0; i < kNumTerms; ++i) {
      const json& t =
          j.at("calibration").at(std::string(ToString(static_cast<Term>(i))));
      m.calibration.terms[i].min = t.at("min").get<double>();
      m.calibration.terms[i].max = t.at("max").get<double>();
    }
    m.svm.low_mid = ReadBoundary(j.at("svm").at("low_mid"));
    m.svm.mid_high = ReadBoundary(j.at("svm").at("mid_high"));
    for (std::size_t l = 0; l < kNumLevels; ++l) {
      m.weights.rows[l] = ReadVector(
          j.at("weights").at(std::string(ToString(static_cast<SegmentLevel>(l)))));
    }
    m.weights.offset = j.at("weights").at("offset").get<double>();
    if (j.contains("thresholds")) {
      m.thresholds.low_upper = j["thresholds"].at("low_upper").get<double>();
      m.thresholds.mid_upper = j["thresholds"].at("mid_upper").get<double>();
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad model field: ") + e.what(), 0);
  }
  m.Validate();
  return m;
}

std::string ModelToString(const ScoringModel& model) {
  return ModelToJson(model).dump(2) + "\n";
}

ScoringModel ModelFromString(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed model: ") + e.what(), 0);
  }
  return ModelFromJson(j);
}

ScoringModel LoadModelFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ModelFromString(ss.str());
}

void SaveModelFile(const ScoringModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model '" + path + "'");
  out << ModelToString(model);
  if (!out) throw Error("failed writing model '" + path + "'");
}

const ScoringModel& DefaultScoringModel() {
  static const ScoringModel model = ModelFromString(kDefaultModelJson);
  return model;
}

ScoringModel ResolveModel(const std::string& path) {
  return path.empty() ? DefaultScoringModel() : LoadModelFile(path);
}

}  // namespace s2o
