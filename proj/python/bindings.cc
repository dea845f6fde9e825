#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>

#include "s2o/case_log.h"
#include "s2o/config.h"
#include "s2o/errors.h"
#include "s2o/evaluate.h"
#include "s2o/harness.h"
#include "s2o/model_file.h"
#include "s2o/report_io.h"
#include "s2o/safety_field.h"
#include "s2o/stream.h"

namespace py = pybind11;

namespace {

// Reports cross the boundary as plain dicts built from the JSON record.
py::object ToPython(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json FromPython(const py::object& o) {
  return nlohmann::json::parse(
      py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

s2o::Config ConfigFrom(const py::object& config) {
  if (config.is_none()) return s2o::ResolveConfig("");
  return s2o::ConfigFromJson(FromPython(config));
}

s2o::ScoringModel ModelFrom(const py::object& model) {
  if (model.is_none()) return s2o::DefaultScoringModel();
  if (py::isinstance<py::str>(model)) {
    return s2o::LoadModelFile(model.cast<std::string>());
  }
  return s2o::ModelFromJson(FromPython(model));
}

class PyStream {
 public:
  PyStream(const py::object& config, const py::object& model)
      : config_(ConfigFrom(config)),
        eval_(config_.eval, ModelFrom(model), config_.road, "stream") {}

  py::object Push(const std::string& frame_line) {
    const s2o::SceneFrame frame =
        s2o::ParseFrameLine(frame_line, 0, config_.eval.vehicle.mass);
    const auto r = eval_.Push(frame);
    if (!r) return py::none();
    return ToPython(s2o::ReportToJson(*r));
  }

 private:
  s2o::Config config_;
  s2o::StreamEvaluator eval_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "S2O driving-case evaluation";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<s2o::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<s2o::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<s2o::ValidationError>(m, "ValidationError",
                                               PyExc_ValueError);
  py::register_exception<s2o::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<s2o::FitError>(m, "FitError", PyExc_RuntimeError);
  py::register_exception<s2o::SimulationError>(m, "SimulationError",
                                               PyExc_RuntimeError);

  m.def(
      "evaluate_case",
      [](const std::string& text, const py::object& config,
         const py::object& model) {
        const s2o::Config c = ConfigFrom(config);
        const s2o::DrivingCase dc = s2o::ParseCaseString(text, c.ParseOptions());
        s2o::EvaluationReport r = s2o::EvaluateCase(dc, c.eval, ModelFrom(model));
        return ToPython(s2o::ReportToJson(r));
      },
      py::arg("case_text"), py::arg("config") = py::none(),
      py::arg("model") = py::none(),
      "Score a case log given as JSON Lines text; returns the report dict.");

  m.def(
      "score_terms",
      [](double safety, double efficiency, double comfort, double energy,
         bool crash, const py::object& model) {
        const s2o::TermScores raw{safety, efficiency, comfort, energy};
        return ToPython(
            s2o::ReportToJson(s2o::ScoreTerms(raw, crash, ModelFrom(model))));
      },
      py::arg("safety"), py::arg("efficiency"), py::arg("comfort"),
      py::arg("energy"), py::arg("crash") = false,
      py::arg("model") = py::none());

  m.def(
      "simulate",
      [](const std::string& scenario, const std::string& planner) {
        s2o::PlannerKind kind;
        if (!s2o::ParsePlannerKind(planner, &kind) ||
            kind == s2o::PlannerKind::kScripted) {
          throw s2o::ValidationError("unknown planner '" + planner + "'");
        }
        for (const s2o::ScenarioSpec& s : s2o::StandardScenarios()) {
          if (s.name == scenario) {
            return s2o::WriteCaseString(
                s2o::RunScenario(s, s2o::PlannerSpec::Named(kind)));
          }
        }
        throw s2o::ValidationError("unknown scenario '" + scenario + "'");
      },
      py::arg("scenario"), py::arg("planner") = "idm",
      "Run a built-in scene; returns the case log text.");

  m.def("standard_scenarios", [] {
    std::vector<std::string> names;
    for (const auto& s : s2o::StandardScenarios()) names.push_back(s.name);
    return names;
  });

  m.def(
      "risk_heatmap",
      [](const std::string& text, std::size_t frame, double extent,
         double cell, const py::object& config) {
        const s2o::Config c = ConfigFrom(config);
        const s2o::DrivingCase dc = s2o::ParseCaseString(text, c.ParseOptions());
        if (frame >= dc.frames.size()) {
          throw s2o::ValidationError("frame index out of range");
        }
        const auto& f = dc.frames[frame];
        const s2o::RiskGrid g = s2o::RiskHeatmap(
            f, c.eval.dsf, s2o::GridSpec::AroundEgo(f.ego, extent, cell));
        std::vector<std::vector<double>> rows(g.rows);
        for (std::size_t r = 0; r < g.rows; ++r) {
          for (std::size_t col = 0; col < g.cols; ++col) {
            rows[r].push_back(g.at(r, col));
          }
        }
        return rows;
      },
      py::arg("case_text"), py::arg("frame") = 0, py::arg("extent") = 30.0,
      py::arg("cell") = 1.0, py::arg("config") = py::none());

  m.def("default_model",
        [] { return ToPython(s2o::ModelToJson(s2o::DefaultScoringModel())); });

  py::class_<PyStream>(m, "StreamEvaluator")
      .def(py::init<const py::object&, const py::object&>(),
           py::arg("config") = py::none(), py::arg("model") = py::none())
      .def("push", &PyStream::Push, py::arg("frame_line"),
           "Feed one frame line; returns the running report or None.");
}
