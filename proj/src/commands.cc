#include "s2o/commands.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "s2o/case_log.h"
#include "s2o/config.h"
#include "s2o/errors.h"
#include "s2o/evaluate.h"
#include "s2o/fit_pipeline.h"
#include "s2o/harness.h"
#include "s2o/model_file.h"
#include "s2o/ratings.h"
#include "s2o/report_io.h"
#include "s2o/safety_field.h"
#include "s2o/stream.h"

namespace s2o {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

Config LoadConfig(const GlobalOptions& g) {
  Config c = ResolveConfig(g.config_path);
  if (g.seed) {
    c.seed = *g.seed;
    c.fit.seed = *g.seed;
    c.fit.svm.seed = *g.seed;
  }
  if (!g.model_path.empty()) c.model_path = g.model_path;
  return c;
}

// Writes to g.output_path when set, else to `fallback`.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::vector<std::string> CollectCaseFiles(const std::vector<std::string>& inputs,
                                          std::vector<std::string>* missing) {
  std::vector<std::string> files;
  for (const std::string& in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      for (const auto& entry : fs::directory_iterator(in)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
          files.push_back(entry.path().string());
        }
      }
    } else if (fs::is_regular_file(in, ec)) {
      files.push_back(in);
    } else {
      missing->push_back(in);
    }
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  return files;
}

struct FileOutcome {
  std::string line;
  std::string error;
};

FileOutcome EvaluateFile(const std::string& path, const Config& config,
                         const ScoringModel& model) {
  FileOutcome o;
  try {
    DrivingCase c = ParseCaseFile(path, config.ParseOptions());
    EvaluationReport r = EvaluateCase(c, config.eval, model);
    r.case_id = c.meta.scenario_id.empty() ? fs::path(path).stem().string()
                                           : c.meta.scenario_id;
    json j = ReportToJson(r);
    j["source"] = path;
    o.line = j.dump();
  } catch (const std::exception& e) {
    o.error = e.what();
  }
  return o;
}

std::size_t WorkerCount(const Config& c) {
  if (c.threads > 0) return c.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

int ReportFailure(std::ostream& err, const std::exception& e) {
  err << "error: " << e.what() << '\n';
  return dynamic_cast<const ValidationError*>(&e) ||
                 dynamic_cast<const ParseError*>(&e) ||
                 dynamic_cast<const FitError*>(&e)
             ? kExitInput
             : kExitUsage;
}

}  // namespace

int CmdEvaluate(const std::vector<std::string>& inputs, const GlobalOptions& g,
                std::ostream& out, std::ostream& err) {
  try {
    const Config config = LoadConfig(g);
    const ScoringModel model = ResolveModel(config.model_path);
    std::vector<std::string> missing;
    const std::vector<std::string> files = CollectCaseFiles(inputs, &missing);
    for (const std::string& m : missing) {
      err << "error: " << m << ": no such file or directory\n";
    }
    if (files.empty()) {
      err << "error: no case files to evaluate\n";
      return kExitInput;
    }

    std::vector<FileOutcome> results(files.size());
    const std::size_t workers = std::min(WorkerCount(config), files.size());
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < files.size(); i += workers) {
          results[i] = EvaluateFile(files[i], config, model);
        }
      }));
    }
    for (auto& j : jobs) j.get();

    std::size_t failed = missing.size();
    for (std::size_t i = 0; i < files.size(); ++i) {
      if (!results[i].error.empty()) {
        err << "error: " << files[i] << ": " << results[i].error << '\n';
        ++failed;
      }
    }
    if (g.strict && failed > 0) {
      err << failed << " input(s) failed; nothing written (--strict)\n";
      return kExitInput;
    }
    Output sink(g.output_path, out);
    std::size_t written = 0;
    for (const FileOutcome& r : results) {
      if (r.error.empty()) {
        sink.get() << r.line << '\n';
        ++written;
      }
    }
    sink.get().flush();
    if (failed > 0) {
      err << written << " report(s), " << failed << " error(s)\n";
    }
    return written > 0 ? kExitOk : kExitInput;
  } catch (const std::exception& e) {
    return ReportFailure(err, e);
  }
}

int CmdStream(std::istream& in, const GlobalOptions& g, std::ostream& out,
              std::ostream& err) {
  try {
    const Config config = LoadConfig(g);
    const ScoringModel model = ResolveModel(config.model_path);
    Output sink(g.output_path, out);
    std::ostream& os = sink.get();

    DrivingCase header;
    header.road = config.road;
    std::optional<StreamEvaluator> eval;
    std::size_t line_no = 0;
    std::size_t errors = 0;
    std::string line;
    auto error_record = [&](const std::string& message) {
      ++errors;
      os << json{{"schema", "s2o.error/1"}, {"line", line_no},
                 {"error", message}}
                .dump()
         << std::endl;
    };
    while (std::getline(in, line)) {
      ++line_no;
      const auto start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos || line[start] == '#') continue;
      try {
        if (IsCaseHeaderLine(line)) {
          if (eval && eval->frames_seen() > 0) {
            throw ValidationError("header after the first frame");
          }
          ParseCaseHeader(line, line_no, &header);
          continue;
        }
        const SceneFrame frame =
            ParseFrameLine(line, line_no, config.eval.vehicle.mass);
        if (!eval) {
          eval.emplace(config.eval, model, header.road,
                       header.meta.scenario_id.empty() ? "stream"
                                                       : header.meta.scenario_id);
          if (header.crash) eval->MarkCrashed();
        }
        const std::optional<EvaluationReport> r = eval->Push(frame);
        if (r) {
          json j = ReportToJson(*r);
          j["t"] = frame.t;
          os << j.dump() << std::endl;
        }
      } catch (const Error& e) {
        error_record(e.what());
      }
    }
    if (errors > 0) err << errors << " bad line(s) skipped\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return ReportFailure(err, e);
  }
}

int CmdFit(const std::string& dataset, const std::string& report_path,
           const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  try {
    if (g.output_path.empty()) {
      err << "error: fit needs --output for the model file\n";
      return kExitUsage;
    }
    const Config config = LoadConfig(g);
    const std::vector<RatedCase> rated = ParseRatedDatasetFile(dataset);
    const FitReport report = RunFitPipeline(rated, config.fit);

    std::ostringstream text;
    text << FormatFitReport(report);
    for (std::size_t r = 0; r < report.validation.repeat_validation_maes.size();
         ++r) {
      text << "repeat " << r + 1 << ": train MAE "
           << report.validation.repeat_train_maes[r] << ", validation MAE "
           << report.validation.repeat_validation_maes[r] << '\n';
    }
    SaveModelFile(report.model, g.output_path);
    out << text.str();
    if (!report_path.empty()) {
      std::ofstream f(report_path, std::ios::binary);
      if (!f) throw Error("cannot write '" + report_path + "'");
      f << text.str();
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return ReportFailure(err, e);
  }
}

int CmdSimulate(const std::vector<std::string>& specs,
                const std::vector<std::string>& planners, bool standard,
                const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  try {
    const Config config = LoadConfig(g);
    std::vector<ScenarioSpec> scenes;
    if (standard) scenes = StandardScenarios();
    for (const std::string& path : specs) {
      scenes.push_back(ParseScenarioSpecFile(path));
    }
    if (scenes.empty()) {
      err << "error: no scenarios given\n";
      return kExitUsage;
    }
    std::vector<PlannerKind> kinds;
    for (const std::string& name : planners) {
      PlannerKind k;
      if (!ParsePlannerKind(name, &k) || k == PlannerKind::kScripted) {
        err << "error: unknown planner '" << name << "'\n";
        return kExitUsage;
      }
      kinds.push_back(k);
    }
    if (kinds.empty()) kinds.push_back(PlannerKind::kIdm);

    const fs::path dir = g.output_path.empty() ? fs::path(".") : fs::path(g.output_path);
    fs::create_directories(dir);
    for (ScenarioSpec& s : scenes) {
      s.road = config.road;
      if (g.seed) s.seed = *g.seed;
      if (s.name.empty()) s.name = std::string(ToString(s.kind));
      for (PlannerKind k : kinds) {
        const DrivingCase c = RunScenario(s, PlannerSpec::Named(k));
        const fs::path file =
            dir / (s.name + "_" + std::string(ToString(k)) + ".jsonl");
        std::ofstream f(file, std::ios::binary);
        if (!f) throw Error("cannot write '" + file.string() + "'");
        WriteCase(c, f);
        out << file.string() << (c.crash ? " crash" : "") << '\n';
      }
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return ReportFailure(err, e);
  }
}

int CmdHeatmap(const std::string& case_file, std::size_t frame,
               double half_extent, double cell_size, const GlobalOptions& g,
               std::ostream& out, std::ostream& err) {
  try {
    const Config config = LoadConfig(g);
    const DrivingCase c = ParseCaseFile(case_file, config.ParseOptions());
    if (frame >= c.frames.size()) {
      throw ValidationError("frame index " + std::to_string(frame) +
                            " out of range (case has " +
                            std::to_string(c.frames.size()) + " frames)");
    }
    const SceneFrame& f = c.frames[frame];
    const GridSpec spec = GridSpec::AroundEgo(f.ego, half_extent, cell_size);
    const RiskGrid grid = RiskHeatmap(f, config.eval.dsf, spec);
    Output sink(g.output_path, out);
    WriteRiskGridCsv(grid, sink.get());
    return kExitOk;
  } catch (const std::exception& e) {
    return ReportFailure(err, e);
  }
}

}  // namespace s2o
