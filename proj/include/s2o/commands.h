#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace s2o {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;

struct GlobalOptions {
  std::string config_path;
  std::string model_path;
  std::string output_path;  // empty writes to the given stream
  std::optional<std::uint64_t> seed;
  bool strict = false;
};

// Case files and directories (their *.jsonl files) are evaluated in
// parallel; reports come out in sorted path order. Bad files are listed on
// `err` and skipped, or abort the run under --strict.
int CmdEvaluate(const std::vector<std::string>& inputs,
                const GlobalOptions& g, std::ostream& out, std::ostream& err);

// Frames in the case-log line format on `in`; one report per frame, flushed
// immediately. A bad line produces an error record and the stream goes on.
int CmdStream(std::istream& in, const GlobalOptions& g, std::ostream& out,
              std::ostream& err);

// Writes the fitted model to g.output_path (required) and the fit report to
// `out` and, when given, to `report_path`.
int CmdFit(const std::string& dataset, const std::string& report_path,
           const GlobalOptions& g, std::ostream& out, std::ostream& err);

// Runs each scenario spec (or the built-in scenes when `standard` is set)
// with each planner and writes <dir>/<scenario>_<planner>.jsonl, where dir is
// g.output_path or the working directory.
int CmdSimulate(const std::vector<std::string>& specs,
                const std::vector<std::string>& planners, bool standard,
                const GlobalOptions& g, std::ostream& out, std::ostream& err);

int CmdHeatmap(const std::string& case_file, std::size_t frame,
               double half_extent, double cell_size, const GlobalOptions& g,
               std::ostream& out, std::ostream& err);

}  // namespace s2o
