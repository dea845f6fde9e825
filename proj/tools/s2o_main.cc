#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "s2o/commands.h"

int main(int argc, char** argv) {
  CLI::App app{"s2o: score driving cases on safety, efficiency, comfort and "
               "energy"};
  app.require_subcommand(1);

  s2o::GlobalOptions g;
  std::uint64_t seed = 0;
  app.add_option("--config", g.config_path,
                 "Config file (falls back to $S2O_CONFIG)");
  app.add_option("--model", g.model_path, "Model file (default: built-in)");
  auto* seed_opt = app.add_option("--seed", seed, "Seed override");
  app.add_flag("--strict", g.strict, "Fail on the first bad input");
  app.add_option("--output,-o", g.output_path, "Output file or directory");

  std::vector<std::string> inputs;
  auto* evaluate = app.add_subcommand("evaluate", "Score case-log files");
  evaluate->add_option("inputs", inputs, "Case files or directories")
      ->required();

  auto* stream = app.add_subcommand(
      "stream", "Score frames from standard input as they arrive");

  std::string dataset, report_path;
  auto* fit = app.add_subcommand("fit", "Fit a model on a rated dataset");
  fit->add_option("dataset", dataset, "Rated dataset (JSON Lines)")->required();
  fit->add_option("--report", report_path, "Also write the fit report here");

  std::vector<std::string> specs, planners;
  bool standard = false;
  auto* simulate =
      app.add_subcommand("simulate", "Run closed-loop scenarios to case logs");
  simulate->add_option("specs", specs, "Scenario spec files");
  simulate->add_option("--planner", planners,
                       "idm, conservative, aggressive or reckless");
  simulate->add_flag("--standard", standard, "Run the eight built-in scenes");

  std::string case_file;
  std::size_t frame = 0;
  double extent = 30.0, cell = 1.0;
  auto* heatmap =
      app.add_subcommand("heatmap", "Risk grid around the ego for one frame");
  heatmap->add_option("case", case_file, "Case file")->required();
  heatmap->add_option("--frame", frame, "Frame index")->capture_default_str();
  heatmap->add_option("--extent", extent, "Half width of the grid, m")
      ->capture_default_str();
  heatmap->add_option("--cell", cell, "Cell size, m")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : s2o::kExitUsage;
  }
  if (*seed_opt) g.seed = seed;

  if (*evaluate) return s2o::CmdEvaluate(inputs, g, std::cout, std::cerr);
  if (*stream) {
    std::ios::sync_with_stdio(false);
    return s2o::CmdStream(std::cin, g, std::cout, std::cerr);
  }
  if (*fit) return s2o::CmdFit(dataset, report_path, g, std::cout, std::cerr);
  if (*simulate) {
    return s2o::CmdSimulate(specs, planners, standard, g, std::cout, std::cerr);
  }
  if (*heatmap) {
    return s2o::CmdHeatmap(case_file, frame, extent, cell, g, std::cout,
                           std::cerr);
  }
  return s2o::kExitUsage;
}
