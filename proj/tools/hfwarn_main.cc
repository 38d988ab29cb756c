// Copyright 2026 The hfwarn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: run scenarios, compare systems, calibrate thresholds.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hfwarn/experiments.h"
#include "hfwarn/report.h"
#include "hfwarn/runner.h"
#include "hfwarn/scenario.h"
#include "hfwarn/scenario_io.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitInternal = 2;

hfwarn::ScenarioSpec ResolveScenario(const std::string& source) {
  if (fs::exists(source)) return hfwarn::LoadScenarioFile(source);
  return hfwarn::FindScenario(source);
}

std::ofstream OpenOut(const fs::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw hfwarn::ConfigError("cannot write '" + file.string() + "'");
  return out;
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw hfwarn::ConfigError("output directory '" + dir.string() + "' is not writable");
  }
}

void WriteRunArtifacts(const fs::path& dir, const hfwarn::SimulationResult& result,
                       const hfwarn::WarningConfig& config, bool plots) {
  {
    auto out = OpenOut(dir / "trace.csv");
    hfwarn::WriteTraceCsv(out, result);
  }
  {
    auto out = OpenOut(dir / "summary.txt");
    hfwarn::WriteSummary(out, result, config);
  }
  if (plots) {
    auto w = OpenOut(dir / "warning_signal.svg");
    hfwarn::WriteWarningSvg(w, result, config);
    auto v = OpenOut(dir / "velocity_accel.svg");
    hfwarn::WriteVelocityAccelSvg(v, result);
  }
}

struct RunArgs {
  std::string scenario;
  std::string out;
  bool plots = false;
  bool riskmaps = false;
  std::optional<double> w_thr;
  std::optional<double> w_thr_baseline;
  unsigned seed = 0;  // reserved; simulations are deterministic
};

int CmdRun(const RunArgs& args) {
  hfwarn::ScenarioSpec spec = ResolveScenario(args.scenario);
  if (args.w_thr) spec.settings.warning.w_thr = *args.w_thr;
  if (args.w_thr_baseline) spec.settings.warning.w_thr_baseline = *args.w_thr_baseline;
  const fs::path dir = args.out.empty() ? fs::path("out") / spec.name : fs::path(args.out);
  EnsureDir(dir);

  hfwarn::StepObserver observer;
  if (args.riskmaps) {
    observer = [&](const hfwarn::WorldState& world, const hfwarn::StepEvaluation& eval) {
      // One snapshot per whole second.
      if (std::abs(world.time - std::round(world.time)) > 1e-9) return;
      const auto& chosen = eval.behavior.chosen.path;
      char stamp[32];
      std::snprintf(stamp, sizeof(stamp), "%.1f", world.time);
      const auto perceived = hfwarn::BuildRiskMap(world.ego, chosen.path, chosen.start_arc,
                                                  eval.perceived, spec.settings.risk);
      const auto objective = hfwarn::BuildRiskMap(world.ego, chosen.path, chosen.start_arc,
                                                  hfwarn::ObjectiveView(world), spec.settings.risk);
      auto p = OpenOut(dir / ("riskmap_" + std::string(stamp) + "_perceived.csv"));
      hfwarn::WriteRiskMapCsv(p, perceived);
      auto o = OpenOut(dir / ("riskmap_" + std::string(stamp) + "_objective.csv"));
      hfwarn::WriteRiskMapCsv(o, objective);
    };
  }
  const auto result = hfwarn::RunScenario(spec, observer);
  WriteRunArtifacts(dir, result, spec.settings.warning, args.plots);
  hfwarn::WriteSummary(std::cout, result, spec.settings.warning);
  std::cout << "artifacts: " << dir.string() << '\n';
  return 0;
}

int CmdCompareAll(const std::string& out_dir) {
  const fs::path dir = out_dir.empty() ? fs::path("out") : fs::path(out_dir);
  EnsureDir(dir);
  const auto specs = hfwarn::BuiltinScenarios();
  const auto results = hfwarn::RunAll(specs);
  std::vector<hfwarn::ComparisonRow> rows;
  for (std::size_t i = 0; i < results.size(); ++i) {
    rows.push_back(hfwarn::Summarize(results[i]));
    const fs::path sub = dir / specs[i].name;
    EnsureDir(sub);
    WriteRunArtifacts(sub, results[i], specs[i].settings.warning, false);
  }
  {
    auto out = OpenOut(dir / "compare.csv");
    hfwarn::WriteComparisonCsv(out, rows);
  }
  hfwarn::WriteComparisonTable(std::cout, rows);
  return 0;
}

int CmdValidate(const std::string& file) {
  const auto spec = hfwarn::LoadScenarioFile(file);
  const auto violations = hfwarn::Validate(spec);
  if (violations.empty()) {
    std::cout << spec.name << ": ok\n";
    return 0;
  }
  for (const auto& v : violations) std::cerr << v.subject << ": " << v.message << '\n';
  return kExitConfig;
}

int CmdExport(const std::string& name, const std::string& out) {
  const auto text = hfwarn::ScenarioToText(hfwarn::FindScenario(name));
  if (out.empty()) {
    std::cout << text;
  } else {
    auto f = OpenOut(out);
    f << text;
  }
  return 0;
}

int CmdCalibrate(const std::string& out_dir, double w_thr, double w_thr_baseline) {
  const auto specs = hfwarn::CalibrationScenarios();
  const auto report = hfwarn::Calibrate(specs, {w_thr, w_thr_baseline});
  hfwarn::WriteCalibrationText(std::cout, report);
  if (!out_dir.empty()) {
    EnsureDir(out_dir);
    auto csv = OpenOut(fs::path(out_dir) / "calibration.csv");
    hfwarn::WriteCalibrationCsv(csv, report);
    auto txt = OpenOut(fs::path(out_dir) / "calibration.txt");
    hfwarn::WriteCalibrationText(txt, report);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driver-error-aware warning simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Simulate one scenario (builtin name or file)");
  run->add_option("scenario", run_args.scenario, "Builtin scenario name or scenario file")
      ->required();
  run->add_option("--out", run_args.out, "Output directory (default out/<scenario>)");
  run->add_flag("--plots", run_args.plots, "Write warning_signal.svg and velocity_accel.svg");
  run->add_flag("--riskmaps", run_args.riskmaps, "Write perceived/objective risk maps each second");
  run->add_option("--w-thr", run_args.w_thr, "Threshold for the human-factors system");
  run->add_option("--w-thr-baseline", run_args.w_thr_baseline, "Threshold for the baseline");
  run->add_option("--seed", run_args.seed, "Reserved; runs are deterministic");

  std::string compare_out;
  auto* compare = app.add_subcommand("compare-all", "Run every builtin scenario");
  compare->add_option("--out", compare_out, "Output directory (default out)");

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("file", validate_file)->required();

  std::string export_name, export_out;
  auto* exp = app.add_subcommand("export-scenario", "Print a builtin scenario as a file");
  exp->add_option("name", export_name)->required();
  exp->add_option("--out", export_out, "Write to this file instead of stdout");

  std::string calib_out;
  double calib_thr = 1e-4, calib_thr_base = 1e-3;
  auto* calibrate = app.add_subcommand("calibrate", "Threshold study on zero-error scenarios");
  calibrate->add_option("--out", calib_out, "Also write calibration.csv/.txt here");
  calibrate->add_option("--w-thr", calib_thr, "Proposed human-factors threshold");
  calibrate->add_option("--w-thr-baseline", calib_thr_base, "Proposed baseline threshold");

  app.add_subcommand("list", "List builtin and calibration scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; malformed arguments are config errors.
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return CmdRun(run_args);
    if (*compare) return CmdCompareAll(compare_out);
    if (*validate) return CmdValidate(validate_file);
    if (*exp) return CmdExport(export_name, export_out);
    if (*calibrate) return CmdCalibrate(calib_out, calib_thr, calib_thr_base);
    for (const auto& s : hfwarn::BuiltinScenarios()) std::cout << s.name << '\n';
    for (const auto& s : hfwarn::CalibrationScenarios()) std::cout << s.name << '\n';
    return 0;
  } catch (const hfwarn::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const hfwarn::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
