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

#include "hfwarn/experiments.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

namespace hfwarn {

std::vector<SimulationResult> RunAll(std::span<const ScenarioSpec> scenarios) {
  const auto n = static_cast<std::ptrdiff_t>(scenarios.size());
  std::vector<SimulationResult> results(scenarios.size());
  std::vector<std::string> failures(scenarios.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    try {
      results[u] = RunScenario(scenarios[u]);
    } catch (const std::exception& e) {
      failures[u] = e.what();
    }
  }
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (!failures[i].empty()) {
      throw std::runtime_error("scenario '" + scenarios[i].name + "' failed: " + failures[i]);
    }
  }
  return results;
}

ComparisonRow Summarize(const SimulationResult& result) {
  return {result.scenario, result.onsets.t_novel, result.onsets.t_baseline, result.onsets.lead,
          result.collision_time};
}

double NextDecadeStep(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("NextDecadeStep: x must be positive");
  double decade = std::pow(10.0, std::floor(std::log10(x)));
  for (;;) {
    for (double m : {1.0, 2.0, 5.0}) {
      if (m * decade > x) return m * decade;
    }
    decade *= 10.0;
  }
}

CalibrationReport Calibrate(std::span<const ScenarioSpec> scenarios,
                            const WarningConfig& proposed) {
  proposed.Validate();
  CalibrationReport report;
  report.proposed = proposed;
  const auto results = RunAll(scenarios);
  double worst_novel = 0.0;
  double worst_baseline = 0.0;
  for (const auto& r : results) {
    CalibrationRow row;
    row.scenario = r.scenario;
    for (const auto& s : r.trace.samples) {
      row.max_novel = std::max(row.max_novel, s.w_novel);
      row.max_baseline = std::max(row.max_baseline, s.w_baseline);
    }
    row.novel_false_positive = row.max_novel >= proposed.w_thr;
    row.baseline_false_positive = row.max_baseline >= proposed.w_thr_baseline;
    worst_novel = std::max(worst_novel, row.max_novel);
    worst_baseline = std::max(worst_baseline, row.max_baseline);
    report.rows.push_back(row);
  }
  report.chosen = proposed;
  if (worst_novel >= proposed.w_thr) {
    report.chosen.w_thr = NextDecadeStep(worst_novel);
    report.kept_proposed = false;
  }
  if (worst_baseline >= proposed.w_thr_baseline) {
    report.chosen.w_thr_baseline = NextDecadeStep(worst_baseline);
    report.kept_proposed = false;
  }
  return report;
}

}  // namespace hfwarn
