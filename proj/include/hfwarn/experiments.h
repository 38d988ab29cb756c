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

#ifndef HFWARN_EXPERIMENTS_H_
#define HFWARN_EXPERIMENTS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hfwarn/runner.h"
#include "hfwarn/scenario.h"
#include "hfwarn/warning.h"

namespace hfwarn {

struct ComparisonRow {
  std::string scenario;
  std::optional<double> t_novel;
  std::optional<double> t_baseline;
  std::optional<double> lead;
  std::optional<double> collision;
};

// Runs every scenario (OpenMP across scenarios) and returns the results in
// input order. A failing scenario rethrows with its name attached.
std::vector<SimulationResult> RunAll(std::span<const ScenarioSpec> scenarios);

ComparisonRow Summarize(const SimulationResult& result);

struct CalibrationRow {
  std::string scenario;
  double max_novel = 0.0;
  double max_baseline = 0.0;
  bool novel_false_positive = false;
  bool baseline_false_positive = false;
};

struct CalibrationReport {
  std::vector<CalibrationRow> rows;
  WarningConfig proposed;
  WarningConfig chosen;
  bool kept_proposed = true;
};

// Threshold study on zero-error scenarios. Keeps `proposed` when it raises
// no warning anywhere; otherwise moves the offending threshold to the next
// 1-2-5 step strictly above the corpus maximum.
CalibrationReport Calibrate(std::span<const ScenarioSpec> scenarios,
                            const WarningConfig& proposed);

// Smallest value of the form {1, 2, 5} * 10^k strictly greater than x > 0.
double NextDecadeStep(double x);

}  // namespace hfwarn

#endif  // HFWARN_EXPERIMENTS_H_
