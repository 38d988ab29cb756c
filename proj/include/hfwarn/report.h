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

#ifndef HFWARN_REPORT_H_
#define HFWARN_REPORT_H_

#include <optional>
#include <ostream>
#include <span>
#include <string>

#include "hfwarn/experiments.h"
#include "hfwarn/risk.h"
#include "hfwarn/runner.h"

namespace hfwarn {

// Shortest decimal text that survives a %.9g round trip; empty for nullopt.
std::string FormatNumber(double v);
std::string FormatOptional(const std::optional<double>& v);

// trace.csv. Column order:
//   t, ego_v, ego_a, ego_x, ego_y,
//   <id>_v_obj, <id>_v_per, <id>_aware   (per other agent, scenario order)
//   R_per, R_obj, W_novel, W_baseline, novel_active, baseline_active,
//   v_target, lane_change, ego_path
// R_obj and W_novel carry the same value.
void WriteTraceCsv(std::ostream& out, const SimulationResult& result);

// key: value lines; absent times are written as "none".
void WriteSummary(std::ostream& out, const SimulationResult& result,
                  const WarningConfig& config);

// Header row of velocities, then one row per time step led by its tau.
void WriteRiskMapCsv(std::ostream& out, const RiskMap& map);

// W(t) for both systems on a log axis with their thresholds.
void WriteWarningSvg(std::ostream& out, const SimulationResult& result,
                     const WarningConfig& config);
// Ego speed and acceleration over time.
void WriteVelocityAccelSvg(std::ostream& out, const SimulationResult& result);

void WriteComparisonCsv(std::ostream& out, std::span<const ComparisonRow> rows);
void WriteComparisonTable(std::ostream& out, std::span<const ComparisonRow> rows);

void WriteCalibrationCsv(std::ostream& out, const CalibrationReport& report);
void WriteCalibrationText(std::ostream& out, const CalibrationReport& report);

}  // namespace hfwarn

#endif  // HFWARN_REPORT_H_
