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

#ifndef HFWARN_WARNING_H_
#define HFWARN_WARNING_H_

#include <optional>
#include <vector>

#include "hfwarn/perception.h"
#include "hfwarn/planner.h"
#include "hfwarn/risk.h"
#include "hfwarn/world.h"

namespace hfwarn {

struct WarningConfig {
  double w_thr = 1e-4;           // human-factors system
  double w_thr_baseline = 1e-3;  // constant-velocity baseline

  void Validate() const;
};

struct WarningSample {
  double t = 0.0;
  double w_novel = 0.0;  // objective risk of the perceived plan
  double r_per = 0.0;    // perceived risk of the same plan
  double w_baseline = 0.0;
  bool novel_active = false;
  bool baseline_active = false;
};

struct WarningTrace {
  std::vector<WarningSample> samples;
  std::optional<double> first_novel_warning;
  std::optional<double> first_baseline_warning;

  // Samples must arrive in time order.
  void Append(const WarningSample& sample);
};

struct WarningOnsets {
  std::optional<double> t_novel;
  std::optional<double> t_baseline;
  // t_baseline - t_novel; positive when the human-factors system is earlier.
  std::optional<double> lead;
};

WarningOnsets DetectWarningTimes(const WarningTrace& trace);

// Everything the warning pipeline needs besides the world and the errors.
struct SystemSettings {
  RiskParams risk;
  PlannerParams planner;
  WarningConfig warning;
  LaneChangeOptions lane_change;
  double v_off = 3.0;  // m/s
};

struct StepEvaluation {
  WarningSample sample;
  PlannedBehavior behavior;
  PerceivedWorld perceived;
};

// Risk of `behavior` when the others follow their objective paths at their
// objective speeds.
double ObjectiveRisk(const WorldState& world, const BehaviorCandidate& behavior,
                     const RiskParams& params);

// Constant-velocity warning signal: ego keeps its speed on its current path,
// everyone else keeps theirs.
double BaselineSignal(const WorldState& world, const RiskParams& params);

// Plan on the perceived world, score that plan on the objective world.
StepEvaluation EvaluateStep(const WorldState& world, const ErrorSchedule& schedule, double t,
                            const SystemSettings& settings);

}  // namespace hfwarn

#endif  // HFWARN_WARNING_H_
