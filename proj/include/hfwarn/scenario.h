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

#ifndef HFWARN_SCENARIO_H_
#define HFWARN_SCENARIO_H_

#include <string>
#include <vector>

#include "hfwarn/path.h"
#include "hfwarn/perception.h"
#include "hfwarn/planner.h"
#include "hfwarn/risk.h"
#include "hfwarn/warning.h"
#include "hfwarn/world.h"

namespace hfwarn {

struct SpeedCommand {
  double from = 0.0;
  double to = 0.0;
  double speed = 0.0;
};

// Fixed behavior of a non-ego agent: piecewise-constant target speeds,
// tracked with a bounded acceleration.
struct ScriptedBehavior {
  std::string agent_id;
  std::vector<SpeedCommand> commands;
  double accel_limit = 4.0;

  // Target speed at t; nullopt-free: falls back to the last command.
  double TargetSpeedAt(double t) const;
  double AccelCommand(double t, double current_speed, double dt) const;
};

struct AgentSetup {
  std::string id;
  std::string path_id;
  double arc_position = 0.0;
  double speed = 0.0;
  Extent extent;
};

struct ScenarioSpec {
  std::string name;
  std::string description;
  double duration = 15.0;  // s
  double dt = 0.1;         // s
  std::vector<PathRef> paths;
  AgentSetup ego;
  std::vector<AgentSetup> agents;
  std::vector<ScriptedBehavior> scripts;  // one per agent
  ErrorSchedule errors;
  SystemSettings settings;  // planner.v_desired, v_off, risk, thresholds
};

struct Violation {
  std::string subject;
  std::string message;
};

// Every violated invariant of the scenario; empty means runnable.
std::vector<Violation> Validate(const ScenarioSpec& spec);

// Builds the initial world. Throws ConfigError on unresolvable paths.
WorldState InitialWorld(const ScenarioSpec& spec);

// The six experiments: lane change with no error, notice, forecast and
// inference errors on the rear car, and the two intersection cases.
std::vector<ScenarioSpec> BuiltinScenarios();

// Zero-error scenarios used to pick warning thresholds: the no-error lane
// change plus two car-following and two intersection runs.
std::vector<ScenarioSpec> CalibrationScenarios();

// Looks up a builtin or calibration scenario by name. Throws ConfigError.
ScenarioSpec FindScenario(const std::string& name);

// Default vehicle sizes.
inline constexpr Extent kMotorcycleExtent{2.0, 0.9};
inline constexpr Extent kCarExtent{2.3, 1.0};

}  // namespace hfwarn

#endif  // HFWARN_SCENARIO_H_
