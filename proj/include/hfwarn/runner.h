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

#ifndef HFWARN_RUNNER_H_
#define HFWARN_RUNNER_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hfwarn/scenario.h"
#include "hfwarn/warning.h"
#include "hfwarn/world.h"

namespace hfwarn {

// True when the oriented extent ellipses of two agents intersect.
bool ExtentsOverlap(const AgentState& a, const AgentState& b);

struct AgentRecord {
  std::string agent_id;
  double v_obj = 0.0;
  double v_per = 0.0;
  bool aware = true;
};

struct StepRecord {
  double t = 0.0;
  double ego_speed = 0.0;
  double ego_accel = 0.0;  // command executed after this sample
  Vec2 ego_position;
  std::string ego_path;
  double v_target = 0.0;
  bool lane_change = false;
  std::vector<AgentRecord> agents;
  WarningSample sample;
};

struct SimulationResult {
  std::string scenario;
  std::vector<StepRecord> steps;
  WarningTrace trace;
  WarningOnsets onsets;
  std::optional<double> collision_time;
  std::string collision_with;
};

// Called once per sample, before the world is advanced.
using StepObserver = std::function<void(const WorldState&, const StepEvaluation&)>;

// Receding-horizon closed loop: perceive, plan, warn, then execute the first
// step of the plan. Ends at the duration or at the first collision.
// Throws ConfigError when the scenario does not validate.
SimulationResult RunScenario(const ScenarioSpec& spec, const StepObserver& observer = {});

}  // namespace hfwarn

#endif  // HFWARN_RUNNER_H_
