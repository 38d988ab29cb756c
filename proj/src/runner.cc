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

#include "hfwarn/runner.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hfwarn {
namespace {

bool BoundaryInside(const AgentState& a, const AgentState& b) {
  constexpr int kSamples = 72;
  const Vec2 ah = FromHeading(a.heading);
  const Vec2 an{-ah.y, ah.x};
  const Vec2 bh = FromHeading(b.heading);
  const Vec2 bn{-bh.y, bh.x};
  for (int i = 0; i < kSamples; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / kSamples;
    const Vec2 p = a.position + (a.extent.half_length * std::cos(phi)) * ah +
                   (a.extent.half_width * std::sin(phi)) * an;
    const Vec2 d = p - b.position;
    const double u = Dot(d, bh) / b.extent.half_length;
    const double v = Dot(d, bn) / b.extent.half_width;
    if (u * u + v * v <= 1.0) return true;
  }
  return false;
}

}  // namespace

bool ExtentsOverlap(const AgentState& a, const AgentState& b) {
  const double reach = std::max(a.extent.half_length, a.extent.half_width) +
                       std::max(b.extent.half_length, b.extent.half_width);
  if (Distance(a.position, b.position) > reach) return false;
  return BoundaryInside(a, b) || BoundaryInside(b, a) ||
         // One ellipse entirely inside the other.
         Distance(a.position, b.position) <
             std::min(a.extent.half_width, b.extent.half_width);
}

SimulationResult RunScenario(const ScenarioSpec& spec, const StepObserver& observer) {
  const auto violations = Validate(spec);
  if (!violations.empty()) {
    std::string msg = "scenario '" + spec.name + "' is invalid:";
    for (const auto& v : violations) msg += "\n  " + v.subject + ": " + v.message;
    throw ConfigError(msg);
  }

  SimulationResult result;
  result.scenario = spec.name;
  WorldState world = InitialWorld(spec);
  const auto n_steps = static_cast<long>(std::llround(spec.duration / spec.dt));
  std::vector<double> accels(world.others.size());
  std::vector<const ScriptedBehavior*> scripts(world.others.size());
  for (std::size_t j = 0; j < world.others.size(); ++j) {
    for (const auto& sb : spec.scripts) {
      if (sb.agent_id == world.others[j].agent_id) scripts[j] = &sb;
    }
  }

  for (long i = 0; i <= n_steps; ++i) {
    const double t = static_cast<double>(i) * spec.dt;
    world.time = t;
    const StepEvaluation eval = EvaluateStep(world, spec.errors, t, spec.settings);
    if (observer) observer(world, eval);

    const BehaviorCandidate& chosen = eval.behavior.chosen;
    StepRecord rec;
    rec.t = t;
    rec.ego_speed = world.ego.speed;
    rec.ego_accel = chosen.profile.CommandFor(spec.dt);
    rec.ego_position = world.ego.position;
    rec.ego_path = world.ego.path->id();
    rec.v_target = chosen.profile.v_target;
    rec.lane_change = chosen.path.lane_change;
    rec.sample = eval.sample;
    for (std::size_t j = 0; j < world.others.size(); ++j) {
      rec.agents.push_back({world.others[j].agent_id, world.others[j].speed,
                            eval.perceived.others[j].state.speed,
                            eval.perceived.others[j].aware()});
    }
    result.trace.Append(eval.sample);
    result.steps.push_back(std::move(rec));
    if (i == n_steps) break;

    if (chosen.path.lane_change) {
      world.ego.path = chosen.path.path;
      world.ego.arc_position = chosen.path.start_arc;
      SnapToPath(world.ego);
      world.available_paths.push_back(chosen.path.path);
    }
    for (std::size_t j = 0; j < world.others.size(); ++j) {
      accels[j] = scripts[j]->AccelCommand(t, world.others[j].speed, spec.dt);
    }
    world = WorldStep(world, result.steps.back().ego_accel, accels, spec.dt);

    for (const auto& o : world.others) {
      if (ExtentsOverlap(world.ego, o)) {
        result.collision_time = static_cast<double>(i + 1) * spec.dt;
        result.collision_with = o.agent_id;
        break;
      }
    }
    if (result.collision_time) break;
  }
  result.onsets = DetectWarningTimes(result.trace);
  return result;
}

}  // namespace hfwarn
