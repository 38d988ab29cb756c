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

#include "hfwarn/world.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace hfwarn {

AgentState MakeAgent(std::string agent_id, PathRef path, double arc_position,
                     double speed, Extent extent) {
  AgentState a;
  a.agent_id = std::move(agent_id);
  a.path = std::move(path);
  a.arc_position = arc_position;
  a.speed = speed;
  a.extent = extent;
  SnapToPath(a);
  return a;
}

void SnapToPath(AgentState& agent) {
  agent.position = agent.path->PointAt(agent.arc_position);
  agent.heading = agent.path->HeadingAt(agent.arc_position);
}

PathRef WorldState::FindPath(const std::string& id) const {
  for (const auto& p : available_paths) {
    if (p->id() == id) return p;
  }
  return nullptr;
}

std::vector<std::string> CheckWorld(const WorldState& world) {
  std::vector<std::string> out;
  std::set<std::string> ids;
  auto check = [&](const AgentState& a) {
    if (!ids.insert(a.agent_id).second) {
      out.push_back("duplicate agent id '" + a.agent_id + "'");
    }
    if (!a.path) {
      out.push_back("agent '" + a.agent_id + "' has no path");
      return;
    }
    const bool resolved = std::any_of(
        world.available_paths.begin(), world.available_paths.end(),
        [&](const PathRef& p) { return p == a.path || p->id() == a.path->id(); });
    if (!resolved) {
      out.push_back("agent '" + a.agent_id + "' path '" + a.path->id() +
                    "' is not among the available paths");
    }
    if (a.speed < 0.0) out.push_back("agent '" + a.agent_id + "' has negative speed");
  };
  check(world.ego);
  for (const auto& o : world.others) check(o);
  return out;
}

AgentState AdvanceAgent(const AgentState& state, double accel_command, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("AdvanceAgent: dt must be positive");
  AgentState next = state;
  if (state.finished) {
    next.acceleration = 0.0;
    return next;
  }
  const double v = state.speed;
  double displacement;
  double v_next;
  if (accel_command < 0.0 && v + accel_command * dt < 0.0) {
    // Stops inside the step.
    displacement = v * v / (2.0 * -accel_command);
    v_next = 0.0;
    next.acceleration = -v / dt;
  } else {
    displacement = v * dt + 0.5 * accel_command * dt * dt;
    v_next = v + accel_command * dt;
    next.acceleration = accel_command;
  }
  next.speed = v_next;
  next.arc_position = state.arc_position + displacement;
  const double end = state.path->length();
  if (next.arc_position >= end) {
    next.arc_position = end;
    next.finished = true;
  }
  SnapToPath(next);
  return next;
}

WorldState WorldStep(const WorldState& world, double ego_accel,
                     std::span<const double> other_accels, double dt) {
  if (other_accels.size() != world.others.size()) {
    throw std::invalid_argument("WorldStep: expected one command per other agent");
  }
  WorldState next;
  next.time = world.time + dt;
  next.available_paths = world.available_paths;
  next.ego = AdvanceAgent(world.ego, ego_accel, dt);
  next.others.reserve(world.others.size());
  for (std::size_t j = 0; j < world.others.size(); ++j) {
    next.others.push_back(AdvanceAgent(world.others[j], other_accels[j], dt));
  }
  return next;
}

}  // namespace hfwarn
