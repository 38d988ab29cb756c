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

#ifndef HFWARN_WORLD_H_
#define HFWARN_WORLD_H_

#include <span>
#include <string>
#include <vector>

#include "hfwarn/geometry.h"
#include "hfwarn/path.h"

namespace hfwarn {

// A path-bound agent. Position and heading are always derived from the path
// at arc_position.
struct AgentState {
  std::string agent_id;
  Vec2 position;
  double heading = 0.0;
  double speed = 0.0;
  double acceleration = 0.0;
  PathRef path;
  double arc_position = 0.0;
  Extent extent;
  // Reached the end of its path; held there from then on.
  bool finished = false;

  Vec2 velocity() const { return speed * FromHeading(heading); }
};

// Places an agent on `path` at `arc_position` with pose derived from the path.
AgentState MakeAgent(std::string agent_id, PathRef path, double arc_position,
                     double speed, Extent extent);

// Re-derives position and heading from the path after arc_position changed.
void SnapToPath(AgentState& agent);

struct WorldState {
  double time = 0.0;
  AgentState ego;
  std::vector<AgentState> others;
  std::vector<PathRef> available_paths;

  PathRef FindPath(const std::string& id) const;
};

// Checks unique ids and that every agent path resolves to available_paths.
// Returns human-readable violations; empty means valid.
std::vector<std::string> CheckWorld(const WorldState& world);

// Constant-acceleration kinematics along the path. Speed never goes
// negative: a braking command stops the agent where v^2 / (2|a|) runs out.
// Throws std::invalid_argument when dt <= 0.
AgentState AdvanceAgent(const AgentState& state, double accel_command, double dt);

// Advances the ego and every other agent by dt. `other_accels` holds one
// command per entry of world.others.
WorldState WorldStep(const WorldState& world, double ego_accel,
                     std::span<const double> other_accels, double dt);

}  // namespace hfwarn

#endif  // HFWARN_WORLD_H_
