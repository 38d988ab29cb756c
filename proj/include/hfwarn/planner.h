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

#ifndef HFWARN_PLANNER_H_
#define HFWARN_PLANNER_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "hfwarn/path.h"
#include "hfwarn/perception.h"
#include "hfwarn/risk.h"
#include "hfwarn/world.h"

namespace hfwarn {

// Trapezoidal velocity profile: ramp from v_start toward v_target at
// accel_limit, then hold. Evaluated in closed form; `times`/`speeds` are the
// samples on the risk time grid.
struct VelocityProfile {
  double v_start = 0.0;
  double v_target = 0.0;
  double accel_limit = 4.0;
  std::vector<double> times;
  std::vector<double> speeds;

  double RampTime() const;
  double SpeedAt(double tau) const;
  // Distance travelled after tau seconds.
  double ArcAt(double tau) const;
  // Acceleration during the ramp (zero when holding).
  double RampAcceleration() const;
  // Mean acceleration over [0, dt]; what the vehicle executes next step.
  double CommandFor(double dt) const;
};

struct PlannerParams {
  std::vector<double> target_velocities = DefaultTargets();
  double accel_limit = 4.0;   // m/s^2
  double v_desired = 10.0;    // m/s
  double u_scale = 5e-4;
  double o_scale = 1e-6;
  // Adds the ego's current speed to the targets so "keep speed" is always
  // a candidate.
  bool include_current_speed = true;

  static std::vector<double> DefaultTargets();  // 0..20 m/s in 0.5 steps
  void Validate() const;
};

// Which lanes the ego may change into, keyed by the lane it is on.
struct LaneChangeOptions {
  std::map<std::string, std::vector<std::string>> targets;
  double blend_length = 30.0;
};

struct PathCandidate {
  PathRef path;
  double start_arc = 0.0;
  bool lane_change = false;
};

struct CostBreakdown {
  double risk = 0.0;
  double utility = 0.0;
  double comfort = 0.0;
  double total = 0.0;  // risk - utility + comfort
};

struct BehaviorCandidate {
  PathCandidate path;
  VelocityProfile profile;
  CostBreakdown cost;
  TrajectoryRisk risk;
};

struct PlannedBehavior {
  BehaviorCandidate chosen;
  std::vector<BehaviorCandidate> all_candidates;
  ViewKind planning_world = ViewKind::kPerceived;
};

std::vector<VelocityProfile> SampleProfiles(double v_current, std::span<const double> targets,
                                            double accel_limit, std::span<const double> times);

// u_scale * mean over samples of min(1, v / v_desired).
double Utility(const VelocityProfile& profile, double v_desired, double u_scale);

// o_scale * mean squared acceleration over the horizon (exact integral).
double ComfortPenalty(const VelocityProfile& profile, double horizon, double o_scale);

// Keep the current path, plus one lane change per configured target when
// the ego is on a lane listed in `options`.
std::vector<PathCandidate> EgoPathCandidates(const AgentState& ego, const WorldState& world,
                                             const LaneChangeOptions& options);

// Ego trajectory along a candidate path following a velocity profile.
PredictedTrajectory EgoTrajectory(const AgentState& ego, const PathCandidate& path,
                                  const VelocityProfile& profile);

// Scores one (path, profile) pair against pre-computed predictions.
BehaviorCandidate ScoreCandidate(const AgentState& ego, const PathCandidate& path,
                                 const VelocityProfile& profile,
                                 std::span<const PredictedTrajectory> others,
                                 const PlannerParams& planner, const RiskParams& risk);

// Deterministic preference between equal-cost candidates: smaller
// |v_target - v_current|, then keep-lane, then lower v_target.
bool PreferOnTie(const BehaviorCandidate& a, const BehaviorCandidate& b, double v_current);

// Index of the minimum-cost candidate under PreferOnTie. Fixed-order scan.
std::size_t SelectBest(std::span<const BehaviorCandidate> candidates, double v_current);

// Evaluates every (path, profile) pair on `view` and returns the argmin of
// C = R - U + O. Candidate scoring runs under OpenMP.
PlannedBehavior Plan(const AgentState& ego, const PerceivedWorld& view,
                     std::span<const PathCandidate> paths, const PlannerParams& planner,
                     const RiskParams& risk);
// Single-threaded reference; bitwise identical to Plan.
PlannedBehavior PlanSerial(const AgentState& ego, const PerceivedWorld& view,
                           std::span<const PathCandidate> paths, const PlannerParams& planner,
                           const RiskParams& risk);

}  // namespace hfwarn

#endif  // HFWARN_PLANNER_H_
