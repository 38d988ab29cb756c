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

#include "hfwarn/planner.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hfwarn {

double VelocityProfile::RampTime() const {
  return std::abs(v_target - v_start) / accel_limit;
}

double VelocityProfile::RampAcceleration() const {
  if (v_target > v_start) return accel_limit;
  if (v_target < v_start) return -accel_limit;
  return 0.0;
}

double VelocityProfile::SpeedAt(double tau) const {
  if (tau >= RampTime()) return v_target;
  return v_start + RampAcceleration() * tau;
}

double VelocityProfile::ArcAt(double tau) const {
  const double ramp = RampTime();
  const double a = RampAcceleration();
  if (tau <= ramp) return v_start * tau + 0.5 * a * tau * tau;
  return v_start * ramp + 0.5 * a * ramp * ramp + v_target * (tau - ramp);
}

double VelocityProfile::CommandFor(double dt) const {
  return (SpeedAt(dt) - v_start) / dt;
}

std::vector<double> PlannerParams::DefaultTargets() {
  std::vector<double> v;
  for (int i = 0; i <= 40; ++i) v.push_back(0.5 * i);
  return v;
}

void PlannerParams::Validate() const {
  if (target_velocities.empty()) throw ConfigError("planner needs at least one target velocity");
  for (double v : target_velocities) {
    if (!(v >= 0.0)) throw ConfigError("target velocities must be non-negative");
  }
  if (!(accel_limit > 0.0)) throw ConfigError("planner accel_limit must be positive");
  if (!(v_desired > 0.0)) throw ConfigError("planner v_desired must be positive");
  if (!(u_scale >= 0.0) || !(o_scale >= 0.0)) {
    throw ConfigError("planner utility and comfort scales must be non-negative");
  }
}

std::vector<VelocityProfile> SampleProfiles(double v_current, std::span<const double> targets,
                                            double accel_limit, std::span<const double> times) {
  std::vector<VelocityProfile> out;
  out.reserve(targets.size());
  for (double target : targets) {
    VelocityProfile p;
    p.v_start = v_current;
    p.v_target = target;
    p.accel_limit = accel_limit;
    p.times.assign(times.begin(), times.end());
    p.speeds.reserve(times.size());
    for (double t : times) p.speeds.push_back(p.SpeedAt(t));
    out.push_back(std::move(p));
  }
  return out;
}

double Utility(const VelocityProfile& profile, double v_desired, double u_scale) {
  if (profile.speeds.empty()) return 0.0;
  double sum = 0.0;
  for (double v : profile.speeds) sum += std::min(1.0, v / v_desired);
  return u_scale * sum / static_cast<double>(profile.speeds.size());
}

double ComfortPenalty(const VelocityProfile& profile, double horizon, double o_scale) {
  const double a = profile.RampAcceleration();
  const double ramp = std::min(profile.RampTime(), horizon);
  return o_scale * a * a * ramp / horizon;
}

std::vector<PathCandidate> EgoPathCandidates(const AgentState& ego, const WorldState& world,
                                             const LaneChangeOptions& options) {
  std::vector<PathCandidate> out;
  out.push_back({ego.path, ego.arc_position, false});
  const auto it = options.targets.find(ego.path->id());
  if (it == options.targets.end()) return out;
  for (const auto& target_id : it->second) {
    PathRef target = world.FindPath(target_id);
    if (!target) throw ConfigError("lane change target '" + target_id + "' not found");
    out.push_back({MakeLaneChangePath(*ego.path, *target, ego.arc_position, options.blend_length),
                   0.0, true});
  }
  return out;
}

PredictedTrajectory EgoTrajectory(const AgentState& ego, const PathCandidate& path,
                                  const VelocityProfile& profile) {
  std::vector<double> offsets(profile.times.size());
  for (std::size_t k = 0; k < offsets.size(); ++k) offsets[k] = profile.ArcAt(profile.times[k]);
  return SampleAlongPath(ego.agent_id, ego.extent, *path.path, path.start_arc, profile.times,
                         offsets, profile.speeds);
}

BehaviorCandidate ScoreCandidate(const AgentState& ego, const PathCandidate& path,
                                 const VelocityProfile& profile,
                                 std::span<const PredictedTrajectory> others,
                                 const PlannerParams& planner, const RiskParams& risk) {
  BehaviorCandidate c;
  c.path = path;
  c.profile = profile;
  c.risk = EvaluateTrajectoryRisk(EgoTrajectory(ego, path, profile), others, risk);
  c.cost.risk = c.risk.total;
  c.cost.utility = Utility(profile, planner.v_desired, planner.u_scale);
  c.cost.comfort = ComfortPenalty(profile, risk.horizon, planner.o_scale);
  c.cost.total = c.cost.risk - c.cost.utility + c.cost.comfort;
  return c;
}

bool PreferOnTie(const BehaviorCandidate& a, const BehaviorCandidate& b, double v_current) {
  const double da = std::abs(a.profile.v_target - v_current);
  const double db = std::abs(b.profile.v_target - v_current);
  if (da != db) return da < db;
  if (a.path.lane_change != b.path.lane_change) return !a.path.lane_change;
  return a.profile.v_target < b.profile.v_target;
}

std::size_t SelectBest(std::span<const BehaviorCandidate> candidates, double v_current) {
  if (candidates.empty()) throw std::invalid_argument("SelectBest: no candidates");
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double ci = candidates[i].cost.total;
    const double cb = candidates[best].cost.total;
    if (ci < cb || (ci == cb && PreferOnTie(candidates[i], candidates[best], v_current))) {
      best = i;
    }
  }
  return best;
}

namespace {

struct PlanSetup {
  std::vector<PathCandidate> paths;
  std::vector<VelocityProfile> profiles;
  std::vector<PredictedTrajectory> others;
};

PlanSetup Prepare(const AgentState& ego, const PerceivedWorld& view,
                  std::span<const PathCandidate> paths, const PlannerParams& planner,
                  const RiskParams& risk) {
  if (paths.empty()) throw std::invalid_argument("Plan: no path candidates");
  std::vector<double> targets = planner.target_velocities;
  if (planner.include_current_speed &&
      std::find(targets.begin(), targets.end(), ego.speed) == targets.end()) {
    targets.push_back(ego.speed);
  }
  const std::vector<double> times = risk.TimeGrid();
  PlanSetup s;
  s.paths.assign(paths.begin(), paths.end());
  s.profiles = SampleProfiles(ego.speed, targets, planner.accel_limit, times);
  s.others = PredictOthers(view, times);
  return s;
}

PlannedBehavior Finish(std::vector<BehaviorCandidate> scored, double v_current, ViewKind kind) {
  PlannedBehavior out;
  out.chosen = scored[SelectBest(scored, v_current)];
  out.all_candidates = std::move(scored);
  out.planning_world = kind;
  return out;
}

}  // namespace

PlannedBehavior Plan(const AgentState& ego, const PerceivedWorld& view,
                     std::span<const PathCandidate> paths, const PlannerParams& planner,
                     const RiskParams& risk) {
  const PlanSetup s = Prepare(ego, view, paths, planner, risk);
  const std::size_t np = s.profiles.size();
  const auto n = static_cast<std::ptrdiff_t>(s.paths.size() * np);
  std::vector<BehaviorCandidate> scored(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    scored[u] = ScoreCandidate(ego, s.paths[u / np], s.profiles[u % np], s.others, planner, risk);
  }
  return Finish(std::move(scored), ego.speed, view.kind);
}

PlannedBehavior PlanSerial(const AgentState& ego, const PerceivedWorld& view,
                           std::span<const PathCandidate> paths, const PlannerParams& planner,
                           const RiskParams& risk) {
  const PlanSetup s = Prepare(ego, view, paths, planner, risk);
  std::vector<BehaviorCandidate> scored;
  scored.reserve(s.paths.size() * s.profiles.size());
  for (const auto& path : s.paths) {
    for (const auto& profile : s.profiles) {
      scored.push_back(ScoreCandidate(ego, path, profile, s.others, planner, risk));
    }
  }
  return Finish(std::move(scored), ego.speed, view.kind);
}

}  // namespace hfwarn
