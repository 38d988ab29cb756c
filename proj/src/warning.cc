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

#include "hfwarn/warning.h"

#include <stdexcept>

namespace hfwarn {

void WarningConfig::Validate() const {
  if (!(w_thr > 0.0) || !(w_thr_baseline > 0.0)) {
    throw ConfigError("warning thresholds must be positive");
  }
}

void WarningTrace::Append(const WarningSample& sample) {
  if (!samples.empty() && sample.t < samples.back().t) {
    throw std::invalid_argument("warning samples must be time-ordered");
  }
  samples.push_back(sample);
  if (sample.novel_active && !first_novel_warning) first_novel_warning = sample.t;
  if (sample.baseline_active && !first_baseline_warning) first_baseline_warning = sample.t;
}

WarningOnsets DetectWarningTimes(const WarningTrace& trace) {
  WarningOnsets out;
  for (const auto& s : trace.samples) {
    if (s.novel_active && !out.t_novel) out.t_novel = s.t;
    if (s.baseline_active && !out.t_baseline) out.t_baseline = s.t;
  }
  if (out.t_novel && out.t_baseline) out.lead = *out.t_baseline - *out.t_novel;
  return out;
}

double ObjectiveRisk(const WorldState& world, const BehaviorCandidate& behavior,
                     const RiskParams& params) {
  const auto others = PredictOthers(ObjectiveView(world), behavior.profile.times);
  return EvaluateTrajectoryRisk(EgoTrajectory(world.ego, behavior.path, behavior.profile), others,
                                params)
      .total;
}

double BaselineSignal(const WorldState& world, const RiskParams& params) {
  const std::vector<double> times = params.TimeGrid();
  const double v = world.ego.speed;
  const auto profile = SampleProfiles(v, std::span<const double>(&v, 1), 1.0, times).front();
  const PathCandidate current{world.ego.path, world.ego.arc_position, false};
  const auto others = PredictOthers(ObjectiveView(world), times);
  return EvaluateTrajectoryRisk(EgoTrajectory(world.ego, current, profile), others, params).total;
}

StepEvaluation EvaluateStep(const WorldState& world, const ErrorSchedule& schedule, double t,
                            const SystemSettings& settings) {
  StepEvaluation out;
  out.perceived = Perceive(world, schedule, t, settings.v_off);
  const auto paths = EgoPathCandidates(world.ego, world, settings.lane_change);
  out.behavior = Plan(world.ego, out.perceived, paths, settings.planner, settings.risk);

  WarningSample& s = out.sample;
  s.t = t;
  s.r_per = out.behavior.chosen.risk.total;
  s.w_novel = ObjectiveRisk(world, out.behavior.chosen, settings.risk);
  s.w_baseline = BaselineSignal(world, settings.risk);
  s.novel_active = s.w_novel >= settings.warning.w_thr;
  s.baseline_active = s.w_baseline >= settings.warning.w_thr_baseline;
  return out;
}

}  // namespace hfwarn
