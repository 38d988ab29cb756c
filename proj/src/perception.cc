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

#include "hfwarn/perception.h"

#include <algorithm>
#include <cstdio>
#include <utility>

namespace hfwarn {
namespace {

const AgentErrors kNoErrors{};
const DriverErrors kNoDriverErrors{};

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

const AgentErrors& DriverErrors::For(const std::string& agent_id) const {
  const auto it = per_agent.find(agent_id);
  return it == per_agent.end() ? kNoErrors : it->second;
}

std::vector<std::string> DriverErrors::Violations() const {
  std::vector<std::string> out;
  for (const auto& [id, e] : per_agent) {
    if (!(e.notice >= 0.0 && e.notice <= 1.0)) {
      out.push_back("agent '" + id + "': notice error " + Fmt(e.notice) + " outside [0, 1]");
    }
    if (!(e.forecast >= -1.0 && e.forecast <= 1.0)) {
      out.push_back("agent '" + id + "': forecast error " + Fmt(e.forecast) +
                    " outside [-1, 1]");
    }
    if (!(e.inference >= 0.0 && e.inference <= 1.0)) {
      out.push_back("agent '" + id + "': inference error " + Fmt(e.inference) +
                    " outside [0, 1]");
    }
    if (e.inference >= 0.5 && !e.predicted_path) {
      out.push_back("agent '" + id + "': inference error " + Fmt(e.inference) +
                    " requires a predicted path");
    }
  }
  return out;
}

ErrorSchedule::ErrorSchedule(std::vector<ErrorInterval> intervals)
    : intervals_(std::move(intervals)) {
  std::stable_sort(intervals_.begin(), intervals_.end(),
                   [](const ErrorInterval& a, const ErrorInterval& b) { return a.from < b.from; });
}

ErrorSchedule ErrorSchedule::Constant(DriverErrors errors, double duration) {
  return ErrorSchedule({ErrorInterval{0.0, duration, std::move(errors)}});
}

const DriverErrors& ErrorSchedule::At(double t) const {
  if (intervals_.empty()) return kNoDriverErrors;
  for (const auto& iv : intervals_) {
    if (t >= iv.from && t < iv.to) return iv.errors;
  }
  const auto last = std::max_element(
      intervals_.begin(), intervals_.end(),
      [](const ErrorInterval& a, const ErrorInterval& b) { return a.to < b.to; });
  if (t >= last->to) return last->errors;
  return kNoDriverErrors;
}

Awareness ApplyNoticeError(double notice) {
  if (!(notice >= 0.0 && notice <= 1.0)) {
    throw ValidationError("notice error " + Fmt(notice) + " outside [0, 1]");
  }
  return notice < 0.5 ? Awareness::kAware : Awareness::kNotAware;
}

double ApplyForecastError(double v_obj, double forecast, double v_off) {
  if (!(forecast >= -1.0 && forecast <= 1.0)) {
    throw ValidationError("forecast error " + Fmt(forecast) + " outside [-1, 1]");
  }
  if (!(v_off >= 0.0)) throw ValidationError("v_off must be non-negative");
  return std::max(0.0, v_obj + forecast * v_off);
}

PathRef ApplyInferenceError(const PathRef& p_obj, const PathRef& p_pred, double inference) {
  if (!(inference >= 0.0 && inference <= 1.0)) {
    throw ValidationError("inference error " + Fmt(inference) + " outside [0, 1]");
  }
  if (inference < 0.5) return p_obj;
  if (!p_pred) {
    throw ConfigError("inference error " + Fmt(inference) + " requires a predicted path");
  }
  return p_pred;
}

PathRef ResolvePredictedPath(const PredictedPath& predicted, const AgentState& agent,
                             const WorldState& world) {
  if (const auto* id = std::get_if<std::string>(&predicted)) {
    PathRef p = world.FindPath(*id);
    if (!p) throw ConfigError("predicted path '" + *id + "' is not an available path");
    return p;
  }
  const auto& intent = std::get<LaneChangeIntent>(predicted);
  PathRef target = world.FindPath(intent.target_path_id);
  if (!target) {
    throw ConfigError("lane change target '" + intent.target_path_id +
                      "' is not an available path");
  }
  return MakeLaneChangePath(*agent.path, *target, agent.arc_position, intent.blend_length);
}

PerceivedWorld Perceive(const WorldState& world, const ErrorSchedule& schedule, double t,
                        double v_off) {
  const DriverErrors& errors = schedule.At(t);
  PerceivedWorld out;
  out.time = world.time;
  out.ego = world.ego;
  out.available_paths = world.available_paths;
  out.kind = ViewKind::kPerceived;
  out.others.reserve(world.others.size());
  for (const AgentState& obj : world.others) {
    const AgentErrors& e = errors.For(obj.agent_id);
    PerceivedAgent per{obj, Awareness::kAware};
    try {
      per.awareness = ApplyNoticeError(e.notice);
      per.state.speed = ApplyForecastError(obj.speed, e.forecast, v_off);
      PathRef pred;
      if (e.inference >= 0.5 && e.predicted_path) {
        pred = ResolvePredictedPath(*e.predicted_path, obj, world);
      }
      PathRef path = ApplyInferenceError(obj.path, pred, e.inference);
      if (path != obj.path) {
        per.state.path = path;
        per.state.arc_position = path->Project(obj.position);
        SnapToPath(per.state);
      }
    } catch (const ValidationError& ex) {
      throw ValidationError("agent '" + obj.agent_id + "' at t=" + Fmt(t) + ": " + ex.what());
    } catch (const ConfigError& ex) {
      throw ConfigError("agent '" + obj.agent_id + "' at t=" + Fmt(t) + ": " + ex.what());
    }
    out.others.push_back(std::move(per));
  }
  return out;
}

PerceivedWorld ObjectiveView(const WorldState& world) {
  PerceivedWorld out;
  out.time = world.time;
  out.ego = world.ego;
  out.available_paths = world.available_paths;
  out.kind = ViewKind::kObjective;
  out.others.reserve(world.others.size());
  for (const auto& o : world.others) out.others.push_back({o, Awareness::kAware});
  return out;
}

}  // namespace hfwarn
