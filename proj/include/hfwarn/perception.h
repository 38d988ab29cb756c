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

#ifndef HFWARN_PERCEPTION_H_
#define HFWARN_PERCEPTION_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hfwarn/path.h"
#include "hfwarn/world.h"

namespace hfwarn {

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Awareness { kAware, kNotAware };

// Driver expects the agent to leave its path for `target_path_id`, starting
// from wherever the agent currently is.
struct LaneChangeIntent {
  std::string target_path_id;
  double blend_length = 30.0;

  friend bool operator==(const LaneChangeIntent&, const LaneChangeIntent&) = default;
};

// The driver's predicted path for another agent: either a fixed path from
// the world's available paths (by id) or a lane-change intent that is
// materialized from the agent's current position at perception time.
using PredictedPath = std::variant<std::string, LaneChangeIntent>;

struct AgentErrors {
  double notice = 0.0;    // NE in [0, 1]
  double forecast = 0.0;  // FE in [-1, 1]
  double inference = 0.0; // IE in [0, 1]
  std::optional<PredictedPath> predicted_path;

  friend bool operator==(const AgentErrors&, const AgentErrors&) = default;
};

// Per-agent driver errors at one instant. Agents without an entry are
// perceived without error.
struct DriverErrors {
  std::map<std::string, AgentErrors> per_agent;

  const AgentErrors& For(const std::string& agent_id) const;
  // Range checks plus the predicted-path requirement for IE >= 0.5.
  std::vector<std::string> Violations() const;

  friend bool operator==(const DriverErrors&, const DriverErrors&) = default;
};

struct ErrorInterval {
  double from = 0.0;
  double to = 0.0;
  DriverErrors errors;
};

// Piecewise-constant driver errors over time. Intervals are half-open
// [from, to). Lookups before the first interval or inside gaps yield no
// error; lookups past the last interval hold its value.
class ErrorSchedule {
 public:
  ErrorSchedule() = default;
  explicit ErrorSchedule(std::vector<ErrorInterval> intervals);

  static ErrorSchedule Constant(DriverErrors errors, double duration);

  const DriverErrors& At(double t) const;
  const std::vector<ErrorInterval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }

 private:
  std::vector<ErrorInterval> intervals_;
};

struct PerceivedAgent {
  AgentState state;
  Awareness awareness = Awareness::kAware;

  bool aware() const { return awareness == Awareness::kAware; }
};

enum class ViewKind { kPerceived, kObjective };

// The world as seen by the ego driver. Not-aware agents stay in the list
// (so per-agent logs stay aligned) and are skipped by risk evaluation.
struct PerceivedWorld {
  double time = 0.0;
  AgentState ego;
  std::vector<PerceivedAgent> others;
  std::vector<PathRef> available_paths;
  ViewKind kind = ViewKind::kPerceived;
};

// Eq. of the notice interface: aware iff NE < 0.5.
Awareness ApplyNoticeError(double notice);

// v_per = max(0, v_obj + FE * v_off).
double ApplyForecastError(double v_obj, double forecast, double v_off);

// p_obj for IE < 0.5, otherwise p_pred. Throws ConfigError when p_pred is
// required but null.
PathRef ApplyInferenceError(const PathRef& p_obj, const PathRef& p_pred,
                            double inference);

// Resolves a predicted path for `agent` against the world's paths.
PathRef ResolvePredictedPath(const PredictedPath& predicted, const AgentState& agent,
                             const WorldState& world);

PerceivedWorld Perceive(const WorldState& world, const ErrorSchedule& schedule,
                        double t, double v_off);

// The undistorted view: every agent aware, objective speeds and paths.
PerceivedWorld ObjectiveView(const WorldState& world);

}  // namespace hfwarn

#endif  // HFWARN_PERCEPTION_H_
