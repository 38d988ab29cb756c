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

#include "hfwarn/scenario.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

namespace hfwarn {
namespace {

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// Intervals [from, to) sorted by start must cover [0, end] without holes.
template <typename Interval>
std::vector<std::string> CoverageGaps(std::vector<Interval> iv, double end) {
  std::vector<std::string> out;
  if (iv.empty()) {
    out.push_back("no intervals");
    return out;
  }
  std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) { return a.from < b.from; });
  double covered = 0.0;
  if (iv.front().from > 0.0) {
    out.push_back("gap [0, " + Fmt(iv.front().from) + ")");
  }
  covered = iv.front().to;
  for (std::size_t i = 1; i < iv.size(); ++i) {
    if (iv[i].from > covered) out.push_back("gap [" + Fmt(covered) + ", " + Fmt(iv[i].from) + ")");
    covered = std::max(covered, iv[i].to);
  }
  if (covered < end) out.push_back("gap [" + Fmt(covered) + ", " + Fmt(end) + "]");
  for (const auto& i : iv) {
    if (!(i.to > i.from)) out.push_back("empty interval at " + Fmt(i.from));
  }
  return out;
}

PathRef Find(const std::vector<PathRef>& paths, const std::string& id) {
  for (const auto& p : paths) {
    if (p->id() == id) return p;
  }
  return nullptr;
}

}  // namespace

double ScriptedBehavior::TargetSpeedAt(double t) const {
  for (const auto& c : commands) {
    if (t >= c.from && t < c.to) return c.speed;
  }
  return commands.empty() ? 0.0 : commands.back().speed;
}

double ScriptedBehavior::AccelCommand(double t, double current_speed, double dt) const {
  const double wanted = (TargetSpeedAt(t) - current_speed) / dt;
  return std::clamp(wanted, -accel_limit, accel_limit);
}

std::vector<Violation> Validate(const ScenarioSpec& spec) {
  std::vector<Violation> out;
  auto add = [&](std::string subject, std::string message) {
    out.push_back({std::move(subject), std::move(message)});
  };

  if (spec.name.empty()) add("scenario", "name is empty");
  if (!(spec.duration > 0.0)) add("duration", "must be positive, got " + Fmt(spec.duration));
  if (!(spec.dt > 0.0)) add("dt", "must be positive, got " + Fmt(spec.dt));
  else if (spec.dt > spec.duration) add("dt", "exceeds duration");

  std::set<std::string> path_ids;
  for (const auto& p : spec.paths) {
    if (!p) {
      add("paths", "null path");
      continue;
    }
    if (!path_ids.insert(p->id()).second) add("path '" + p->id() + "'", "duplicate id");
  }

  std::set<std::string> agent_ids;
  auto check_agent = [&](const AgentSetup& a, const std::string& role) {
    const std::string who = role + " '" + a.id + "'";
    if (a.id.empty()) add(role, "agent id is empty");
    if (!agent_ids.insert(a.id).second) add(who, "duplicate agent id");
    const PathRef p = Find(spec.paths, a.path_id);
    if (!p) {
      add(who + " path", "'" + a.path_id + "' does not resolve to a scenario path");
    } else if (a.arc_position < 0.0 || a.arc_position > p->length()) {
      add(who + " arc_position", Fmt(a.arc_position) + " outside path length " +
                                     Fmt(p->length()));
    }
    if (!(a.speed >= 0.0)) add(who + " speed", "must be non-negative");
    if (!(a.extent.half_length > 0.0 && a.extent.half_width > 0.0)) {
      add(who + " extent", "must be positive");
    }
  };
  check_agent(spec.ego, "ego");
  for (const auto& a : spec.agents) check_agent(a, "agent");

  std::set<std::string> scripted;
  for (const auto& s : spec.scripts) {
    const std::string who = "script '" + s.agent_id + "'";
    const bool known = std::any_of(spec.agents.begin(), spec.agents.end(),
                                   [&](const AgentSetup& a) { return a.id == s.agent_id; });
    if (!known) add(who, "refers to an unknown agent");
    if (!scripted.insert(s.agent_id).second) add(who, "duplicate script");
    for (const auto& gap : CoverageGaps(s.commands, spec.duration)) add(who, gap);
    for (const auto& c : s.commands) {
      if (!(c.speed >= 0.0)) add(who, "negative speed command at " + Fmt(c.from));
    }
    if (!(s.accel_limit > 0.0)) add(who, "accel_limit must be positive");
  }
  for (const auto& a : spec.agents) {
    if (!scripted.count(a.id)) add("agent '" + a.id + "'", "has no scripted behavior");
  }

  if (!spec.errors.empty()) {
    for (const auto& gap : CoverageGaps(spec.errors.intervals(), spec.duration)) {
      add("error schedule", gap);
    }
  }
  for (const auto& iv : spec.errors.intervals()) {
    const std::string when = "error schedule [" + Fmt(iv.from) + ", " + Fmt(iv.to) + ")";
    for (const auto& v : iv.errors.Violations()) add(when, v);
    for (const auto& [id, e] : iv.errors.per_agent) {
      if (!agent_ids.count(id) || id == spec.ego.id) add(when, "unknown agent '" + id + "'");
      if (!e.predicted_path) continue;
      const std::string target =
          std::holds_alternative<std::string>(*e.predicted_path)
              ? std::get<std::string>(*e.predicted_path)
              : std::get<LaneChangeIntent>(*e.predicted_path).target_path_id;
      if (!path_ids.count(target)) {
        add(when, "predicted path '" + target + "' of agent '" + id + "' does not resolve");
      }
    }
  }

  for (const auto& [from, targets] : spec.settings.lane_change.targets) {
    if (!path_ids.count(from)) add("lane_change", "unknown lane '" + from + "'");
    for (const auto& t : targets) {
      if (!path_ids.count(t)) add("lane_change", "unknown target lane '" + t + "'");
    }
  }
  if (!(spec.settings.lane_change.blend_length > 0.0)) {
    add("lane_change", "blend_length must be positive");
  }
  if (!(spec.settings.v_off >= 0.0)) add("v_off", "must be non-negative");

  auto check_config = [&](const char* subject, auto&& fn) {
    try {
      fn();
    } catch (const ConfigError& e) {
      add(subject, e.what());
    }
  };
  check_config("risk", [&] { spec.settings.risk.Validate(); });
  check_config("planner", [&] { spec.settings.planner.Validate(); });
  check_config("warning", [&] { spec.settings.warning.Validate(); });
  return out;
}

WorldState InitialWorld(const ScenarioSpec& spec) {
  WorldState w;
  w.time = 0.0;
  w.available_paths = spec.paths;
  auto build = [&](const AgentSetup& a) {
    PathRef p = Find(spec.paths, a.path_id);
    if (!p) throw ConfigError("agent '" + a.id + "' path '" + a.path_id + "' not found");
    return MakeAgent(a.id, p, a.arc_position, a.speed, a.extent);
  };
  w.ego = build(spec.ego);
  for (const auto& a : spec.agents) w.others.push_back(build(a));
  return w;
}

namespace {

ScriptedBehavior Constant(const std::string& id, double speed, double duration) {
  return {id, {{0.0, duration, speed}}, 4.0};
}

// Speed targets capped at a speed limit, 0.5 m/s apart.
std::vector<double> TargetsUpTo(double v_max) {
  std::vector<double> out;
  for (int i = 0; 0.5 * i <= v_max + 1e-9; ++i) out.push_back(0.5 * i);
  return out;
}

// Gentle driver on an urban crossing: 1 m/s^2 and no speeding.
void UrbanDriver(ScenarioSpec& s) {
  s.settings.planner.accel_limit = 1.0;
  s.settings.planner.target_velocities = TargetsUpTo(s.settings.planner.v_desired);
}

DriverErrors ErrorsFor(const std::string& id, AgentErrors e) {
  DriverErrors d;
  d.per_agent.emplace(id, std::move(e));
  return d;
}

// Two parallel lanes along +x; lane_1 is the passing lane on the left.
ScenarioSpec LaneChangeBase(std::string name, std::string description) {
  ScenarioSpec s;
  s.name = std::move(name);
  s.description = std::move(description);
  s.duration = 15.0;
  s.dt = 0.1;
  s.paths = {MakePath("lane_0", {{-200.0, 0.0}, {800.0, 0.0}}),
             MakePath("lane_1", {{-200.0, 3.5}, {800.0, 3.5}})};
  s.ego = {"ego", "lane_0", 200.0, 10.0, kMotorcycleExtent};
  s.agents = {{"lead", "lane_0", 240.0, 7.0, kCarExtent},
              {"rear", "lane_1", 168.0, 12.0, kCarExtent}};
  s.scripts = {Constant("lead", 7.0, s.duration), Constant("rear", 12.0, s.duration)};
  s.settings.lane_change.targets = {{"lane_0", {"lane_1"}}};
  s.settings.lane_change.blend_length = 30.0;
  s.settings.planner.v_desired = 10.0;
  s.settings.v_off = 3.0;
  return s;
}

// Ego drives +x through the origin; the crossing road runs +y.
ScenarioSpec IntersectionBase(std::string name, std::string description) {
  ScenarioSpec s;
  s.name = std::move(name);
  s.description = std::move(description);
  s.duration = 12.0;
  s.dt = 0.1;
  s.paths = {MakePath("main_road", {{-200.0, 0.0}, {300.0, 0.0}}),
             MakePath("cross_road", {{0.0, -200.0}, {0.0, 300.0}})};
  s.settings.planner.v_desired = 10.0;
  s.settings.v_off = 3.0;
  return s;
}

}  // namespace

std::vector<ScenarioSpec> BuiltinScenarios() {
  std::vector<ScenarioSpec> out;

  out.push_back(LaneChangeBase("lane_change_no_error",
                               "Motorcycle passes a slower lead car; rider perceives everything."));

  {
    auto s = LaneChangeBase("lane_change_notice",
                            "Rider is unaware of the car approaching on the passing lane.");
    s.errors = ErrorSchedule::Constant(ErrorsFor("rear", {1.0, 0.0, 0.0, {}}), s.duration);
    out.push_back(std::move(s));
  }
  {
    auto s = LaneChangeBase("lane_change_forecast",
                            "Rider overestimates the speed of the car on the passing lane.");
    // The fast car comes from far back, passes, then slows down ahead of the
    // rider who merged behind it. The rider never speeds, so the lane only
    // opens once the car is past.
    s.agents = {{"lead", "lane_0", 270.0, 7.0, kCarExtent},
                {"rear", "lane_1", 135.0, 17.0, kCarExtent}};
    s.scripts = {Constant("lead", 7.0, s.duration),
                 {"rear", {{0.0, 9.0, 17.0}, {9.0, s.duration, 8.0}}, 2.0}};
    s.settings.planner.target_velocities = TargetsUpTo(s.settings.planner.v_desired);
    s.errors = ErrorSchedule::Constant(ErrorsFor("rear", {0.0, 1.0, 0.0, {}}), s.duration);
    out.push_back(std::move(s));
  }
  {
    auto s = LaneChangeBase("lane_change_inference",
                            "Rider expects the passing-lane car to move into the rider's lane.");
    s.errors = ErrorSchedule::Constant(
        ErrorsFor("rear", {0.0, 0.0, 1.0, PredictedPath{LaneChangeIntent{"lane_0", 30.0}}}),
        s.duration);
    out.push_back(std::move(s));
  }
  {
    auto s = IntersectionBase("intersection_priority",
                              "Crossing car ignores the ego's right of way; its speed is misjudged.");
    s.ego = {"ego", "main_road", 140.0, 10.0, kCarExtent};
    s.agents = {{"crossing", "cross_road", 110.0, 10.0, kCarExtent}};
    s.scripts = {Constant("crossing", 10.0, s.duration)};
    UrbanDriver(s);
    s.errors = ErrorSchedule::Constant(ErrorsFor("crossing", {0.0, 1.0, 0.0, {}}), s.duration);
    out.push_back(std::move(s));
  }
  {
    auto s = IntersectionBase("intersection_occlusion",
                              "A parked car hides the crossing car from the motorcycle rider.");
    s.paths.push_back(MakePath("shoulder", {{-200.0, -6.0}, {300.0, -6.0}}));
    s.ego = {"ego", "main_road", 140.0, 5.0, kMotorcycleExtent};
    s.agents = {{"crossing", "cross_road", 130.0, 10.0, kCarExtent},
                {"parked", "shoulder", 190.0, 0.0, kCarExtent}};
    s.scripts = {Constant("crossing", 10.0, s.duration), Constant("parked", 0.0, s.duration)};
    UrbanDriver(s);
    s.errors = ErrorSchedule::Constant(ErrorsFor("crossing", {1.0, 0.0, 0.0, {}}), s.duration);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ScenarioSpec> CalibrationScenarios() {
  std::vector<ScenarioSpec> out;
  out.push_back(BuiltinScenarios().front());
  {
    ScenarioSpec s;
    s.name = "calibration_following_steady";
    s.description = "Ego follows a steady lead car on a single lane.";
    s.duration = 15.0;
    s.paths = {MakePath("lane_0", {{-200.0, 0.0}, {800.0, 0.0}})};
    s.ego = {"ego", "lane_0", 200.0, 9.0, kCarExtent};
    s.agents = {{"lead", "lane_0", 235.0, 9.0, kCarExtent}};
    s.scripts = {Constant("lead", 9.0, s.duration)};
    s.settings.planner.v_desired = 10.0;
    out.push_back(std::move(s));
  }
  {
    ScenarioSpec s;
    s.name = "calibration_following_slowdown";
    s.description = "Lead car slows down gently; ego follows.";
    s.duration = 15.0;
    s.paths = {MakePath("lane_0", {{-200.0, 0.0}, {800.0, 0.0}})};
    s.ego = {"ego", "lane_0", 200.0, 10.0, kCarExtent};
    s.agents = {{"lead", "lane_0", 240.0, 10.0, kCarExtent}};
    s.scripts = {{"lead", {{0.0, 4.0, 10.0}, {4.0, s.duration, 6.0}}, 1.0}};
    s.settings.planner.v_desired = 10.0;
    out.push_back(std::move(s));
  }
  {
    auto s = IntersectionBase("calibration_intersection_clear",
                              "Crossing car clears the intersection well before the ego.");
    s.ego = {"ego", "main_road", 150.0, 10.0, kCarExtent};
    s.agents = {{"crossing", "cross_road", 180.0, 10.0, kCarExtent}};
    s.scripts = {Constant("crossing", 10.0, s.duration)};
    UrbanDriver(s);
    out.push_back(std::move(s));
  }
  {
    auto s = IntersectionBase("calibration_intersection_after",
                              "Ego crosses well before the crossing car arrives.");
    s.ego = {"ego", "main_road", 170.0, 10.0, kCarExtent};
    s.agents = {{"crossing", "cross_road", 120.0, 8.0, kCarExtent},
                {"lead", "main_road", 200.0, 10.0, kCarExtent}};
    s.scripts = {Constant("crossing", 8.0, s.duration), Constant("lead", 10.0, s.duration)};
    UrbanDriver(s);
    out.push_back(std::move(s));
  }
  return out;
}

ScenarioSpec FindScenario(const std::string& name) {
  for (auto& s : BuiltinScenarios()) {
    if (s.name == name) return s;
  }
  for (auto& s : CalibrationScenarios()) {
    if (s.name == name) return s;
  }
  throw ConfigError("unknown scenario '" + name + "'");
}

}  // namespace hfwarn
