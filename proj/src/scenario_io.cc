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

#include "hfwarn/scenario_io.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hfwarn {
namespace {

using Json = nlohmann::ordered_json;

template <typename T>
T Get(const Json& j, const char* key, T fallback) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->template get<T>();
}

const Json& Require(const Json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError(where + ": missing required key '" + key + "'");
  return *it;
}

Json ExtentToJson(const Extent& e) {
  return {{"half_length", e.half_length}, {"half_width", e.half_width}};
}

Extent ExtentFromJson(const Json& j) {
  Extent e;
  e.half_length = Get(j, "half_length", e.half_length);
  e.half_width = Get(j, "half_width", e.half_width);
  return e;
}

Json AgentToJson(const AgentSetup& a) {
  return {{"id", a.id},
          {"path", a.path_id},
          {"arc_position", a.arc_position},
          {"speed", a.speed},
          {"extent", ExtentToJson(a.extent)}};
}

AgentSetup AgentFromJson(const Json& j, const std::string& where) {
  AgentSetup a;
  a.id = Require(j, "id", where).get<std::string>();
  a.path_id = Require(j, "path", where + " '" + a.id + "'").get<std::string>();
  a.arc_position = Get(j, "arc_position", 0.0);
  a.speed = Get(j, "speed", 0.0);
  if (j.contains("extent")) a.extent = ExtentFromJson(j.at("extent"));
  return a;
}

Json PredictedPathToJson(const PredictedPath& p) {
  if (const auto* id = std::get_if<std::string>(&p)) return *id;
  const auto& lc = std::get<LaneChangeIntent>(p);
  return {{"lane_change_to", lc.target_path_id}, {"blend_length", lc.blend_length}};
}

PredictedPath PredictedPathFromJson(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  LaneChangeIntent lc;
  lc.target_path_id = Require(j, "lane_change_to", "predicted_path").get<std::string>();
  lc.blend_length = Get(j, "blend_length", lc.blend_length);
  return lc;
}

Json RiskToJson(const RiskParams& r) {
  return {{"sigma_base", r.sigma_base},
          {"sigma_growth", r.sigma_growth},
          {"lateral_sigma_base", r.lateral_sigma_base},
          {"lateral_sigma_growth", r.lateral_sigma_growth},
          {"severity_scale", r.severity_scale},
          {"event_rate_scale", r.event_rate_scale},
          {"horizon", r.horizon},
          {"map_time_steps", r.map_time_steps},
          {"map_velocity_steps", r.map_velocity_steps},
          {"v_max", r.v_max}};
}

RiskParams RiskFromJson(const Json& j) {
  RiskParams r;
  r.sigma_base = Get(j, "sigma_base", r.sigma_base);
  r.sigma_growth = Get(j, "sigma_growth", r.sigma_growth);
  r.lateral_sigma_base = Get(j, "lateral_sigma_base", r.lateral_sigma_base);
  r.lateral_sigma_growth = Get(j, "lateral_sigma_growth", r.lateral_sigma_growth);
  r.severity_scale = Get(j, "severity_scale", r.severity_scale);
  r.event_rate_scale = Get(j, "event_rate_scale", r.event_rate_scale);
  r.horizon = Get(j, "horizon", r.horizon);
  r.map_time_steps = Get(j, "map_time_steps", r.map_time_steps);
  r.map_velocity_steps = Get(j, "map_velocity_steps", r.map_velocity_steps);
  r.v_max = Get(j, "v_max", r.v_max);
  return r;
}

Json ToJson(const ScenarioSpec& s) {
  Json j;
  j["name"] = s.name;
  j["description"] = s.description;
  j["duration"] = s.duration;
  j["dt"] = s.dt;
  j["v_desired"] = s.settings.planner.v_desired;
  j["v_off"] = s.settings.v_off;

  Json paths = Json::array();
  for (const auto& p : s.paths) {
    Json pts = Json::array();
    for (const Vec2& v : p->centerline()) pts.push_back({v.x, v.y});
    paths.push_back({{"id", p->id()}, {"lane_width", p->lane_width()}, {"centerline", pts}});
  }
  j["paths"] = paths;
  j["ego"] = AgentToJson(s.ego);

  Json agents = Json::array();
  for (const auto& a : s.agents) {
    Json ja = AgentToJson(a);
    for (const auto& sb : s.scripts) {
      if (sb.agent_id != a.id) continue;
      Json cmds = Json::array();
      for (const auto& c : sb.commands) {
        cmds.push_back({{"from", c.from}, {"to", c.to}, {"speed", c.speed}});
      }
      ja["script"] = {{"accel_limit", sb.accel_limit}, {"commands", cmds}};
    }
    agents.push_back(ja);
  }
  j["agents"] = agents;

  Json targets = Json::object();
  for (const auto& [from, to] : s.settings.lane_change.targets) targets[from] = to;
  j["lane_change"] = {{"blend_length", s.settings.lane_change.blend_length},
                      {"targets", targets}};

  Json errors = Json::array();
  for (const auto& iv : s.errors.intervals()) {
    Json per = Json::object();
    for (const auto& [id, e] : iv.errors.per_agent) {
      Json je = {{"notice", e.notice}, {"forecast", e.forecast}, {"inference", e.inference}};
      if (e.predicted_path) je["predicted_path"] = PredictedPathToJson(*e.predicted_path);
      per[id] = je;
    }
    errors.push_back({{"from", iv.from}, {"to", iv.to}, {"agents", per}});
  }
  j["errors"] = errors;

  j["risk"] = RiskToJson(s.settings.risk);
  const auto& pl = s.settings.planner;
  j["planner"] = {{"accel_limit", pl.accel_limit},
                  {"u_scale", pl.u_scale},
                  {"o_scale", pl.o_scale},
                  {"include_current_speed", pl.include_current_speed},
                  {"target_velocities", pl.target_velocities}};
  j["warning"] = {{"w_thr", s.settings.warning.w_thr},
                  {"w_thr_baseline", s.settings.warning.w_thr_baseline}};
  return j;
}

ScenarioSpec FromJson(const Json& j) {
  ScenarioSpec s;
  s.name = Require(j, "name", "scenario").get<std::string>();
  const std::string where = "scenario '" + s.name + "'";
  s.description = Get<std::string>(j, "description", "");
  s.duration = Get(j, "duration", s.duration);
  s.dt = Get(j, "dt", s.dt);
  s.settings.planner.v_desired = Get(j, "v_desired", s.settings.planner.v_desired);
  s.settings.v_off = Get(j, "v_off", s.settings.v_off);

  for (const auto& jp : Require(j, "paths", where)) {
    const std::string id = Require(jp, "id", where + " path").get<std::string>();
    std::vector<Vec2> pts;
    for (const auto& pt : Require(jp, "centerline", where + " path '" + id + "'")) {
      if (!pt.is_array() || pt.size() != 2) {
        throw ConfigError(where + " path '" + id + "': centerline points must be [x, y]");
      }
      pts.push_back({pt[0].get<double>(), pt[1].get<double>()});
    }
    try {
      s.paths.push_back(MakePath(id, std::move(pts), Get(jp, "lane_width", 3.5)));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }

  s.ego = AgentFromJson(Require(j, "ego", where), where + " ego");
  if (j.contains("agents")) {
    for (const auto& ja : j.at("agents")) {
      AgentSetup a = AgentFromJson(ja, where + " agent");
      if (ja.contains("script")) {
        const Json& js = ja.at("script");
        ScriptedBehavior sb;
        sb.agent_id = a.id;
        sb.accel_limit = Get(js, "accel_limit", sb.accel_limit);
        for (const auto& c : Require(js, "commands", where + " script '" + a.id + "'")) {
          sb.commands.push_back(
              {Get(c, "from", 0.0), Get(c, "to", s.duration), Get(c, "speed", 0.0)});
        }
        s.scripts.push_back(std::move(sb));
      } else {
        s.scripts.push_back({a.id, {{0.0, s.duration, a.speed}}, 4.0});
      }
      s.agents.push_back(std::move(a));
    }
  }

  if (j.contains("lane_change")) {
    const Json& lc = j.at("lane_change");
    s.settings.lane_change.blend_length =
        Get(lc, "blend_length", s.settings.lane_change.blend_length);
    if (lc.contains("targets")) {
      for (const auto& [from, to] : lc.at("targets").items()) {
        s.settings.lane_change.targets[from] = to.get<std::vector<std::string>>();
      }
    }
  }

  if (j.contains("errors")) {
    std::vector<ErrorInterval> intervals;
    for (const auto& je : j.at("errors")) {
      ErrorInterval iv;
      iv.from = Get(je, "from", 0.0);
      iv.to = Get(je, "to", s.duration);
      if (je.contains("agents")) {
        for (const auto& [id, ja] : je.at("agents").items()) {
          AgentErrors e;
          e.notice = Get(ja, "notice", 0.0);
          e.forecast = Get(ja, "forecast", 0.0);
          e.inference = Get(ja, "inference", 0.0);
          if (ja.contains("predicted_path")) {
            e.predicted_path = PredictedPathFromJson(ja.at("predicted_path"));
          }
          iv.errors.per_agent.emplace(id, std::move(e));
        }
      }
      intervals.push_back(std::move(iv));
    }
    s.errors = ErrorSchedule(std::move(intervals));
  }

  if (j.contains("risk")) s.settings.risk = RiskFromJson(j.at("risk"));
  if (j.contains("planner")) {
    const Json& jp = j.at("planner");
    auto& pl = s.settings.planner;
    pl.accel_limit = Get(jp, "accel_limit", pl.accel_limit);
    pl.u_scale = Get(jp, "u_scale", pl.u_scale);
    pl.o_scale = Get(jp, "o_scale", pl.o_scale);
    pl.include_current_speed = Get(jp, "include_current_speed", pl.include_current_speed);
    pl.target_velocities = Get(jp, "target_velocities", pl.target_velocities);
  }
  if (j.contains("warning")) {
    const Json& jw = j.at("warning");
    auto& w = s.settings.warning;
    w.w_thr = Get(jw, "w_thr", w.w_thr);
    w.w_thr_baseline = Get(jw, "w_thr_baseline", w.w_thr_baseline);
  }
  return s;
}

}  // namespace

ScenarioSpec ScenarioFromText(std::string_view text) {
  try {
    return FromJson(Json::parse(text));
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("scenario file: ") + e.what());
  }
}

std::string ScenarioToText(const ScenarioSpec& spec) { return ToJson(spec).dump(2) + "\n"; }

ScenarioSpec LoadScenarioFile(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read scenario file '" + file.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ScenarioFromText(buf.str());
}

}  // namespace hfwarn
