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

#include "hfwarn/risk.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hfwarn {

void RiskParams::Validate() const {
  const bool positive = sigma_base > 0 && sigma_growth > 0 && lateral_sigma_base > 0 &&
                        lateral_sigma_growth > 0 && severity_scale > 0 &&
                        event_rate_scale > 0 && horizon > 0 && v_max > 0;
  if (!positive) throw ConfigError("risk parameters must all be positive");
  if (horizon < 1.0) throw ConfigError("risk horizon must be at least 1 s");
  if (map_time_steps < 2 || map_velocity_steps < 2) {
    throw ConfigError("risk map grids need at least 2 steps per axis");
  }
}

std::vector<double> RiskParams::TimeGrid() const {
  std::vector<double> t(static_cast<std::size_t>(map_time_steps));
  const double dt = TimeStep();
  for (int k = 0; k < map_time_steps; ++k) t[static_cast<std::size_t>(k)] = k * dt;
  return t;
}

std::vector<double> RiskParams::VelocityGrid() const {
  std::vector<double> v(static_cast<std::size_t>(map_velocity_steps));
  const double dv = v_max / (map_velocity_steps - 1);
  for (int i = 0; i < map_velocity_steps; ++i) v[static_cast<std::size_t>(i)] = i * dv;
  return v;
}

Cov2 OrientedCovariance(double heading, double along, double across) {
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  return {c * c * along + s * s * across, c * s * (along - across),
          s * s * along + c * c * across};
}

double GaussianOverlap(Vec2 delta, const Cov2& combined) {
  const double det = combined.Det();
  const double q =
      (combined.yy * delta.x * delta.x - 2.0 * combined.xy * delta.x * delta.y +
       combined.xx * delta.y * delta.y) /
      det;
  return std::exp(-0.5 * q) / (2.0 * std::numbers::pi * std::sqrt(det));
}

double GaussianOverlap(double distance, double combined_variance) {
  return std::exp(-distance * distance / (2.0 * combined_variance)) /
         (2.0 * std::numbers::pi * combined_variance);
}

Footprint PredictedFootprint(Vec2 position, double heading, const Extent& extent, double tau,
                             const RiskParams& params) {
  const double s_lon = params.sigma_base + params.sigma_growth * tau;
  const double s_lat = params.lateral_sigma_base + params.lateral_sigma_growth * tau;
  const double along = s_lon * s_lon + extent.half_length * extent.half_length / 3.0;
  const double across = s_lat * s_lat + extent.half_width * extent.half_width / 3.0;
  return {position, OrientedCovariance(heading, along, across)};
}

double CollisionEventRate(const Footprint& a, const Footprint& b, double relative_speed,
                          const RiskParams& params) {
  return params.event_rate_scale * relative_speed *
         GaussianOverlap(a.mean - b.mean, a.cov + b.cov);
}

double Severity(double relative_speed, const RiskParams& params) {
  return params.severity_scale * 0.5 * relative_speed * relative_speed;
}

PredictedTrajectory SampleAlongPath(const std::string& agent_id, const Extent& extent,
                                    const Path& path, double start_arc,
                                    std::span<const double> times,
                                    std::span<const double> arc_offsets,
                                    std::span<const double> speeds) {
  PredictedTrajectory traj;
  traj.agent_id = agent_id;
  traj.extent = extent;
  traj.samples.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double s = start_arc + arc_offsets[k];
    const Vec2 tangent = path.TangentAt(s);
    traj.samples.push_back({times[k], path.PointAt(s), speeds[k] * tangent,
                            std::atan2(tangent.y, tangent.x)});
  }
  return traj;
}

PredictedTrajectory PredictConstantSpeed(const AgentState& agent, std::span<const double> times,
                                         bool aware) {
  std::vector<double> offsets(times.size());
  std::vector<double> speeds(times.size(), agent.speed);
  for (std::size_t k = 0; k < times.size(); ++k) offsets[k] = agent.speed * times[k];
  PredictedTrajectory traj = SampleAlongPath(agent.agent_id, agent.extent, *agent.path,
                                             agent.arc_position, times, offsets, speeds);
  traj.aware = aware;
  return traj;
}

std::vector<PredictedTrajectory> PredictOthers(const PerceivedWorld& view,
                                               std::span<const double> times) {
  std::vector<PredictedTrajectory> out;
  out.reserve(view.others.size());
  for (const auto& o : view.others) out.push_back(PredictConstantSpeed(o.state, times, o.aware()));
  return out;
}

TrajectoryRisk EvaluateTrajectoryRisk(const PredictedTrajectory& ego,
                                      std::span<const PredictedTrajectory> others,
                                      const RiskParams& params) {
  const std::size_t n = ego.samples.size();
  for (const auto& o : others) {
    bool same = o.samples.size() == n;
    for (std::size_t k = 0; same && k < n; ++k) same = o.samples[k].t == ego.samples[k].t;
    if (!same) {
      throw std::invalid_argument("trajectory of '" + o.agent_id +
                                  "' is not sampled on the ego time grid");
    }
  }
  const double dtau = params.TimeStep();

  std::vector<const PredictedTrajectory*> aware;
  for (const auto& o : others) {
    if (o.aware) aware.push_back(&o);
  }

  TrajectoryRisk out;
  out.per_agent.reserve(aware.size());
  for (const auto* o : aware) out.per_agent.push_back({o->agent_id, 0.0});

  double survival = 1.0;
  double peak = -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const TrajectorySample& e = ego.samples[k];
    const Footprint fe = PredictedFootprint(e.position, e.heading, ego.extent, e.t, params);
    double rate_sum = 0.0;
    double density = 0.0;
    for (std::size_t j = 0; j < aware.size(); ++j) {
      const TrajectorySample& a = aware[j]->samples[k];
      const Footprint fa = PredictedFootprint(a.position, a.heading, aware[j]->extent, a.t, params);
      const double vrel = Norm(e.velocity - a.velocity);
      const double rate = CollisionEventRate(fe, fa, vrel, params);
      const double contribution = survival * rate * Severity(vrel, params);
      out.per_agent[j].value += contribution * dtau;
      density += contribution;
      rate_sum += rate;
    }
    if (density > peak) {
      peak = density;
      out.peak_time = e.t;
    }
    survival *= std::exp(-rate_sum * dtau);
  }
  for (const auto& a : out.per_agent) out.total += a.value;
  return out;
}

double RiskMap::Max() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

std::size_t RiskMap::CountAbove(double threshold) const {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [&](double v) { return v > threshold; }));
}

namespace {

struct RiskMapJob {
  const AgentState& ego;
  const Path& path;
  double start_arc;
  const RiskParams& params;
  std::vector<PredictedTrajectory> others;
  RiskMap map;

  void FillColumn(std::size_t vi) {
    const double v = map.velocities[vi];
    const std::size_t nv = map.velocities.size();
    for (std::size_t k = 0; k < map.times.size(); ++k) {
      const double tau = map.times[k];
      const double s = start_arc + v * tau;
      const Vec2 tangent = path.TangentAt(s);
      const double heading = std::atan2(tangent.y, tangent.x);
      const Footprint fe = PredictedFootprint(path.PointAt(s), heading, ego.extent, tau, params);
      const Vec2 ve = v * tangent;
      double density = 0.0;
      for (const auto& o : others) {
        if (!o.aware) continue;
        const TrajectorySample& a = o.samples[k];
        const Footprint fa = PredictedFootprint(a.position, a.heading, o.extent, tau, params);
        const double vrel = Norm(ve - a.velocity);
        density += CollisionEventRate(fe, fa, vrel, params) * Severity(vrel, params);
      }
      map.values[k * nv + vi] = density;
    }
  }
};

RiskMapJob MakeJob(const AgentState& ego, const PathRef& path, double start_arc,
                   const PerceivedWorld& view, const RiskParams& params) {
  RiskMapJob job{ego, *path, start_arc, params, {}, {}};
  job.map.path_id = path->id();
  job.map.times = params.TimeGrid();
  job.map.velocities = params.VelocityGrid();
  job.map.values.assign(job.map.times.size() * job.map.velocities.size(), 0.0);
  job.others = PredictOthers(view, job.map.times);
  return job;
}

}  // namespace

RiskMap BuildRiskMap(const AgentState& ego, const PathRef& path, double start_arc,
                     const PerceivedWorld& view, const RiskParams& params) {
  RiskMapJob job = MakeJob(ego, path, start_arc, view, params);
  const auto nv = static_cast<std::ptrdiff_t>(job.map.velocities.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t vi = 0; vi < nv; ++vi) job.FillColumn(static_cast<std::size_t>(vi));
  return std::move(job.map);
}

RiskMap BuildRiskMapSerial(const AgentState& ego, const PathRef& path, double start_arc,
                           const PerceivedWorld& view, const RiskParams& params) {
  RiskMapJob job = MakeJob(ego, path, start_arc, view, params);
  for (std::size_t vi = 0; vi < job.map.velocities.size(); ++vi) job.FillColumn(vi);
  return std::move(job.map);
}

}  // namespace hfwarn
