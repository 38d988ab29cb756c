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

#ifndef HFWARN_RISK_H_
#define HFWARN_RISK_H_

#include <span>
#include <string>
#include <vector>

#include "hfwarn/geometry.h"
#include "hfwarn/path.h"
#include "hfwarn/perception.h"
#include "hfwarn/world.h"

namespace hfwarn {

// Free parameters of the stochastic collision-risk model.
//
// Position uncertainty grows linearly with prediction time and is aligned
// with the agent's heading: `sigma_*` along the path, `lateral_sigma_*`
// across it. Setting both pairs equal gives isotropic Gaussians.
struct RiskParams {
  double sigma_base = 0.5;            // m
  double sigma_growth = 0.3;          // m/s
  double lateral_sigma_base = 0.2;    // m
  double lateral_sigma_growth = 0.02; // m/s
  double severity_scale = 0.01;
  double event_rate_scale = 1.0;      // 1/s per (m/s * 1/m^2)
  double horizon = 8.0;               // s
  int map_time_steps = 40;
  int map_velocity_steps = 40;
  double v_max = 20.0;                // m/s

  // Throws ConfigError on non-positive values, horizon < 1 s or grids < 2.
  void Validate() const;
  // map_time_steps samples over [0, horizon], both ends included.
  std::vector<double> TimeGrid() const;
  double TimeStep() const { return horizon / (map_time_steps - 1); }
  // map_velocity_steps samples over [0, v_max].
  std::vector<double> VelocityGrid() const;
};

// Symmetric 2x2 covariance.
struct Cov2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  friend constexpr Cov2 operator+(Cov2 a, Cov2 b) {
    return {a.xx + b.xx, a.xy + b.xy, a.yy + b.yy};
  }
  double Det() const { return xx * yy - xy * xy; }
};

// Covariance with variance `along` in direction `heading` and `across`
// perpendicular to it.
Cov2 OrientedCovariance(double heading, double along, double across);

// Integral over the plane of the product of two Gaussian densities whose
// means differ by `delta` and whose covariances sum to `combined`:
// exp(-delta' S^-1 delta / 2) / (2 pi sqrt(det S)).
double GaussianOverlap(Vec2 delta, const Cov2& combined);

// Isotropic case: exp(-d^2 / (2 S)) / (2 pi S) for combined variance S.
double GaussianOverlap(double distance, double combined_variance);

struct Footprint {
  Vec2 mean;
  Cov2 cov;
};

// Predicted position distribution of an agent at lookahead tau. Vehicle
// extent enters as the variance of a uniform distribution over the body
// (half_extent^2 / 3) added to the prediction variance on each axis.
Footprint PredictedFootprint(Vec2 position, double heading, const Extent& extent,
                             double tau, const RiskParams& params);

// Collision event rate [1/s]: event_rate_scale * relative_speed * overlap.
double CollisionEventRate(const Footprint& a, const Footprint& b, double relative_speed,
                          const RiskParams& params);

// Kinetic-energy harm proxy: severity_scale * relative_speed^2 / 2.
double Severity(double relative_speed, const RiskParams& params);

struct TrajectorySample {
  double t = 0.0;
  Vec2 position;
  Vec2 velocity;
  double heading = 0.0;
};

struct PredictedTrajectory {
  std::string agent_id;
  Extent extent;
  bool aware = true;
  std::vector<TrajectorySample> samples;
};

struct AgentRisk {
  std::string agent_id;
  double value = 0.0;
};

struct TrajectoryRisk {
  double total = 0.0;
  std::vector<AgentRisk> per_agent;  // aware agents only, input order
  double peak_time = 0.0;
};

// Samples an agent moving along `path` from `start_arc`. arc_offsets and
// speeds are given per entry of `times`.
PredictedTrajectory SampleAlongPath(const std::string& agent_id, const Extent& extent,
                                    const Path& path, double start_arc,
                                    std::span<const double> times,
                                    std::span<const double> arc_offsets,
                                    std::span<const double> speeds);

// Constant-speed prediction of an agent along its own (possibly perceived)
// path.
PredictedTrajectory PredictConstantSpeed(const AgentState& agent, std::span<const double> times,
                                         bool aware = true);

// Constant-speed predictions for every other agent of a view.
std::vector<PredictedTrajectory> PredictOthers(const PerceivedWorld& view,
                                               std::span<const double> times);

// Survival-weighted risk of the ego trajectory against the others:
//   R = sum_tau S(tau) sum_j rate_j(tau) severity_j(tau) dtau,
//   S(tau_k) = prod_{i<k} exp(-sum_j rate_j(tau_i) dtau).
// Not-aware agents are skipped. Throws std::invalid_argument when the time
// grids differ.
TrajectoryRisk EvaluateTrajectoryRisk(const PredictedTrajectory& ego,
                                      std::span<const PredictedTrajectory> others,
                                      const RiskParams& params);

// Risk density over (future time x hypothetical constant ego velocity).
struct RiskMap {
  std::string path_id;
  std::vector<double> times;
  std::vector<double> velocities;
  std::vector<double> values;  // row-major, times.size() x velocities.size()

  double At(std::size_t time_index, std::size_t velocity_index) const {
    return values[time_index * velocities.size() + velocity_index];
  }
  double Max() const;
  std::size_t CountAbove(double threshold) const;
};

// OpenMP over velocity columns.
RiskMap BuildRiskMap(const AgentState& ego, const PathRef& path, double start_arc,
                     const PerceivedWorld& view, const RiskParams& params);
// Single-threaded reference; bitwise identical to BuildRiskMap.
RiskMap BuildRiskMapSerial(const AgentState& ego, const PathRef& path, double start_arc,
                           const PerceivedWorld& view, const RiskParams& params);

}  // namespace hfwarn

#endif  // HFWARN_RISK_H_
