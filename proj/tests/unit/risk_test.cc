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


#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "hfwarn/perception.h"
#include "hfwarn/risk.h"
#include "hfwarn/scenario.h"
#include "support/oracles.h"

namespace hfwarn {
namespace {

using testing::StraightLane;

TEST(GaussianOverlapTest, UnitVariancesTwoMetersApart) {
  const Cov2 unit{1.0, 0.0, 1.0};
  const double want = std::exp(-1.0) / (4.0 * std::numbers::pi);
  EXPECT_NEAR(GaussianOverlap(2.0, 2.0), want, 1e-15);
  EXPECT_NEAR(GaussianOverlap(Vec2{2.0, 0.0}, unit + unit), want, 1e-15);
  const double numeric = testing::OverlapByQuadrature({0, 0}, unit, {2, 0}, unit);
  EXPECT_NEAR(numeric / want - 1.0, 0.0, 1e-6);
  EXPECT_NEAR(want, 0.029274, 1e-6);
}

TEST(GaussianOverlapTest, AnisotropicMatchesQuadrature) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> var(0.2, 3.0);
  std::uniform_real_distribution<double> ang(-3.1, 3.1);
  std::uniform_real_distribution<double> off(-3.0, 3.0);
  for (int i = 0; i < 10; ++i) {
    const Cov2 a = OrientedCovariance(ang(rng), var(rng), var(rng));
    const Cov2 b = OrientedCovariance(ang(rng), var(rng), var(rng));
    const Vec2 mb{off(rng), off(rng)};
    const double closed = GaussianOverlap(Vec2{0, 0} - mb, a + b);
    const double numeric = testing::OverlapByQuadrature({0, 0}, a, mb, b);
    EXPECT_NEAR(numeric / closed - 1.0, 0.0, 1e-6);
  }
}

TEST(GaussianOverlapTest, FarApartVanishes) {
  EXPECT_LT(GaussianOverlap(100.0, 2.0), 1e-300);
}

TEST(GaussianOverlapTest, CoincidentIsMaximal) {
  const double peak = GaussianOverlap(0.0, 2.0);
  EXPECT_DOUBLE_EQ(peak, 1.0 / (2.0 * std::numbers::pi * 2.0));
  for (double d = 0.01; d < 10.0; d += 0.1) EXPECT_LT(GaussianOverlap(d, 2.0), peak);
}

TEST(CollisionEventRateTest, SymmetricUnderSwap) {
  const RiskParams p;
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const Footprint a = PredictedFootprint({u(rng), u(rng)}, u(rng), Extent{2.0, 0.9},
                                           std::abs(u(rng)), p);
    const Footprint b = PredictedFootprint({u(rng), u(rng)}, u(rng), Extent{2.3, 1.0},
                                           std::abs(u(rng)), p);
    const double v = std::abs(u(rng));
    EXPECT_EQ(CollisionEventRate(a, b, v, p), CollisionEventRate(b, a, v, p));
  }
}

TEST(CollisionEventRateTest, CoincidentRateFormula) {
  RiskParams p;
  p.event_rate_scale = 2.5;
  const Footprint a{{1, 1}, {1.0, 0.0, 1.0}};
  const Footprint b{{1, 1}, {0.5, 0.0, 0.5}};
  EXPECT_DOUBLE_EQ(CollisionEventRate(a, b, 4.0, p),
                   2.5 * 4.0 / (2.0 * std::numbers::pi * 1.5));
}

TEST(SeverityTest, QuadraticInRelativeSpeed) {
  const RiskParams p;
  EXPECT_EQ(Severity(0.0, p), 0.0);
  EXPECT_DOUBLE_EQ(Severity(10.0, p), 0.5);
  EXPECT_DOUBLE_EQ(Severity(20.0, p), 4.0 * Severity(10.0, p));
}

TEST(RiskParamsTest, ValidateAndGrids) {
  RiskParams p;
  EXPECT_NO_THROW(p.Validate());
  const auto t = p.TimeGrid();
  ASSERT_EQ(t.size(), 40u);
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_NEAR(t.back(), 8.0, 1e-12);
  const auto v = p.VelocityGrid();
  ASSERT_EQ(v.size(), 40u);
  EXPECT_NEAR(v.back(), 20.0, 1e-12);
  p.horizon = 0.5;
  EXPECT_THROW(p.Validate(), ConfigError);
  p = RiskParams{};
  p.map_time_steps = 1;
  EXPECT_THROW(p.Validate(), ConfigError);
  p = RiskParams{};
  p.sigma_growth = 0.0;
  EXPECT_THROW(p.Validate(), ConfigError);
}

struct Pair {
  PredictedTrajectory ego;
  std::vector<PredictedTrajectory> others;
};

// Ego at 10 m/s, a rear car closing at 15 m/s, gap 30 m, same lane.
Pair ClosingRearCar(const RiskParams& p, double lateral = 0.0) {
  const auto times = p.TimeGrid();
  const AgentState ego = MakeAgent("ego", StraightLane("lane", 0.0), 100.0, 10.0,
                                   kMotorcycleExtent);
  const AgentState rear = MakeAgent("rear", StraightLane("side", lateral), 70.0, 15.0,
                                    kCarExtent);
  return {PredictConstantSpeed(ego, times), {PredictConstantSpeed(rear, times)}};
}

// Direct sum of rate * severity * dtau, survival taken as one.
double UnweightedSum(const Pair& pr, const RiskParams& p) {
  double sum = 0.0;
  for (std::size_t k = 0; k < pr.ego.samples.size(); ++k) {
    const auto& e = pr.ego.samples[k];
    for (const auto& o : pr.others) {
      if (!o.aware) continue;
      const auto& a = o.samples[k];
      const double v = Norm(e.velocity - a.velocity);
      sum += CollisionEventRate(PredictedFootprint(e.position, e.heading, pr.ego.extent, e.t, p),
                                PredictedFootprint(a.position, a.heading, o.extent, a.t, p), v,
                                p) *
             Severity(v, p) * p.TimeStep();
    }
  }
  return sum;
}

TEST(TrajectoryRiskTest, NoOthersIsZero) {
  const RiskParams p;
  const Pair pr = ClosingRearCar(p);
  const TrajectoryRisk r = EvaluateTrajectoryRisk(pr.ego, {}, p);
  EXPECT_EQ(r.total, 0.0);
  EXPECT_TRUE(r.per_agent.empty());
}

TEST(TrajectoryRiskTest, ClosingRearCarBoundedAndPeaksAtContact) {
  const RiskParams p;
  const Pair pr = ClosingRearCar(p);
  const TrajectoryRisk r = EvaluateTrajectoryRisk(pr.ego, pr.others, p);
  EXPECT_GT(r.total, 0.0);
  EXPECT_LE(r.total, UnweightedSum(pr, p));
  // Gap closes at 5 m/s from 30 m: centers meet at 6 s. Survival discounting
  // can only pull the peak earlier.
  EXPECT_LE(r.peak_time, 6.0);
  EXPECT_GE(r.peak_time, 6.0 - 2.0 * p.TimeStep());
  ASSERT_EQ(r.per_agent.size(), 1u);
  EXPECT_EQ(r.total, r.per_agent[0].value);
}

TEST(TrajectoryRiskTest, PeakAtMinimalGapWithoutDiscounting) {
  RiskParams p;
  p.event_rate_scale = 1e-9;  // survival stays at one
  const Pair pr = ClosingRearCar(p);
  const TrajectoryRisk r = EvaluateTrajectoryRisk(pr.ego, pr.others, p);
  EXPECT_NEAR(r.peak_time, 6.0, 0.5 * p.TimeStep() + 1e-12);
}

TEST(TrajectoryRiskTest, TotalIsSumOfPerAgent) {
  std::mt19937_64 rng(47);
  const RiskParams p;
  const auto times = p.TimeGrid();
  for (int trial = 0; trial < 50; ++trial) {
    const WorldState w = testing::RandomTwoLaneWorld(rng, 4);
    const auto others = PredictOthers(ObjectiveView(w), times);
    const TrajectoryRisk r = EvaluateTrajectoryRisk(PredictConstantSpeed(w.ego, times), others, p);
    double sum = 0.0;
    for (const auto& a : r.per_agent) sum += a.value;
    EXPECT_EQ(r.total, sum);
    EXPECT_GE(r.total, 0.0);
    EXPECT_TRUE(std::isfinite(r.total));
  }
}

TEST(TrajectoryRiskTest, SurvivalBoundOnRandomWorlds) {
  std::mt19937_64 rng(53);
  const RiskParams p;
  const auto times = p.TimeGrid();
  for (int trial = 0; trial < 50; ++trial) {
    const WorldState w = testing::RandomTwoLaneWorld(rng, 3);
    Pair pr{PredictConstantSpeed(w.ego, times), PredictOthers(ObjectiveView(w), times)};
    const double total = EvaluateTrajectoryRisk(pr.ego, pr.others, p).total;
    EXPECT_LE(total, UnweightedSum(pr, p) * (1.0 + 1e-12));
  }
}

TEST(TrajectoryRiskTest, LargerGapNeverRaisesRisk) {
  const RiskParams p;
  double last = EvaluateTrajectoryRisk(ClosingRearCar(p).ego, ClosingRearCar(p).others, p).total;
  for (double y = 0.25; y <= 6.0; y += 0.25) {
    const Pair pr = ClosingRearCar(p, y);
    const double r = EvaluateTrajectoryRisk(pr.ego, pr.others, p).per_agent[0].value;
    EXPECT_LE(r, last) << "lateral offset " << y;
    last = r;
  }
}

TEST(TrajectoryRiskTest, UnawareEqualsRemoved) {
  std::mt19937_64 rng(59);
  const RiskParams p;
  const auto times = p.TimeGrid();
  for (int trial = 0; trial < 50; ++trial) {
    const WorldState w = testing::RandomTwoLaneWorld(rng, 4);
    const auto ego = PredictConstantSpeed(w.ego, times);
    auto flagged = PredictOthers(ObjectiveView(w), times);
    const std::size_t hidden = static_cast<std::size_t>(trial) % flagged.size();
    flagged[hidden].aware = false;
    auto removed = flagged;
    removed.erase(removed.begin() + static_cast<std::ptrdiff_t>(hidden));
    const TrajectoryRisk a = EvaluateTrajectoryRisk(ego, flagged, p);
    const TrajectoryRisk b = EvaluateTrajectoryRisk(ego, removed, p);
    EXPECT_EQ(a.total, b.total);
    EXPECT_EQ(a.peak_time, b.peak_time);
    ASSERT_EQ(a.per_agent.size(), b.per_agent.size());
    for (std::size_t j = 0; j < a.per_agent.size(); ++j) {
      EXPECT_EQ(a.per_agent[j].agent_id, b.per_agent[j].agent_id);
      EXPECT_EQ(a.per_agent[j].value, b.per_agent[j].value);
    }
  }
}

TEST(TrajectoryRiskTest, DuplicatedAgentAtLeastAsRisky) {
  const RiskParams p;
  Pair pr = ClosingRearCar(p);
  const double one = EvaluateTrajectoryRisk(pr.ego, pr.others, p).total;
  pr.others.push_back(pr.others[0]);
  pr.others[1].agent_id = "rear_copy";
  const double two = EvaluateTrajectoryRisk(pr.ego, pr.others, p).total;
  EXPECT_GE(two, one);
  EXPECT_LE(two, 2.0 * one);
}

TEST(TrajectoryRiskTest, MismatchedGridThrows) {
  const RiskParams p;
  Pair pr = ClosingRearCar(p);
  pr.others[0].samples.pop_back();
  EXPECT_THROW(EvaluateTrajectoryRisk(pr.ego, pr.others, p), std::invalid_argument);
  pr = ClosingRearCar(p);
  pr.others[0].samples[3].t += 1e-3;
  EXPECT_THROW(EvaluateTrajectoryRisk(pr.ego, pr.others, p), std::invalid_argument);
}

WorldState RearApproachWorld() {
  WorldState w;
  w.available_paths = {StraightLane("lane_0", 0.0), StraightLane("lane_1", 3.5)};
  w.ego = MakeAgent("ego", w.available_paths[0], 200.0, 10.0, kMotorcycleExtent);
  w.others.push_back(MakeAgent("rear", w.available_paths[1], 165.0, 13.0, kCarExtent));
  return w;
}

TEST(RiskMapTest, EmptyOrUnawareViewIsZero) {
  const RiskParams p;
  WorldState w = RearApproachWorld();
  PerceivedWorld view = ObjectiveView(w);
  view.others[0].awareness = Awareness::kNotAware;
  const RiskMap m = BuildRiskMap(w.ego, w.available_paths[1], 200.0, view, p);
  ASSERT_EQ(m.values.size(), 40u * 40u);
  for (double v : m.values) EXPECT_EQ(v, 0.0);
  w.others.clear();
  const RiskMap e = BuildRiskMap(w.ego, w.available_paths[1], 200.0, ObjectiveView(w), p);
  EXPECT_EQ(e.Max(), 0.0);
}

TEST(RiskMapTest, RearCarRiskSitsAtLowVelocities) {
  const RiskParams p;
  const WorldState w = RearApproachWorld();
  const RiskMap m = BuildRiskMap(w.ego, w.available_paths[1], 200.0, ObjectiveView(w), p);
  double low = 0.0;
  double high = 0.0;
  for (std::size_t k = 0; k < m.times.size(); ++k) {
    for (std::size_t i = 0; i < m.velocities.size(); ++i) {
      (m.velocities[i] < 10.0 ? low : high) += m.At(k, i);
    }
  }
  EXPECT_GT(m.Max(), 0.0);
  EXPECT_GT(low, 10.0 * high);
  for (double v : m.values) {
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GE(v, 0.0);
  }
}

TEST(RiskMapTest, ParallelMatchesSerialBitwise) {
  std::mt19937_64 rng(61);
  const RiskParams p;
  for (int trial = 0; trial < 10; ++trial) {
    const WorldState w = testing::RandomTwoLaneWorld(rng, 5);
    const RiskMap a = BuildRiskMap(w.ego, w.available_paths[1], 150.0, ObjectiveView(w), p);
    const RiskMap b =
        BuildRiskMapSerial(w.ego, w.available_paths[1], 150.0, ObjectiveView(w), p);
    EXPECT_EQ(a.values, b.values);
  }
}

TEST(RiskMapTest, WellSeparatedStaticAgentsAreNegligible) {
  const RiskParams p;
  const Extent ego_ext = kMotorcycleExtent;
  const Extent car = kCarExtent;
  // Widest lateral spread of the pair over the horizon.
  const double s_lat = p.lateral_sigma_base + p.lateral_sigma_growth * p.horizon;
  const double sigma_pair = std::sqrt(2.0 * s_lat * s_lat +
                                      ego_ext.half_width * ego_ext.half_width / 3.0 +
                                      car.half_width * car.half_width / 3.0);
  const double offset = 6.0 * sigma_pair + 0.1;
  WorldState w;
  w.available_paths = {StraightLane("lane_0", 0.0), StraightLane("far", offset)};
  w.ego = MakeAgent("ego", w.available_paths[0], 200.0, 10.0, ego_ext);
  for (double arc : {190.0, 220.0, 260.0, 300.0}) {
    w.others.push_back(MakeAgent("s" + std::to_string(static_cast<int>(arc)),
                                 w.available_paths[1], arc, 0.0, car));
  }
  const RiskMap m = BuildRiskMap(w.ego, w.available_paths[0], 200.0, ObjectiveView(w), p);
  for (std::size_t k = 0; k < m.times.size(); ++k) {
    const double tau = m.times[k];
    for (std::size_t i = 0; i < m.velocities.size(); ++i) {
      const double v = m.velocities[i];
      // Same pair of footprints stacked on top of each other.
      const Footprint fe = PredictedFootprint({0, 0}, 0.0, ego_ext, tau, p);
      const Footprint fo = PredictedFootprint({0, 0}, 0.0, car, tau, p);
      const double reference = CollisionEventRate(fe, fo, v, p) * Severity(v, p);
      EXPECT_LE(m.At(k, i), 1e-6 * reference * static_cast<double>(w.others.size()));
    }
  }
}

TEST(RiskMapTest, CountAboveAndMax) {
  RiskMap m;
  m.times = {0.0, 1.0};
  m.velocities = {0.0, 1.0};
  m.values = {0.0, 0.5, 2.0, 1.0};
  EXPECT_EQ(m.Max(), 2.0);
  EXPECT_EQ(m.CountAbove(0.5), 2u);
  EXPECT_EQ(m.At(1, 0), 2.0);
}

}  // namespace
}  // namespace hfwarn
