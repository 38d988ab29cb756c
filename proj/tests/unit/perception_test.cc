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


#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hfwarn/perception.h"
#include "hfwarn/risk.h"
#include "hfwarn/scenario.h"
#include "support/oracles.h"

namespace hfwarn {
namespace {

void ExpectSameAgent(const AgentState& a, const AgentState& b) {
  EXPECT_EQ(a.agent_id, b.agent_id);
  EXPECT_EQ(a.position, b.position);
  EXPECT_EQ(a.heading, b.heading);
  EXPECT_EQ(a.speed, b.speed);
  EXPECT_EQ(a.acceleration, b.acceleration);
  EXPECT_EQ(a.path, b.path);
  EXPECT_EQ(a.arc_position, b.arc_position);
  EXPECT_EQ(a.extent, b.extent);
  EXPECT_EQ(a.finished, b.finished);
}

ErrorSchedule ScheduleFor(const std::string& id, AgentErrors e) {
  DriverErrors d;
  d.per_agent[id] = std::move(e);
  return ErrorSchedule::Constant(d, 100.0);
}

TEST(NoticeErrorTest, CutAtOneHalf) {
  EXPECT_EQ(ApplyNoticeError(0.0), Awareness::kAware);
  EXPECT_EQ(ApplyNoticeError(0.49), Awareness::kAware);
  EXPECT_EQ(ApplyNoticeError(0.5), Awareness::kNotAware);
  EXPECT_EQ(ApplyNoticeError(1.0), Awareness::kNotAware);
  EXPECT_THROW(ApplyNoticeError(-0.1), ValidationError);
  EXPECT_THROW(ApplyNoticeError(1.1), ValidationError);
}

TEST(ForecastErrorTest, OffsetAndClamp) {
  EXPECT_EQ(ApplyForecastError(10.0, 0.0, 3.0), 10.0);
  EXPECT_EQ(ApplyForecastError(10.0, 1.0, 3.0), 13.0);
  EXPECT_EQ(ApplyForecastError(1.0, -1.0, 3.0), 0.0);
  EXPECT_EQ(ApplyForecastError(10.0, -0.5, 3.0), 8.5);
  EXPECT_THROW(ApplyForecastError(10.0, 1.5, 3.0), ValidationError);
  EXPECT_THROW(ApplyForecastError(10.0, -1.01, 3.0), ValidationError);
}

TEST(InferenceErrorTest, SwitchesAtOneHalf) {
  const PathRef obj = testing::StraightLane("obj", 0.0);
  const PathRef pred = testing::StraightLane("pred", 3.5);
  EXPECT_EQ(ApplyInferenceError(obj, pred, 0.0), obj);
  EXPECT_EQ(ApplyInferenceError(obj, pred, 0.49), obj);
  EXPECT_EQ(ApplyInferenceError(obj, pred, 0.5), pred);
  EXPECT_EQ(ApplyInferenceError(obj, pred, 1.0), pred);
  EXPECT_EQ(ApplyInferenceError(obj, nullptr, 0.3), obj);
  EXPECT_THROW(ApplyInferenceError(obj, nullptr, 1.0), ConfigError);
  EXPECT_THROW(ApplyInferenceError(obj, pred, 2.0), ValidationError);
}

TEST(DriverErrorsTest, ViolationsNameTheAgent) {
  DriverErrors d;
  d.per_agent["rear"].notice = 2.0;
  d.per_agent["rear"].inference = 0.7;
  const auto v = d.Violations();
  ASSERT_EQ(v.size(), 2u);
  for (const auto& m : v) EXPECT_NE(m.find("rear"), std::string::npos) << m;
}

TEST(ErrorScheduleTest, PiecewiseConstantLookup) {
  DriverErrors a;
  a.per_agent["x"].notice = 1.0;
  DriverErrors b;
  b.per_agent["x"].forecast = 1.0;
  const ErrorSchedule s({ErrorInterval{5.0, 10.0, b}, ErrorInterval{0.0, 5.0, a}});
  EXPECT_EQ(s.At(0.0), a);
  EXPECT_EQ(s.At(4.999), a);
  EXPECT_EQ(s.At(5.0), b);
  EXPECT_EQ(s.At(10.0), b);  // holds the last interval past its end
  EXPECT_EQ(ErrorSchedule().At(3.0), DriverErrors{});
}

TEST(PerceiveTest, ErrorsCarryAgentAndTime) {
  std::mt19937_64 rng(3);
  const WorldState w = testing::RandomTwoLaneWorld(rng, 1);
  AgentErrors e;
  e.forecast = 4.0;
  try {
    Perceive(w, ScheduleFor("a0", e), 2.5, 3.0);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& ex) {
    const std::string what = ex.what();
    EXPECT_NE(what.find("a0"), std::string::npos) << what;
    EXPECT_NE(what.find("2.5"), std::string::npos) << what;
  }
}

TEST(PerceiveTest, ZeroScheduleIsIdentity) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const WorldState w = testing::RandomTwoLaneWorld(rng, 1 + trial % 5);
    const PerceivedWorld p = Perceive(w, ErrorSchedule(), 0.1 * trial, 3.0);
    EXPECT_EQ(p.time, w.time);
    ExpectSameAgent(p.ego, w.ego);
    ASSERT_EQ(p.others.size(), w.others.size());
    for (std::size_t j = 0; j < w.others.size(); ++j) {
      EXPECT_TRUE(p.others[j].aware());
      ExpectSameAgent(p.others[j].state, w.others[j]);
    }
    EXPECT_EQ(p.available_paths, w.available_paths);
  }
}

TEST(PerceiveTest, ForecastErrorChangesOnlySpeed) {
  WorldState w;
  w.available_paths = {testing::StraightLane("lane_0", 0.0),
                       testing::StraightLane("lane_1", 3.5)};
  w.ego = MakeAgent("ego", w.available_paths[0], 200.0, 10.0, kMotorcycleExtent);
  w.others.push_back(MakeAgent("rear", w.available_paths[1], 160.0, 10.0, kCarExtent));
  w.others.push_back(MakeAgent("lead", w.available_paths[0], 240.0, 7.0, kCarExtent));
  AgentErrors e;
  e.forecast = 1.0;
  const PerceivedWorld p = Perceive(w, ScheduleFor("rear", e), 0.0, 3.0);
  EXPECT_EQ(p.others[0].state.speed, 13.0);
  AgentState expect = w.others[0];
  expect.speed = 13.0;
  ExpectSameAgent(p.others[0].state, expect);
  ExpectSameAgent(p.others[1].state, w.others[1]);
  ExpectSameAgent(p.ego, w.ego);
}

TEST(PerceiveTest, NoticeErrorRemovesRiskInLaneChangeScenario) {
  const ScenarioSpec spec = FindScenario("lane_change_notice");
  const WorldState w = InitialWorld(spec);
  const PerceivedWorld p = Perceive(w, spec.errors, 0.0, spec.settings.v_off);
  bool saw_rear = false;
  for (const auto& a : p.others) {
    if (a.state.agent_id == "rear") {
      saw_rear = true;
      EXPECT_FALSE(a.aware());
    }
  }
  EXPECT_TRUE(saw_rear);
  // Only the rear car threatens the target lane; without it the map is empty.
  const PathRef target = w.FindPath("lane_1");
  ASSERT_NE(target, nullptr);
  PerceivedWorld rear_only = p;
  std::erase_if(rear_only.others, [](const PerceivedAgent& a) {
    return a.state.agent_id != "rear";
  });
  const RiskMap map = BuildRiskMap(w.ego, target, target->Project(w.ego.position), rear_only,
                                   spec.settings.risk);
  EXPECT_EQ(map.Max(), 0.0);
}

TEST(PerceiveTest, InferenceErrorMovesAgentToPredictedPath) {
  WorldState w;
  w.available_paths = {testing::StraightLane("lane_0", 0.0),
                       testing::StraightLane("lane_1", 3.5)};
  w.ego = MakeAgent("ego", w.available_paths[0], 200.0, 10.0, kMotorcycleExtent);
  w.others.push_back(MakeAgent("rear", w.available_paths[1], 160.0, 13.0, kCarExtent));
  AgentErrors e;
  e.inference = 1.0;
  e.predicted_path = LaneChangeIntent{"lane_0", 30.0};
  const PerceivedWorld p = Perceive(w, ScheduleFor("rear", e), 0.0, 3.0);
  const AgentState& r = p.others[0].state;
  EXPECT_NE(r.path, w.others[0].path);
  EXPECT_NEAR(r.position.x, w.others[0].position.x, 1e-9);
  EXPECT_NEAR(r.position.y, w.others[0].position.y, 1e-9);
  EXPECT_EQ(r.speed, 13.0);
  EXPECT_NEAR(r.path->PointAt(r.path->length()).y, 0.0, 1e-9);
}

TEST(PerceiveTest, LocalityOfPerAgentErrors) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const WorldState w = testing::RandomTwoLaneWorld(rng, 4);
    const std::string target = "a" + std::to_string(trial % 4);
    AgentErrors e;
    e.notice = unit(rng);
    e.forecast = 2.0 * unit(rng) - 1.0;
    const PerceivedWorld base = Perceive(w, ErrorSchedule(), 0.0, 3.0);
    const PerceivedWorld p = Perceive(w, ScheduleFor(target, e), 0.0, 3.0);
    for (std::size_t j = 0; j < w.others.size(); ++j) {
      if (w.others[j].agent_id == target) {
        EXPECT_EQ(p.others[j].aware(), e.notice < 0.5);
        continue;
      }
      EXPECT_TRUE(p.others[j].aware());
      ExpectSameAgent(p.others[j].state, base.others[j].state);
    }
  }
}

TEST(PerceiveTest, NeverResurrectsUnawareAgents) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> high(0.5, 1.0);
  std::uniform_real_distribution<double> fe(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const WorldState w = testing::RandomTwoLaneWorld(rng, 3);
    DriverErrors d;
    d.per_agent["a1"].notice = high(rng);
    d.per_agent["a1"].forecast = fe(rng);
    d.per_agent["a0"].forecast = fe(rng);
    const ErrorSchedule s = ErrorSchedule::Constant(d, 10.0);
    for (double t = 0.0; t < 12.0; t += 1.5) {
      const PerceivedWorld p = Perceive(w, s, t, 3.0);
      EXPECT_FALSE(p.others[1].aware());
      EXPECT_GE(p.others[0].state.speed, 0.0);
    }
  }
}

TEST(PerceiveTest, ObjectiveViewIsAwareCopy) {
  std::mt19937_64 rng(5);
  const WorldState w = testing::RandomTwoLaneWorld(rng, 3);
  const PerceivedWorld o = ObjectiveView(w);
  EXPECT_EQ(o.kind, ViewKind::kObjective);
  for (std::size_t j = 0; j < w.others.size(); ++j) {
    EXPECT_TRUE(o.others[j].aware());
    ExpectSameAgent(o.others[j].state, w.others[j]);
  }
}

}  // namespace
}  // namespace hfwarn
