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

#ifndef HFWARN_SCENARIO_IO_H_
#define HFWARN_SCENARIO_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "hfwarn/scenario.h"

namespace hfwarn {

// Scenario files are JSON documents mirroring ScenarioSpec. Optional
// sections (errors, lane_change, risk, planner, warning) fall back to
// defaults. Parse and type errors throw ConfigError.
ScenarioSpec ScenarioFromText(std::string_view text);
std::string ScenarioToText(const ScenarioSpec& spec);

ScenarioSpec LoadScenarioFile(const std::filesystem::path& file);

}  // namespace hfwarn

#endif  // HFWARN_SCENARIO_IO_H_
