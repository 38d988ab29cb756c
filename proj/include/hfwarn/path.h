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

#ifndef HFWARN_PATH_H_
#define HFWARN_PATH_H_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hfwarn/geometry.h"

namespace hfwarn {

// A lane centerline or maneuver curve, parameterized by arc length.
//
// Queries outside [0, length()] extrapolate linearly along the first or
// last segment, so constant-speed predictions stay defined past the end.
class Path {
 public:
  // Throws std::invalid_argument on fewer than two points or repeated
  // consecutive points.
  Path(std::string id, std::vector<Vec2> centerline, double lane_width);

  const std::string& id() const { return id_; }
  double length() const { return arc_.back(); }
  double lane_width() const { return lane_width_; }
  std::span<const Vec2> centerline() const { return points_; }
  std::span<const double> arc_lengths() const { return arc_; }

  Vec2 PointAt(double s) const;
  // Unit tangent of the segment containing s.
  Vec2 TangentAt(double s) const;
  double HeadingAt(double s) const;
  // Arc length of the closest point on the polyline.
  double Project(Vec2 p) const;

 private:
  std::size_t SegmentIndex(double s) const;

  std::string id_;
  std::vector<Vec2> points_;
  std::vector<double> arc_;
  double lane_width_;
};

using PathRef = std::shared_ptr<const Path>;

PathRef MakePath(std::string id, std::vector<Vec2> centerline,
                 double lane_width = 3.5);

// Cubic (smoothstep) lateral blend from `from` onto `to`, starting at arc
// position `from_start` on `from` and spanning `blend_length` meters of
// longitudinal travel, then continuing along `to` to its end. The returned
// path starts exactly at from.PointAt(from_start).
PathRef MakeLaneChangePath(const Path& from, const Path& to, double from_start,
                           double blend_length, double sample_spacing = 1.0);

}  // namespace hfwarn

#endif  // HFWARN_PATH_H_
