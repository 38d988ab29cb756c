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

#include "hfwarn/path.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>

namespace hfwarn {

Path::Path(std::string id, std::vector<Vec2> centerline, double lane_width)
    : id_(std::move(id)), points_(std::move(centerline)), lane_width_(lane_width) {
  if (points_.size() < 2) {
    throw std::invalid_argument("path '" + id_ + "' needs at least two points");
  }
  if (!(lane_width_ > 0.0)) {
    throw std::invalid_argument("path '" + id_ + "' lane width must be positive");
  }
  arc_.reserve(points_.size());
  arc_.push_back(0.0);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const double seg = Distance(points_[i - 1], points_[i]);
    if (!(seg > 0.0)) {
      throw std::invalid_argument("path '" + id_ +
                                  "' has repeated consecutive points at index " +
                                  std::to_string(i));
    }
    arc_.push_back(arc_.back() + seg);
  }
}

std::size_t Path::SegmentIndex(double s) const {
  // Segment i spans [arc_[i], arc_[i+1]).
  const auto it = std::upper_bound(arc_.begin(), arc_.end(), s);
  const auto idx = static_cast<std::ptrdiff_t>(it - arc_.begin()) - 1;
  return static_cast<std::size_t>(
      std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(points_.size()) - 2));
}

Vec2 Path::PointAt(double s) const {
  const std::size_t i = SegmentIndex(s);
  const double seg = arc_[i + 1] - arc_[i];
  const double u = (s - arc_[i]) / seg;
  return points_[i] + u * (points_[i + 1] - points_[i]);
}

Vec2 Path::TangentAt(double s) const {
  const std::size_t i = SegmentIndex(s);
  const Vec2 d = points_[i + 1] - points_[i];
  return (1.0 / (arc_[i + 1] - arc_[i])) * d;
}

double Path::HeadingAt(double s) const {
  const Vec2 t = TangentAt(s);
  return std::atan2(t.y, t.x);
}

double Path::Project(Vec2 p) const {
  double best_s = 0.0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    const Vec2 a = points_[i];
    const Vec2 d = points_[i + 1] - a;
    const double len2 = Dot(d, d);
    const double u = std::clamp(Dot(p - a, d) / len2, 0.0, 1.0);
    const Vec2 q = a + u * d;
    const double d2 = Dot(p - q, p - q);
    if (d2 < best_d2) {
      best_d2 = d2;
      best_s = arc_[i] + u * (arc_[i + 1] - arc_[i]);
    }
  }
  return best_s;
}

PathRef MakePath(std::string id, std::vector<Vec2> centerline, double lane_width) {
  return std::make_shared<const Path>(std::move(id), std::move(centerline), lane_width);
}

PathRef MakeLaneChangePath(const Path& from, const Path& to, double from_start,
                           double blend_length, double sample_spacing) {
  if (!(blend_length > 0.0) || !(sample_spacing > 0.0)) {
    throw std::invalid_argument("lane change blend length and spacing must be positive");
  }
  const double to_start = to.Project(from.PointAt(from_start));
  const int n = std::max(2, static_cast<int>(std::ceil(blend_length / sample_spacing)) + 1);

  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(n) + to.centerline().size());
  for (int k = 0; k < n; ++k) {
    const double u = static_cast<double>(k) / (n - 1);
    const double w = u * u * (3.0 - 2.0 * u);
    const double ds = u * blend_length;
    pts.push_back((1.0 - w) * from.PointAt(from_start + ds) + w * to.PointAt(to_start + ds));
  }
  const double to_end = to_start + blend_length;
  const auto arcs = to.arc_lengths();
  const auto verts = to.centerline();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (arcs[i] > to_end + 1e-9 && Distance(verts[i], pts.back()) > 1e-9) {
      pts.push_back(verts[i]);
    }
  }
  if (to_end >= to.length()) {
    // Keep a tail beyond the target's end so the path stays usable.
    const Vec2 tail = to.PointAt(to_end + blend_length);
    if (Distance(tail, pts.back()) > 1e-9) pts.push_back(tail);
  }

  char buf[64];
  std::snprintf(buf, sizeof(buf), "@%.2f", from_start);
  return MakePath(from.id() + "->" + to.id() + buf, std::move(pts), to.lane_width());
}

}  // namespace hfwarn
