// Copyright 2026 The Authors.
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

#include "geometry2d.hpp"

#include <algorithm>

namespace clinch::detail {

bool satisfies(const std::vector<HalfPlane>& planes, const Point2& p) {
  return std::all_of(planes.begin(), planes.end(), [&p](const HalfPlane& h) {
    return h.a0 * p[0] + h.a1 * p[1] <= h.b;
  });
}

std::vector<Point2> polygon_vertices(const std::vector<HalfPlane>& planes) {
  std::vector<Point2> out;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    for (std::size_t j = i + 1; j < planes.size(); ++j) {
      const HalfPlane& p = planes[i];
      const HalfPlane& q = planes[j];
      const Rational det = p.a0 * q.a1 - p.a1 * q.a0;
      if (det == 0) continue;
      Point2 v{Rational((p.b * q.a1 - p.a1 * q.b) / det),
               Rational((p.a0 * q.b - p.b * q.a0) / det)};
      if (satisfies(planes, v)) out.push_back(std::move(v));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace clinch::detail
