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

#pragma once

#include <array>
#include <vector>

#include "clinch/rational.hpp"

namespace clinch::detail {

using Point2 = std::array<Rational, 2>;

/// a0 x + a1 y <= b
struct HalfPlane {
  Rational a0;
  Rational a1;
  Rational b;
};

bool satisfies(const std::vector<HalfPlane>& planes, const Point2& p);

/// Vertices of the bounded polygon cut out by the half-planes, sorted and
/// without duplicates. Empty when the polygon is empty.
std::vector<Point2> polygon_vertices(const std::vector<HalfPlane>& planes);

}  // namespace clinch::detail
