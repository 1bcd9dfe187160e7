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

// Exact phase-one simplex used for polytope feasibility questions that have
// no combinatorial shortcut (AdWords decompositions).

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "clinch/rational.hpp"

namespace clinch::detail {

struct LinearRow {
  std::vector<std::pair<std::size_t, Rational>> terms;
  Rational rhs;
  bool equality = false;  // otherwise "<="
};

struct LinearSystem {
  std::size_t variables = 0;
  std::vector<LinearRow> rows;
};

/// A point x >= 0 satisfying every row, or nullopt when none exists.
/// Bland's rule, so it always terminates.
std::optional<Vector> find_feasible_point(const LinearSystem& system);

}  // namespace clinch::detail
