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

#include "exact_lp.hpp"

#include <limits>

namespace clinch::detail {

std::optional<Vector> find_feasible_point(const LinearSystem& system) {
  const std::size_t m = system.rows.size();
  const std::size_t nv = system.variables;

  // Column layout: [structural | slack/surplus per row | artificial per row
  // | rhs]. Unused slack or artificial columns stay zero.
  const std::size_t slack0 = nv;
  const std::size_t art0 = nv + m;
  const std::size_t rhs = nv + 2 * m;
  const std::size_t cols = rhs + 1;
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::vector<Vector> t(m, zeros(cols));
  std::vector<std::size_t> basis(m, kNone);
  std::vector<bool> artificial(cols, false);

  for (std::size_t r = 0; r < m; ++r) {
    const LinearRow& row = system.rows[r];
    const int sign = row.rhs < 0 ? -1 : 1;
    for (const auto& [j, coeff] : row.terms) t[r][j] += sign * coeff;
    t[r][rhs] = sign * row.rhs;
    if (!row.equality) t[r][slack0 + r] = sign;
    if (!row.equality && sign > 0) {
      basis[r] = slack0 + r;
    } else {
      t[r][art0 + r] = 1;
      artificial[art0 + r] = true;
      basis[r] = art0 + r;
    }
  }

  // Reduced costs for minimizing the sum of artificials.
  Vector cost = zeros(cols);
  for (std::size_t r = 0; r < m; ++r) {
    if (!artificial[basis[r]]) continue;
    for (std::size_t j = 0; j < cols; ++j) {
      if (!artificial[j]) cost[j] -= t[r][j];
    }
  }

  while (true) {
    std::size_t enter = kNone;
    for (std::size_t j = 0; j < rhs; ++j) {
      if (!artificial[j] && cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == kNone) break;

    std::size_t leave = kNone;
    Rational best_ratio;
    for (std::size_t r = 0; r < m; ++r) {
      if (t[r][enter] <= 0) continue;
      Rational ratio = t[r][rhs] / t[r][enter];
      if (leave == kNone || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = std::move(ratio);
      }
    }
    if (leave == kNone) break;  // cannot happen: objective bounded below

    const Rational pivot = t[leave][enter];
    for (std::size_t j = 0; j < cols; ++j) t[leave][j] /= pivot;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave || t[r][enter] == 0) continue;
      const Rational factor = t[r][enter];
      for (std::size_t j = 0; j < cols; ++j) {
        t[r][j] -= factor * t[leave][j];
      }
    }
    if (cost[enter] != 0) {
      const Rational factor = cost[enter];
      for (std::size_t j = 0; j < cols; ++j) {
        cost[j] -= factor * t[leave][j];
      }
    }
    basis[leave] = enter;
  }

  for (std::size_t r = 0; r < m; ++r) {
    if (artificial[basis[r]] && t[r][rhs] != 0) return std::nullopt;
  }
  Vector x = zeros(nv);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < nv) x[basis[r]] = t[r][rhs];
  }
  return x;
}

}  // namespace clinch::detail
