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

// Reference oracles for the tests. Each one recomputes a quantity by a
// route that shares no code with the library: plain subset loops instead
// of the DP tables, a greedy fill instead of the residual formula, cut
// enumeration instead of augmenting paths, a hand-written multi-unit clock.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "clinch/auction.hpp"
#include "clinch/environments.hpp"
#include "clinch/instance.hpp"
#include "clinch/rational.hpp"
#include "clinch/submodular.hpp"

namespace clinch::testing {

using Mask = std::uint32_t;

/// p/q in canonical form; mpq_class(p, q) alone does not reduce.
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline Rational subset_sum(const Vector& x, Mask s) {
  Rational total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if ((s >> i) & 1U) total += x[i];
  }
  return total;
}

/// min_{T subset of S} f(T) - rho(T) + d(S \ T), by direct enumeration.
inline Rational brute_residual(const std::function<Rational(Mask)>& f,
                               const Vector& rho, const Vector& d, Mask s) {
  Rational best;
  bool first = true;
  for (Mask t = s;; t = (t - 1) & s) {
    Rational v = f(t) - subset_sum(rho, t) + subset_sum(d, s & ~t);
    if (first || v < best) best = v;
    first = false;
    if (t == 0) break;
  }
  return best;
}

inline bool brute_member(const std::function<Rational(Mask)>& f,
                         const Vector& x) {
  const Mask full = (Mask{1} << x.size()) - 1;
  for (Mask s = 0; s <= full; ++s) {
    if (subset_sum(x, s) > f(s)) return false;
  }
  return std::all_of(x.begin(), x.end(), [](const Rational& q) { return q >= 0; });
}

/// A point of {x : rho + x in P(f), 0 <= x <= d} reached by raising one
/// coordinate at a time as far as every constraint allows. Polymatroid
/// greedy: its total is the maximum of 1.x over that set.
inline Vector greedy_fill(const std::function<Rational(Mask)>& f,
                          const Vector& rho, const Vector& d) {
  const std::size_t n = rho.size();
  const Mask full = (Mask{1} << n) - 1;
  Vector x(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    Rational room = d[i];
    for (Mask s = 1; s <= full; ++s) {
      if (!((s >> i) & 1U)) continue;
      const Rational slack = f(s) - subset_sum(rho, s) - subset_sum(x, s);
      if (slack < room) room = slack;
    }
    x[i] = room > 0 ? room : Rational(0);
  }
  return x;
}

inline Rational greedy_max(const std::function<Rational(Mask)>& f,
                           const Vector& rho, const Vector& d) {
  return sum(greedy_fill(f, rho, d));
}

/// Clinch amounts straight from the definition: total that can be served
/// minus what the others alone can be served.
inline Vector brute_clinch(const std::function<Rational(Mask)>& f,
                           const Vector& rho, const Vector& d) {
  const Rational all = greedy_max(f, rho, d);
  Vector delta(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    Vector without = d;
    without[i] = 0;
    delta[i] = all - greedy_max(f, rho, without);
    if (delta[i] < 0) delta[i] = 0;
  }
  return delta;
}

inline std::function<Rational(Mask)> as_mask_fn(const SubmodularOracle& f) {
  return [f](Mask s) { return f(Subset::from_mask(s)); };
}

/// Minimum s-cut separating the source from `sinks`, over all node sets.
inline Rational brute_min_cut(const CapacitatedNetwork& net,
                              const std::vector<std::size_t>& sinks) {
  if (sinks.empty()) return 0;
  const Mask full = (Mask{1} << net.nodes) - 1;
  Rational best;
  bool first = true;
  for (Mask side = 0; side <= full; ++side) {
    if (!((side >> net.source) & 1U)) continue;
    bool ok = true;
    for (std::size_t t : sinks) {
      if ((side >> t) & 1U) ok = false;
    }
    if (!ok) continue;
    Rational cut = 0;
    for (const auto& a : net.arcs) {
      if (((side >> a.from) & 1U) && !((side >> a.to) & 1U)) cut += a.capacity;
    }
    if (first || cut < best) best = cut;
    first = false;
  }
  return best;
}

/// Graphic rank |V(S)| - components(S), by depth-first search.
inline std::size_t brute_forest_rank(const GraphicInstance& g, Mask s) {
  std::vector<std::vector<std::size_t>> adj(g.vertices);
  std::vector<bool> touched(g.vertices, false);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (!((s >> e) & 1U)) continue;
    adj[g.edges[e].u].push_back(g.edges[e].v);
    adj[g.edges[e].v].push_back(g.edges[e].u);
    touched[g.edges[e].u] = touched[g.edges[e].v] = true;
  }
  std::vector<bool> seen(g.vertices, false);
  std::size_t vertices = 0;
  std::size_t components = 0;
  for (std::size_t v = 0; v < g.vertices; ++v) {
    if (!touched[v] || seen[v]) continue;
    ++components;
    std::vector<std::size_t> stack{v};
    seen[v] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      ++vertices;
      for (std::size_t w : adj[u]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return vertices - components;
}

/// Multi-unit clinching written from scratch: each bidder clinches what the
/// others' total demand leaves of the remaining supply. Round-robin clock.
inline std::pair<Vector, Vector> reference_multi_unit(
    const Rational& supply, const std::vector<Bidder>& bidders,
    const Rational& eps) {
  const std::size_t n = bidders.size();
  Vector price(n, Rational(0));
  Vector x(n, Rational(0));
  Vector paid(n, Rational(0));
  std::size_t next = 0;
  auto demand_of = [&](std::size_t i) -> Rational {
    if (price[i] >= bidders[i].value) return 0;
    const Rational cap = supply - x[i];
    if (price[i] == 0 || bidders[i].budget.is_unbounded()) return cap;
    const Rational afford = (bidders[i].budget.amount() - paid[i]) / price[i];
    return afford < cap ? afford : cap;
  };
  for (;;) {
    Vector d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = demand_of(i);
    const Rational left = supply - sum(x);
    const Rational total = sum(d);
    Vector delta(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Rational others = total - d[i];
      Rational c = left - others;
      if (c > d[i]) c = d[i];
      delta[i] = c > 0 ? c : Rational(0);
    }
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += delta[i];
      paid[i] += price[i] * delta[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (demand_of(i) != 0) any = true;
    }
    if (!any) break;
    price[next] += eps;
    next = (next + 1) % n;
  }
  return {x, paid};
}

/// Seeded generator for small exact test data.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t k) { return rng_() % k; }
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  Rational rational(long lo, long hi, long denom) {
    return frac(range(lo * denom, hi * denom), denom);
  }
  Vector ctrs(std::size_t len, long hi = 5) {
    Vector out;
    for (std::size_t k = 0; k < len; ++k) out.push_back(Rational(range(0, hi)));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline const std::vector<std::string>& polymatroid_kinds() {
  static const std::vector<std::string> kinds{"multi-unit", "single-keyword",
                                              "adwords", "graphic", "vod-cut"};
  return kinds;
}

}  // namespace clinch::testing
