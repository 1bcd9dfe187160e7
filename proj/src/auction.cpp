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

#include "clinch/auction.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "clinch/errors.hpp"
#include "geometry2d.hpp"

namespace clinch {
namespace {

// The pieces that distinguish one clinching variant from another.
struct Rules {
  std::size_t n = 0;
  // Demand of bidder i given its remaining budget, its price and rho_i.
  std::function<Rational(std::size_t, const Budget&, const Rational&,
                         const Vector&)>
      demand;
  std::function<Vector(const Vector&, const Vector&)> clinch;
  std::function<Rational(const Vector&, const Vector&)> residual_total;
  Vector price_step;
};

bool all_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Outcome run_loop(const Rules& rules, const std::vector<Budget>& budgets,
                 const AuctionConfig& cfg, Rational epsilon) {
  const std::size_t n = rules.n;
  Vector prices = zeros(n);
  Vector rho = zeros(n);
  Vector paid = zeros(n);
  std::size_t next = 0;

  auto remaining = [&] {
    std::vector<Budget> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(budgets[i].minus(paid[i]));
    return out;
  };
  auto demands = [&](const Vector& at) {
    Vector d(n);
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = rules.demand(i, budgets[i].minus(paid[i]), prices[i], at);
    }
    return d;
  };

  Outcome out;
  if (cfg.trace) out.trace.emplace();
  std::size_t step = 0;
  Vector d_after;
  do {
    if (step >= cfg.max_steps) {
      throw DivergenceError("auction did not terminate within " +
                            std::to_string(cfg.max_steps) + " steps");
    }
    const Vector d = demands(rho);
    const Vector delta = rules.clinch(rho, d);
    std::vector<Budget> left;
    if (cfg.trace) left = remaining();
    Vector rho_after = rho;
    for (std::size_t i = 0; i < n; ++i) {
      rho_after[i] += delta[i];
      paid[i] += prices[i] * delta[i];
    }
    d_after = demands(rho_after);

    if (cfg.trace) {
      Snapshot snap;
      snap.step = step;
      snap.prices = prices;
      snap.rho = rho;
      snap.demand = d;
      snap.delta = delta;
      snap.rho_after = rho_after;
      snap.demand_after = d_after;
      snap.remaining = std::move(left);
      snap.residual = rules.residual_total(rho, d);
      snap.residual_after = rules.residual_total(rho_after, d_after);
      out.trace->push_back(std::move(snap));
    }
    rho = std::move(rho_after);

    if (cfg.clock == ClockMode::kUniform) {
      for (std::size_t i = 0; i < n; ++i) prices[i] += rules.price_step[i];
    } else {
      prices[next] += rules.price_step[next];
      next = (next + 1) % n;
    }
    ++step;
  } while (!all_zero(d_after));

  out.allocation = std::move(rho);
  out.payments = std::move(paid);
  for (std::size_t i = 0; i < n; ++i) {
    if (!budgets[i].is_unbounded() && out.payments[i] == budgets[i].amount()) {
      out.exhausted.push_back(i);
    }
  }
  out.steps = step;
  out.epsilon = std::move(epsilon);
  return out;
}

void require_positive_values(std::span<const Bidder> bidders) {
  for (std::size_t i = 0; i < bidders.size(); ++i) {
    if (bidders[i].value <= 0) {
      throw DomainError("bidder " + std::to_string(i) +
                        " has a non-positive value");
    }
  }
}

std::vector<Budget> budgets_of(std::span<const Bidder> bidders) {
  std::vector<Budget> out;
  for (const auto& b : bidders) out.push_back(b.budget);
  return out;
}

Rational auto_epsilon(std::span<const Rational> values) {
  const std::set<Rational> distinct(values.begin(), values.end());
  Rational bound = *distinct.begin();
  for (auto it = std::next(distinct.begin()); it != distinct.end(); ++it) {
    const Rational gap = *it - *std::prev(it);
    if (gap < bound) bound = gap;
  }
  return bound / 2;
}

// Linear-value demand rule over a per-bidder cap function.
Rules linear_rules(std::span<const Bidder> bidders,
                   std::function<Rational(std::size_t, const Vector&)> cap) {
  Rules rules;
  rules.n = bidders.size();
  Vector values;
  for (const auto& b : bidders) values.push_back(b.value);
  rules.demand = [values, cap = std::move(cap)](
                     std::size_t i, const Budget& remaining,
                     const Rational& price, const Vector& rho) {
    return demand(remaining, price, values[i], cap(i, rho));
  };
  return rules;
}

Outcome run_polymatroid(const SubmodularOracle& f,
                        std::span<const Bidder> bidders,
                        const AuctionConfig& cfg) {
  Vector singles(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) singles[i] = f(Subset::singleton(i));
  Rules rules = linear_rules(
      bidders, [singles](std::size_t i, const Vector& rho) -> Rational {
    return singles[i] - rho[i];
  });
  rules.clinch = [f](const Vector& rho, const Vector& d) {
    return clinch_amounts(f, rho, d);
  };
  rules.residual_total = [f](const Vector& rho, const Vector& d) {
    return residual(f, rho, d).total();
  };
  Vector values;
  for (const auto& b : bidders) values.push_back(b.value);
  const Rational eps = resolve_epsilon(cfg, values);
  rules.price_step = Vector(bidders.size(), eps);
  return run_loop(rules, budgets_of(bidders), cfg, eps);
}

Outcome run_single_keyword(const Vector& ctrs, std::span<const Bidder> bidders,
                           const AuctionConfig& cfg) {
  const Rational top = ctrs.empty() ? Rational(0) : ctrs.front();
  Rules rules = linear_rules(
      bidders, [top](std::size_t i, const Vector& rho) -> Rational {
    return top - rho[i];
  });
  rules.clinch = [ctrs](const Vector& rho, const Vector& d) {
    return fast_clinch_amounts(ctrs, rho, d);
  };
  rules.residual_total = [ctrs](const Vector& rho, const Vector& d) {
    return fast_residual_max(ctrs, rho, d);
  };
  Vector values;
  for (const auto& b : bidders) values.push_back(b.value);
  const Rational eps = resolve_epsilon(cfg, values);
  rules.price_step = Vector(bidders.size(), eps);
  return run_loop(rules, budgets_of(bidders), cfg, eps);
}

// Largest total x0 + x1 over {x >= 0 : rho + x in P, x <= d}.
Rational residual_total_2d(const PackingPolytope2D& polytope,
                           const Vector& rho, const Vector& d) {
  std::vector<detail::HalfPlane> planes;
  for (const auto& row : polytope.rows) {
    planes.push_back({row.a0, row.a1, row.b - row.a0 * rho[0] - row.a1 * rho[1]});
  }
  planes.push_back({-1, 0, 0});
  planes.push_back({0, -1, 0});
  planes.push_back({1, 0, d[0]});
  planes.push_back({0, 1, d[1]});
  Rational best = 0;
  for (const auto& v : detail::polygon_vertices(planes)) {
    best = std::max(best, Rational(v[0] + v[1]));
  }
  return best;
}

Outcome run_polytope_2d(const PackingPolytope2D& polytope,
                        std::span<const Bidder> bidders,
                        const AuctionConfig& cfg) {
  polytope.validate();
  if (bidders.size() != 2) {
    throw SizeError("generic polytope clinching supports exactly 2 bidders");
  }
  Rules rules = linear_rules(bidders, [polytope](std::size_t i, const Vector& rho) {
    return polytope.headroom(rho, i);
  });
  rules.clinch = [polytope](const Vector& rho, const Vector& d) {
    return clinch_generic_2player(polytope, rho, d);
  };
  rules.residual_total = [polytope](const Vector& rho, const Vector& d) {
    return residual_total_2d(polytope, rho, d);
  };
  Vector values;
  for (const auto& b : bidders) values.push_back(b.value);
  const Rational eps = resolve_epsilon(cfg, values);
  rules.price_step = Vector(2, eps);
  return run_loop(rules, budgets_of(bidders), cfg, eps);
}

}  // namespace

std::optional<std::size_t> environment_size(const Environment& env) {
  struct Visitor {
    std::optional<std::size_t> operator()(const PolymatroidEnv& e) const {
      return e.f.size();
    }
    std::optional<std::size_t> operator()(const SingleKeywordEnv& e) const {
      return e.ctrs.size();
    }
    std::optional<std::size_t> operator()(const ScaledEnv& e) const {
      return e.f.size();
    }
    std::optional<std::size_t> operator()(const PackingPolytope2D&) const {
      return 2;
    }
  };
  return std::visit(Visitor{}, env);
}

std::optional<SubmodularOracle> environment_oracle(const Environment& env) {
  struct Visitor {
    std::optional<SubmodularOracle> operator()(const PolymatroidEnv& e) const {
      return e.f;
    }
    std::optional<SubmodularOracle> operator()(const SingleKeywordEnv& e) const {
      return single_keyword_oracle(e.ctrs);
    }
    std::optional<SubmodularOracle> operator()(const ScaledEnv& e) const {
      return e.f;
    }
    std::optional<SubmodularOracle> operator()(const PackingPolytope2D&) const {
      return std::nullopt;
    }
  };
  return std::visit(Visitor{}, env);
}

Rational resolve_epsilon(const AuctionConfig& cfg,
                         std::span<const Rational> values) {
  if (cfg.epsilon_policy == EpsilonPolicy::kFixed) {
    if (cfg.epsilon <= 0) throw DomainError("epsilon must be positive");
    return cfg.epsilon;
  }
  if (values.empty()) throw DomainError("no values to derive epsilon from");
  for (const auto& v : values) {
    if (v <= 0) throw DomainError("values must be positive");
  }
  return auto_epsilon(values);
}

Rational demand(const Budget& remaining, const Rational& price,
                const Rational& value, const Rational& cap) {
  if (price >= value) return 0;
  if (price == 0 || remaining.is_unbounded()) return cap;
  Rational affordable = remaining.amount() / price;
  return affordable < cap ? affordable : cap;
}

Outcome run_clinching(const Environment& env, std::span<const Bidder> bidders,
                      const AuctionConfig& cfg) {
  require_positive_values(bidders);
  if (std::holds_alternative<PackingPolytope2D>(env) && bidders.size() != 2) {
    throw SizeError("generic polytope clinching supports exactly 2 bidders, got " +
                    std::to_string(bidders.size()));
  }
  const auto n = environment_size(env);
  if (n && *n != bidders.size()) {
    throw DomainError("environment has " + std::to_string(*n) +
                      " bidders but " + std::to_string(bidders.size()) +
                      " were given");
  }
  if (const auto* e = std::get_if<PolymatroidEnv>(&env)) {
    return run_polymatroid(e->f, bidders, cfg);
  }
  if (const auto* e = std::get_if<SingleKeywordEnv>(&env)) {
    require_ctr_list(e->ctrs);
    if (cfg.force_generic) {
      return run_polymatroid(single_keyword_oracle(e->ctrs), bidders, cfg);
    }
    return run_single_keyword(e->ctrs, bidders, cfg);
  }
  if (const auto* e = std::get_if<ScaledEnv>(&env)) {
    return run_scaled(e->f, e->gamma, bidders, cfg);
  }
  return run_polytope_2d(std::get<PackingPolytope2D>(env), bidders, cfg);
}

Rational fast_residual_max(const Vector& ctrs, const Vector& rho,
                           const Vector& demand) {
  const std::size_t n = rho.size();
  if (demand.size() != n) throw DomainError("rho and demand lengths differ");
  require_ctr_list(ctrs);
  for (std::size_t i = 0; i < n; ++i) {
    if (rho[i] < 0 || demand[i] < 0) {
      throw DomainError("rho and demand must be nonnegative");
    }
  }
  auto slot = [&ctrs](std::size_t k) {
    return k < ctrs.size() ? ctrs[k] : Rational(0);
  };

  // rho in P iff the k largest promises never exceed the k best slots.
  std::vector<std::size_t> by_rho(n);
  std::iota(by_rho.begin(), by_rho.end(), std::size_t{0});
  std::stable_sort(by_rho.begin(), by_rho.end(),
                   [&rho](std::size_t a, std::size_t b) { return rho[a] > rho[b]; });
  Rational promised = 0;
  Rational capacity = 0;
  Subset prefix;
  for (std::size_t k = 0; k < n; ++k) {
    promised += rho[by_rho[k]];
    capacity += slot(k);
    prefix = prefix.with(by_rho[k]);
    if (promised > capacity) {
      throw PreconditionError("promised allocation violates the keyword "
                              "polytope on " + prefix.to_string(),
                              prefix);
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rho[a] + demand[a] > rho[b] + demand[b];
  });
  Rational slots = 0;
  Rational filled = 0;
  Rational gain = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    slots += slot(k);
    Rational z = rho[i] + demand[i];
    if (slots - filled < z) z = slots - filled;
    filled += z;
    gain += z - rho[i];
  }
  return gain;
}

Vector fast_clinch_amounts(const Vector& ctrs, const Vector& rho,
                           const Vector& demand) {
  const Rational total = fast_residual_max(ctrs, rho, demand);
  Vector delta(rho.size());
  Vector without = demand;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    without[i] = 0;
    const Rational gain = total - fast_residual_max(ctrs, rho, without);
    delta[i] = gain > 0 ? gain : Rational(0);
    without[i] = demand[i];
  }
  return delta;
}

Outcome run_scaled(const SubmodularOracle& f, const Vector& gamma,
                   std::span<const Bidder> bidders, const AuctionConfig& cfg) {
  const std::size_t n = f.size();
  if (gamma.size() != n || bidders.size() != n) {
    throw DomainError("scaled auction needs one gamma and one bidder per "
                      "element of the ground set");
  }
  for (const auto& g : gamma) {
    if (g <= 0) throw DomainError("quality factors must be positive");
  }
  require_positive_values(bidders);

  Vector singles(n);
  for (std::size_t i = 0; i < n; ++i) singles[i] = gamma[i] * f(Subset::singleton(i));
  Rules rules = linear_rules(
      bidders, [singles](std::size_t i, const Vector& rho) -> Rational {
    return singles[i] - rho[i];
  });
  auto unscale = [gamma](const Vector& v) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / gamma[i];
    return out;
  };
  rules.clinch = [f, gamma, unscale](const Vector& rho, const Vector& d) {
    Vector delta = clinch_amounts(f, unscale(rho), unscale(d));
    for (std::size_t i = 0; i < delta.size(); ++i) delta[i] *= gamma[i];
    return delta;
  };
  rules.residual_total = [f, unscale](const Vector& rho, const Vector& d) {
    return residual(f, unscale(rho), unscale(d)).total();
  };
  Vector scaled_values(n);
  for (std::size_t i = 0; i < n; ++i) scaled_values[i] = gamma[i] * bidders[i].value;
  const Rational eps = resolve_epsilon(cfg, scaled_values);
  rules.price_step.resize(n);
  for (std::size_t i = 0; i < n; ++i) rules.price_step[i] = eps / gamma[i];
  return run_loop(rules, budgets_of(bidders), cfg, eps);
}

Vector clinch_generic_2player(const PackingPolytope2D& polytope,
                              const Vector& rho, const Vector& demand) {
  if (rho.size() != 2 || demand.size() != 2) {
    throw SizeError("generic polytope clinching supports exactly 2 bidders");
  }
  polytope.validate();
  if (!polytope.contains(rho[0], rho[1])) {
    throw PreconditionError("promised allocation lies outside the polytope");
  }
  for (const auto& d : demand) {
    if (d < 0) throw DomainError("demand must be nonnegative");
  }
  Vector delta(2);
  for (std::size_t i = 0; i < 2; ++i) {
    const std::size_t j = 1 - i;
    // The opponent's feasible interval is [0, reach]; bidder i may take any
    // amount that keeps (amount, reach) inside.
    const Rational room_j = polytope.headroom(rho, j);
    const Rational reach = demand[j] < room_j ? demand[j] : room_j;
    Rational best = demand[i];
    for (const auto& row : polytope.rows) {
      const Rational& a_i = i == 0 ? row.a0 : row.a1;
      const Rational& a_j = i == 0 ? row.a1 : row.a0;
      if (a_i == 0) continue;
      Rational limit = (row.b - row.a0 * rho[0] - row.a1 * rho[1] - a_j * reach) / a_i;
      if (limit < best) best = std::move(limit);
    }
    delta[i] = best > 0 ? best : Rational(0);
  }
  return delta;
}

ConcaveCurve::ConcaveCurve(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) throw DomainError("curve needs at least one segment");
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    if (segments_[k].length <= 0) {
      throw DomainError("curve segment lengths must be positive");
    }
    if (segments_[k].slope <= 0) {
      throw DomainError("curve slopes must be positive");
    }
    if (k > 0 && segments_[k].slope > segments_[k - 1].slope) {
      throw DomainError("curve is not concave: slope increases at segment " +
                        std::to_string(k));
    }
  }
}

ConcaveCurve ConcaveCurve::linear(const Rational& value,
                                  const Rational& length) {
  return ConcaveCurve({{length, value}});
}

Rational ConcaveCurve::length() const {
  Rational total = 0;
  for (const auto& s : segments_) total += s.length;
  return total;
}

Rational ConcaveCurve::operator()(const Rational& x) const {
  Rational value = 0;
  Rational start = 0;
  for (const auto& s : segments_) {
    if (x <= start) break;
    const Rational end = start + s.length;
    const Rational covered = (x < end ? x : end) - start;
    value += covered * s.slope;
    start = end;
  }
  return value;
}

Rational ConcaveCurve::wanted_beyond(const Rational& from,
                                     const Rational& price) const {
  Rational wanted = 0;
  Rational start = 0;
  for (const auto& s : segments_) {
    const Rational end = start + s.length;
    if (s.slope > price && end > from) {
      wanted += end - (from > start ? from : start);
    }
    start = end;
  }
  return wanted;
}

bool operator==(const ConcaveCurve& a, const ConcaveCurve& b) {
  if (a.segments_.size() != b.segments_.size()) return false;
  for (std::size_t k = 0; k < a.segments_.size(); ++k) {
    if (a.segments_[k].length != b.segments_[k].length ||
        a.segments_[k].slope != b.segments_[k].slope) {
      return false;
    }
  }
  return true;
}

Outcome run_decreasing_marginals(const std::vector<ConcaveCurve>& curves,
                                 const std::vector<Budget>& budgets,
                                 const Rational& supply,
                                 const AuctionConfig& cfg) {
  const std::size_t n = curves.size();
  if (n == 0 || budgets.size() != n) {
    throw DomainError("need one budget per curve and at least one curve");
  }
  if (supply <= 0) throw DomainError("supply must be positive");
  const SubmodularOracle f = multi_unit_oracle(supply, n);

  Rules rules;
  rules.n = n;
  rules.demand = [curves, supply](std::size_t i, const Budget& remaining,
                                  const Rational& price, const Vector& rho) {
    Rational want = curves[i].wanted_beyond(rho[i], price);
    const Rational cap = supply - rho[i];
    if (cap < want) want = cap;
    if (price > 0 && !remaining.is_unbounded()) {
      const Rational affordable = remaining.amount() / price;
      if (affordable < want) want = affordable;
    }
    return want;
  };
  rules.clinch = [f](const Vector& rho, const Vector& d) {
    return clinch_amounts(f, rho, d);
  };
  rules.residual_total = [f](const Vector& rho, const Vector& d) {
    return residual(f, rho, d).total();
  };
  Vector slopes;
  for (const auto& c : curves) {
    for (const auto& s : c.segments()) slopes.push_back(s.slope);
  }
  const Rational eps = resolve_epsilon(cfg, slopes);
  rules.price_step = Vector(n, eps);
  return run_loop(rules, budgets, cfg, eps);
}

}  // namespace clinch
