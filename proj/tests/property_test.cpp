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


// Seeded randomized properties across every environment kind.

#include <vector>

#include "clinch/auction.hpp"
#include "clinch/environments.hpp"
#include "clinch/instance.hpp"
#include "clinch/verify.hpp"
#include "doctest.h"
#include "support.hpp"

namespace clinch {
namespace {

using testing::as_mask_fn;
using testing::brute_clinch;
using testing::greedy_max;
using testing::Gen;
using testing::polymatroid_kinds;

// A random point of P(f): a random greedy vertex scaled down.
Vector random_inside(const SubmodularOracle& f, Gen& g) {
  std::vector<std::size_t> order(f.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), g.engine());
  Vector x = greedy_vertex(f, order);
  for (auto& q : x) q *= testing::frac(g.range(0, 4), 4);
  return x;
}

TEST_CASE("clinch amounts match the definition on every kind") {
  Gen g(41);
  for (int trial = 0; trial < 120; ++trial) {
    const auto& kind = polymatroid_kinds()[trial % 5];
    const auto inst = generate_instance(kind, 1 + g.below(5), 3, 700 + trial);
    const auto f = *instance_oracle(inst);
    const Vector rho = random_inside(f, g);
    Vector d(f.size());
    for (auto& q : d) q = g.rational(0, 3, 2);

    const Vector delta = clinch_amounts(f, rho, d);
    CHECK(delta == brute_clinch(as_mask_fn(f), rho, d));
    Vector after = rho;
    for (std::size_t i = 0; i < delta.size(); ++i) {
      CHECK(delta[i] >= 0);
      CHECK(delta[i] <= d[i]);
      after[i] += delta[i];
    }
    CHECK(membership(f, after).ok());

    const auto r = residual(f, rho, d);
    CHECK(r.total() == greedy_max(as_mask_fn(f), rho, d));
    CHECK(verify_submodular(r.monotonized_oracle()).ok());
  }
}

TEST_CASE("outcomes are feasible, individually rational and within budget") {
  Gen g(42);
  for (int trial = 0; trial < 60; ++trial) {
    const auto& kind = polymatroid_kinds()[trial % 5];
    InstanceFile inst = generate_instance(kind, 1 + g.below(5), 3, 800 + trial);
    if (trial % 3 == 1) inst.config.clock = ClockMode::kUniform;
    if (trial % 3 == 2) {
      inst.config.epsilon_policy = EpsilonPolicy::kFixed;
      inst.config.epsilon = testing::frac(1, g.range(2, 6));
    }
    const auto f = *instance_oracle(inst);
    auto [o, monitors] = run_with_monitors(instance_environment(inst), inst.bidders,
                                           inst.config);
    CAPTURE(kind);
    CAPTURE(monitors.to_json().dump());
    for (const auto& p : monitors.properties()) {
      // Conservation needs demands to fall one bidder at a time.
      if (p.name == "conserved-quantity" && inst.config.clock == ClockMode::kUniform) continue;
      CHECK(p.passed);
    }
    const auto report = check_outcome(f, inst.bidders, o);
    for (const char* name : {"individual-rationality", "budget", "feasibility"}) {
      CAPTURE(name);
      CHECK(report.find(name)->passed);
    }
    for (std::size_t i : o.exhausted) {
      CHECK(o.payments[i] == inst.bidders[i].budget.amount());
    }
  }
}

TEST_CASE("the simultaneous clock can stop with supply unsold") {
  // Two demands vanish at the same tick, so neither bidder clinches the
  // other's share.
  const std::vector<Bidder> bidders{{Rational(1, 2), Budget(Rational(1))},
                                    {Rational(1, 2), Budget(Rational(1))}};
  AuctionConfig cfg;
  cfg.epsilon_policy = EpsilonPolicy::kFixed;
  cfg.epsilon = Rational(1, 4);
  cfg.clock = ClockMode::kUniform;
  const auto f = multi_unit_oracle(2, 2);
  auto [o, monitors] = run_with_monitors(PolymatroidEnv{f}, bidders, cfg);
  CHECK(sum(o.allocation) < 2);
  CHECK_FALSE(check_outcome(f, bidders, o).find("sold-out")->passed);
  CHECK_FALSE(monitors.find("conserved-quantity")->passed);

  cfg.clock = ClockMode::kRoundRobin;
  auto [rr, rr_monitors] = run_with_monitors(PolymatroidEnv{f}, bidders, cfg);
  CHECK(sum(rr.allocation) == 2);
  CHECK(rr_monitors.passed());
}

TEST_CASE("quality factors: monitors on scaled traces") {
  Gen g(43);
  for (int trial = 0; trial < 30; ++trial) {
    const auto& kind = polymatroid_kinds()[trial % 5];
    const auto inst = generate_instance(kind, 1 + g.below(4), 3, 900 + trial);
    const auto f = *instance_oracle(inst);
    Vector gamma(f.size());
    for (auto& q : gamma) q = testing::frac(g.range(1, 5), g.range(1, 3));
    AuctionConfig cfg = inst.config;
    cfg.trace = true;
    const Outcome o = run_scaled(f, gamma, inst.bidders, cfg);
    CHECK(monitor_trace(f, *o.trace, gamma).passed());
    Vector unscaled(f.size());
    for (std::size_t i = 0; i < unscaled.size(); ++i) {
      unscaled[i] = o.allocation[i] / gamma[i];
    }
    CHECK(membership(f, unscaled).ok());
  }
}

// Box-plus-total polytopes are polymatroids, so the generic two-player rule
// and submodular clinching must agree step for step.
TEST_CASE("generic clinching agrees with the polymatroid rule in 2-D") {
  Gen g(44);
  for (int trial = 0; trial < 80; ++trial) {
    const Rational c0 = g.range(1, 5);
    const Rational c1 = g.range(1, 5);
    const Rational t = g.range(1, 8);
    const PackingPolytope2D box{{{1, 0, c0}, {0, 1, c1}, {1, 1, t}}};
    const auto f = box.rank_oracle();
    CHECK_FALSE(box.polymatroid_gap().has_value());
    const std::vector<Bidder> bidders{{Rational(g.range(1, 9)), Budget(Rational(g.range(1, 6)))},
                                      {Rational(g.range(1, 9)), Budget(Rational(g.range(1, 6)))}};
    AuctionConfig cfg;
    if (trial % 2) cfg.clock = ClockMode::kUniform;
    const Outcome a = run_clinching(box, bidders, cfg);
    const Outcome b = run_clinching(PolymatroidEnv{f}, bidders, cfg);
    CHECK(a.allocation == b.allocation);
    CHECK(a.payments == b.payments);
  }
}

TEST_CASE("rational and subset helpers") {
  Gen g(45);
  for (int trial = 0; trial < 200; ++trial) {
    const Rational q = testing::frac(g.range(-50, 50), g.range(1, 12));
    CHECK(parse_rational(format_rational(q)) == q);
  }
  CHECK(parse_budget("inf").is_unbounded());
  CHECK(format_budget(Budget(Rational(3, 2))) == "3/2");
  CHECK(Subset::of({0, 2}).elements() == std::vector<std::size_t>{0, 2});
  CHECK((Subset::of({0, 1}) - Subset::singleton(0)) == Subset::singleton(1));
  CHECK(Subset::full(3).size() == 3);
}

}  // namespace
}  // namespace clinch
