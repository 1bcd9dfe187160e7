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


#include <vector>

#include "clinch/auction.hpp"
#include "clinch/environments.hpp"
#include "clinch/errors.hpp"
#include "doctest.h"
#include "support.hpp"

namespace clinch {
namespace {

using testing::Gen;
using testing::reference_multi_unit;

AuctionConfig fixed(const Rational& eps) {
  AuctionConfig cfg;
  cfg.epsilon_policy = EpsilonPolicy::kFixed;
  cfg.epsilon = eps;
  return cfg;
}

Bidder bidder(const Rational& v, const Rational& b) { return {v, Budget(b)}; }

TEST_CASE("demand") {
  CHECK(demand(Budget(Rational(4)), 2, 3, 10) == 2);
  CHECK(demand(Budget(Rational(4)), 0, 3, 7) == 7);
  CHECK(demand(Budget(Rational(4)), 3, 3, 7) == 0);
  CHECK(demand(Budget::unbounded(), 1, 3, 7) == 7);
  CHECK(demand(Budget(Rational(40)), 1, 3, 7) == 7);
}

TEST_CASE("single bidder takes everything for free") {
  const std::vector<Bidder> one{{3, Budget::unbounded()}};
  const auto o = run_clinching(PolymatroidEnv{multi_unit_oracle(2, 1)}, one, {});
  CHECK(o.allocation == Vector{2});
  CHECK(o.payments == Vector{0});
}

TEST_CASE("loose budgets give the second price") {
  const std::vector<Bidder> two{bidder(2, 100), bidder(1, 100)};
  const Rational eps(1, 100);
  const auto o = run_clinching(PolymatroidEnv{multi_unit_oracle(1, 2)}, two, fixed(eps));
  CHECK(o.allocation == Vector{1, 0});
  CHECK(o.payments[0] >= 1);
  CHECK(o.payments[0] < 1 + eps);
  const auto [x, pay] = reference_multi_unit(1, two, eps);
  CHECK(o.allocation == x);
  CHECK(o.payments == pay);
}

TEST_CASE("binding budgets are spent in full") {
  const std::vector<Bidder> two{bidder(3, Rational(1, 2)), bidder(2, Rational(1, 2))};
  const auto o =
      run_clinching(PolymatroidEnv{multi_unit_oracle(1, 2)}, two, fixed(Rational(1, 100)));
  // Bidder 0 spends its budget. Bidder 1 stops at its value 2 first.
  CHECK(o.payments[0] == Rational(1, 2));
  CHECK(o.payments[1] < Rational(1, 2));
  CHECK(o.exhausted == std::vector<std::size_t>{0});
  const auto [x, pay] = reference_multi_unit(1, two, Rational(1, 100));
  CHECK(o.allocation == x);
  CHECK(o.payments == pay);
  CHECK(sum(o.allocation) == 1);
  CHECK(o.allocation[0] > o.allocation[1]);
}

TEST_CASE("engine matches the hand-written multi-unit clock") {
  Gen g(21);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 1 + g.below(4);
    std::vector<Bidder> bidders;
    for (std::size_t i = 0; i < n; ++i) {
      bidders.push_back(bidder(g.range(1, 6), g.rational(1, 4, 2)));
    }
    const Rational supply = g.range(1, 3);
    const Rational eps(1, g.range(2, 5));
    const auto o = run_clinching(PolymatroidEnv{multi_unit_oracle(supply, n)}, bidders,
                                 fixed(eps));
    const auto [x, pay] = reference_multi_unit(supply, bidders, eps);
    CHECK(o.allocation == x);
    CHECK(o.payments == pay);
  }
}

TEST_CASE("invalid inputs") {
  const std::vector<Bidder> bad{bidder(0, 1)};
  CHECK_THROWS_AS(run_clinching(PolymatroidEnv{multi_unit_oracle(1, 1)}, bad, {}),
                  DomainError);
  const std::vector<Bidder> two{bidder(1, 1), bidder(2, 1)};
  CHECK_THROWS_AS(run_clinching(PolymatroidEnv{multi_unit_oracle(1, 1)}, two, {}),
                  DomainError);
  AuctionConfig tiny = fixed(Rational(1, 1000));
  tiny.max_steps = 3;
  CHECK_THROWS_AS(run_clinching(PolymatroidEnv{multi_unit_oracle(1, 2)}, two, tiny),
                  DivergenceError);
}

TEST_CASE("fast residual") {
  CHECK(fast_residual_max({3, 2}, {1, 0}, {5, 1}) == 3);
  CHECK(fast_residual_max({3, 2, 1}, {0, 0, 0}, {2, 2, 2}) == 6);
  CHECK(fast_residual_max({3, 2, 1}, {1, 1, 0}, {0, 0, 0}) == 0);
  CHECK(fast_clinch_amounts({3, 2}, {1, 0}, {5, 1}) == Vector{2, 1});
  CHECK_THROWS_AS(fast_residual_max({3, 2}, {4, 0}, {1, 1}), PreconditionError);
}

TEST_CASE("fast path equals the generic path") {
  Gen g(22);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + g.below(4);
    std::vector<Bidder> bidders;
    for (std::size_t i = 0; i < n; ++i) bidders.push_back(bidder(g.range(1, 8), g.range(1, 5)));
    const SingleKeywordEnv env{g.ctrs(n)};
    AuctionConfig cfg;
    const auto fast = run_clinching(env, bidders, cfg);
    cfg.force_generic = true;
    const auto slow = run_clinching(env, bidders, cfg);
    CHECK(fast.allocation == slow.allocation);
    CHECK(fast.payments == slow.payments);
  }
}

TEST_CASE("scaled") {
  const std::vector<Bidder> one{{3, Budget::unbounded()}};
  const auto solo = run_scaled(multi_unit_oracle(2, 1), {2}, one, {});
  CHECK(solo.allocation == Vector{4});
  CHECK(solo.payments == Vector{0});

  const std::vector<Bidder> two{bidder(1, 50), bidder(3, 50)};
  const auto f = multi_unit_oracle(1, 2);
  const auto scaled = run_scaled(f, {2, 1}, two, {});
  const std::vector<Bidder> lifted{bidder(2, 50), bidder(3, 50)};
  const auto base = run_clinching(PolymatroidEnv{f}, lifted, {});
  CHECK(scaled.allocation == Vector{2 * base.allocation[0], base.allocation[1]});
  CHECK(scaled.payments == base.payments);

  const auto same = run_scaled(f, {1, 1}, two, {});
  const auto plain = run_clinching(PolymatroidEnv{f}, two, {});
  CHECK(same.allocation == plain.allocation);
  CHECK(same.payments == plain.payments);
  CHECK(same.exhausted == plain.exhausted);

  CHECK_THROWS_AS(run_scaled(f, {0, 1}, two, {}), DomainError);
}

TEST_CASE("generic two-player clinching") {
  const PackingPolytope2D p{{{2, 1, 6}, {1, 2, 6}}};
  CHECK(clinch_generic_2player(p, {0, 0}, {10, 10}) == Vector{0, 0});
  CHECK(clinch_generic_2player(p, {0, 0}, {1, 0}) == Vector{1, 0});
  CHECK(clinch_generic_2player(p, {0, 0}, {0, 0}) == Vector{0, 0});
  const PackingPolytope2D three{{{1, 1, 1}}};
  const std::vector<Bidder> bidders{bidder(1, 1), bidder(1, 1), bidder(1, 1)};
  CHECK_THROWS_AS(run_clinching(three, bidders, {}), SizeError);
}

TEST_CASE("concave curves") {
  const ConcaveCurve v({{1, 4}, {1, 1}});
  CHECK(v.length() == 2);
  CHECK(v(Rational(1, 2)) == 2);
  CHECK(v(2) == 5);
  CHECK(v.wanted_beyond(0, 2) == 1);
  CHECK(v.wanted_beyond(0, Rational(1, 2)) == 2);
  CHECK(v.wanted_beyond(0, 4) == 0);
  CHECK_THROWS_AS(ConcaveCurve({{1, 1}, {1, 2}}), DomainError);
}

TEST_CASE("decreasing marginals") {
  const std::vector<ConcaveCurve> curves{ConcaveCurve({{1, 4}, {1, 1}}),
                                         ConcaveCurve::linear(3, 2)};
  const std::vector<Budget> budgets{Budget::unbounded(), Budget(Rational(4))};
  AuctionConfig cfg = fixed(Rational(1, 100));
  cfg.clock = ClockMode::kUniform;
  const auto o = run_decreasing_marginals(curves, budgets, 2, cfg);
  CHECK(o.allocation == Vector{1, 1});
  CHECK(o.payments == Vector{3, 1});
}

TEST_CASE("linear curves reduce to plain clinching") {
  Gen g(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + g.below(3);
    const Rational supply = g.range(1, 3);
    std::vector<Bidder> bidders;
    std::vector<ConcaveCurve> curves;
    std::vector<Budget> budgets;
    for (std::size_t i = 0; i < n; ++i) {
      bidders.push_back(bidder(g.range(1, 6), g.range(1, 4)));
      curves.push_back(ConcaveCurve::linear(bidders.back().value, supply));
      budgets.push_back(bidders.back().budget);
    }
    const AuctionConfig cfg = fixed(Rational(1, 4));
    const auto a = run_decreasing_marginals(curves, budgets, supply, cfg);
    const auto b = run_clinching(PolymatroidEnv{multi_unit_oracle(supply, n)}, bidders, cfg);
    CHECK(a.allocation == b.allocation);
    CHECK(a.payments == b.payments);
  }
}

}  // namespace
}  // namespace clinch
