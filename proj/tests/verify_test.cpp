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
#include "clinch/instance.hpp"
#include "clinch/verify.hpp"
#include "doctest.h"
#include "support.hpp"

namespace clinch {
namespace {

using testing::Gen;

const PackingPolytope2D kHexagon{{{2, 1, 6}, {1, 2, 6}}};

Bidder bidder(const Rational& v, const Rational& b) { return {v, Budget(b)}; }

Outcome outcome_of(Vector x, Vector pay, std::vector<std::size_t> exhausted = {}) {
  Outcome o;
  o.allocation = std::move(x);
  o.payments = std::move(pay);
  o.exhausted = std::move(exhausted);
  return o;
}

TEST_CASE("check_outcome flags an unsold unit") {
  const auto f = multi_unit_oracle(1, 2);
  const std::vector<Bidder> bidders{bidder(2, 1), bidder(1, 1)};
  const auto r = check_outcome(f, bidders, outcome_of({0, Rational(1, 2)}, {0, 0}));
  const auto* p = r.find("sold-out");
  REQUIRE(p);
  CHECK_FALSE(p->passed);
  CHECK(p->witness["allocated"] == "1/2");
}

TEST_CASE("check_outcome flags a missing tight set") {
  const auto f = multi_unit_oracle(1, 2);
  const std::vector<Bidder> bidders{bidder(2, 1), bidder(1, 1)};
  const auto r =
      check_outcome(f, bidders, outcome_of({0, 1}, {0, Rational(1, 2)}));
  CHECK(r.find("sold-out")->passed);
  const auto* p = r.find("tight-separation");
  REQUIRE(p);
  CHECK_FALSE(p->passed);
  CHECK(p->witness["bidder"] == 0);
  CHECK(p->witness["lower_value_bidder"] == 1);
  CHECK(p->witness["least_slack_set"] == Json::array({0}));
}

TEST_CASE("check_outcome passes engine outcomes") {
  Gen g(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto& kind = testing::polymatroid_kinds()[trial % 5];
    const auto inst = generate_instance(kind, 1 + g.below(5), 3, 500 + trial);
    const auto o = run_instance(inst);
    CHECK(check_outcome(*instance_oracle(inst), inst.bidders, o).passed());
  }
}

TEST_CASE("dominated direction") {
  const std::vector<Bidder> bidders{bidder(1, 10), bidder(1, 10)};
  CHECK_FALSE(check_dominated_direction(kHexagon, bidders, outcome_of({2, 2}, {0, 0})));

  const auto d = check_dominated_direction(kHexagon, bidders, outcome_of({1, 1}, {0, 0}));
  REQUIRE(d.has_value());
  const Vector y{1 + (*d)[0], 1 + (*d)[1]};
  CHECK(in_dominated_region(kHexagon, y));
  CHECK((*d)[0] + (*d)[1] >= 0);

  // Bidder 1 exhausted: it cannot receive more.
  const auto frozen =
      check_dominated_direction(kHexagon, bidders, outcome_of({2, 1}, {0, 10}, {1}));
  REQUIRE(frozen.has_value());
  CHECK((*frozen)[1] <= 0);

  CHECK_FALSE(in_dominated_region(kHexagon, {2, 2}));
  CHECK_FALSE(in_dominated_region(kHexagon, {3, 1}));

  const std::vector<Bidder> three{bidder(1, 1), bidder(1, 1), bidder(1, 1)};
  CHECK_THROWS_AS(
      check_dominated_direction(kHexagon, three, outcome_of({0, 0, 0}, {0, 0, 0})),
      SizeError);
}

TEST_CASE("monitors pass on engine traces") {
  const auto f = multi_unit_oracle(1, 2);
  const std::vector<Bidder> bidders{bidder(3, Rational(1, 2)), bidder(2, Rational(1, 2))};
  AuctionConfig cfg;
  auto [o, report] = run_with_monitors(PolymatroidEnv{f}, bidders, cfg);
  CHECK(report.passed());
  CHECK(o.trace->size() == o.steps);
}

TEST_CASE("a corrupted promise breaks the conserved quantity") {
  const auto f = multi_unit_oracle(1, 2);
  const std::vector<Bidder> bidders{bidder(3, Rational(1, 2)), bidder(2, Rational(1, 2))};
  AuctionConfig cfg;
  cfg.epsilon_policy = EpsilonPolicy::kFixed;
  cfg.epsilon = Rational(1, 10);
  cfg.trace = true;
  auto trace = *run_clinching(PolymatroidEnv{f}, bidders, cfg).trace;
  REQUIRE(monitor_trace(f, trace).passed());

  const std::size_t k = trace.size() - 2;
  trace[k].rho = {0, 0};
  const auto r = monitor_trace(f, trace);
  const auto* p = r.find("conserved-quantity");
  REQUIRE(p);
  CHECK_FALSE(p->passed);
  CHECK(p->witness["step"] == trace[k].step);
  CHECK(p->witness["phase"] == "before");
}

TEST_CASE("single bidder clinches once at price zero") {
  const auto f = multi_unit_oracle(2, 1);
  const std::vector<Bidder> one{bidder(3, 1)};
  auto [o, report] = run_with_monitors(PolymatroidEnv{f}, one, {});
  CHECK(report.passed());
  std::size_t events = 0;
  for (const auto& s : *o.trace) {
    if (s.delta[0] != 0) {
      ++events;
      CHECK(s.prices[0] == 0);
      CHECK(s.delta[0] == 2);
    }
  }
  CHECK(events == 1);
}

TEST_CASE("monitors on the 2-D polytope") {
  AuctionConfig cfg;
  cfg.epsilon_policy = EpsilonPolicy::kFixed;
  cfg.epsilon = Rational(1, 20);
  cfg.clock = ClockMode::kUniform;
  const std::vector<Bidder> bidders{bidder(Rational(13, 20), 1), bidder(10, 1)};
  auto [o, report] = run_with_monitors(kHexagon, bidders, cfg);
  CHECK(report.passed());
}

FuzzSetup<Rational> fixed_value_setup(std::function<MechanismResult(const Vector&)> mech) {
  FuzzSetup<Rational> setup;
  setup.truth = {3, 2};
  setup.mechanism = std::move(mech);
  for (std::size_t i = 0; i < 2; ++i) {
    setup.grid.push_back(value_deviation_grid(setup.truth, i, Rational(1, 10)));
  }
  const Vector truth = setup.truth;
  setup.utility = [truth](std::size_t i, const Rational& x, const Rational& pay) -> Rational {
    return truth[i] * x - pay;
  };
  setup.describe = [](const Rational& q) { return to_json(q); };
  return setup;
}

TEST_CASE("constant mechanisms are truthful") {
  const auto setup = fixed_value_setup([](const Vector&) {
    return MechanismResult{{1, 0}, {0, 0}};
  });
  CHECK(fuzz_truthfulness(setup).passed());
}

TEST_CASE("a planted manipulation is found and replays") {
  // Bidder 0 wins the item for free by reporting at least 5.
  const auto mech = [](const Vector& reports) {
    return reports[0] >= 5 ? MechanismResult{{1, 0}, {0, 0}}
                           : MechanismResult{{0, 1}, {0, 0}};
  };
  const auto setup = fixed_value_setup(mech);
  const auto r = fuzz_truthfulness(setup);
  const auto* p = r.find("no-profitable-deviation");
  REQUIRE(p);
  REQUIRE_FALSE(p->passed);
  CHECK(p->witness["bidder"] == 0);
  const Rational report = parse_rational(p->witness["report"].get<std::string>());
  CHECK(report >= 5);
  const auto replay = mech(Vector{report, 2});
  CHECK(3 * replay.allocation[0] - replay.payments[0] ==
        parse_rational(p->witness["deviating_utility"].get<std::string>()));
}

TEST_CASE("deviation grids") {
  CHECK(deviation_factors().size() == 20);
  const Vector values{3, 2, 2};
  const auto grid = value_deviation_grid(values, 0, Rational(1, 10));
  CHECK(grid.size() >= 20);
  for (std::size_t a = 0; a < grid.size(); ++a) {
    CHECK(grid[a] > 0);
    CHECK(grid[a] != values[0]);
    for (std::size_t b = a + 1; b < grid.size(); ++b) CHECK(grid[a] != grid[b]);
  }
  CHECK(std::find(grid.begin(), grid.end(), Rational(21, 10)) != grid.end());
  CHECK(std::find(grid.begin(), grid.end(), Rational(19, 10)) != grid.end());

  const ConcaveCurve v({{1, 4}, {1, 1}});
  const auto curves = curve_deviation_grid(v);
  CHECK(std::find(curves.begin(), curves.end(), ConcaveCurve({{1, 4}, {1, 2}})) !=
        curves.end());
  CHECK(std::find(curves.begin(), curves.end(), v) == curves.end());
}

TEST_CASE("fuzzing requires a fixed increment") {
  const std::vector<Bidder> bidders{bidder(2, 1), bidder(1, 1)};
  CHECK_THROWS_AS(fuzz_clinching(PolymatroidEnv{multi_unit_oracle(1, 2)}, bidders, {}),
                  DomainError);
}

TEST_CASE("clinching survives the fuzz on small instances") {
  AuctionConfig cfg;
  cfg.epsilon_policy = EpsilonPolicy::kFixed;
  cfg.epsilon = Rational(1, 4);
  const std::vector<Bidder> bidders{bidder(3, 2), bidder(2, 1), {5, Budget::unbounded()}};
  CHECK(fuzz_clinching(PolymatroidEnv{multi_unit_oracle(2, 3)}, bidders, cfg).passed());
  CHECK(fuzz_clinching(SingleKeywordEnv{{3, 2, 1}}, bidders, cfg).passed());
}

TEST_CASE("decreasing-marginals demo") {
  const auto r = demo_appendix_d();
  CHECK(r.passed());
  for (const char* name : {"truthful-outcome", "deviating-allocation", "deviating-payment",
                           "clinch-at-price-2", "fuzz-finds-deviation"}) {
    const auto* p = r.find(name);
    REQUIRE(p);
    CHECK(p->passed);
  }
  const Json& witness = r.data()["fuzz_witness"];
  bool found = false;
  for (const auto& e : witness["all_profitable"]) {
    if (e["bidder"] == 0 && e["report"] == Json::parse(R"([["1","4"],["1","2"]])")) {
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("impossibility demo") {
  const auto r = demo_impossibility();
  CHECK(r.find("pareto-failure-detected")->passed);
  // Both fixed profiles are documented misses of the round-robin clock:
  // (13/20, 10) ends on the 2:1 facet where no exchange pays, and
  // (1/10, 1/10) ends at (0, 3) rather than at (2, 2).
  CHECK_FALSE(r.find("dominated-direction-13/20-10")->passed);
  CHECK_FALSE(r.find("efficient-vertex-1/10-1/10")->passed);
  CHECK(r.data()["uniform_clock"]["13/20-10"]["direction"] == Json::array({"0", "0"}));
  CHECK(impossibility_threshold() > 1.2380);
  CHECK(impossibility_threshold() < 1.2382);
}

TEST_CASE("round-robin Pareto failure on the hexagon") {
  // Bidder 1 is exhausted on the facet x0 + 2x1 = 6, and v1 < 2 v0 makes
  // trading one unit of x1 for two of x0 an improvement.
  const std::vector<Bidder> bidders{bidder(Rational(21, 40), 1), bidder(1, 1)};
  AuctionConfig cfg;
  cfg.epsilon_policy = EpsilonPolicy::kFixed;
  cfg.epsilon = Rational(1, 20);
  const Outcome o = run_clinching(kHexagon, bidders, cfg);
  CHECK(o.allocation[0] + 2 * o.allocation[1] == 6);
  CHECK(o.exhausted == std::vector<std::size_t>{1});
  const auto d = check_dominated_direction(kHexagon, bidders, o);
  REQUIRE(d.has_value());
  CHECK((*d)[1] <= 0);
  CHECK(Rational(21, 40) * (*d)[0] + (*d)[1] >= 0);
  CHECK(in_dominated_region(kHexagon, {o.allocation[0] + (*d)[0], o.allocation[1] + (*d)[1]}));
}

TEST_CASE("demo reports are deterministic") {
  CHECK(demo_appendix_d().to_json().dump() == demo_appendix_d().to_json().dump());
  CHECK(demo_impossibility().to_json().dump() == demo_impossibility().to_json().dump());
}

}  // namespace
}  // namespace clinch
