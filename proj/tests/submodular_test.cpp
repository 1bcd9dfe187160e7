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

#include "clinch/environments.hpp"
#include "clinch/errors.hpp"
#include "clinch/submodular.hpp"
#include "doctest.h"
#include "support.hpp"

namespace clinch {
namespace {

using testing::as_mask_fn;
using testing::brute_clinch;
using testing::brute_member;
using testing::brute_residual;
using testing::Gen;

SubmodularOracle square_oracle(std::size_t n) {
  return SubmodularOracle(
      n, [](Subset s) { return Rational(static_cast<long>(s.size() * s.size())); },
      true, "square");
}

TEST_CASE("evaluate") {
  const auto f = single_keyword_oracle({3, 2, 1});
  CHECK(evaluate(f, Subset::of({0, 1})) == 5);
  CHECK(evaluate(f, Subset{}) == 0);
  CHECK_THROWS_AS(evaluate(f, Subset::singleton(3)), DomainError);

  AdWordsInstance ad;
  ad.bidders = 2;
  ad.keywords = {{{2, 1}, {0, 1}}, {{3}, {1}}};
  CHECK(evaluate(adwords_oracle(ad), Subset::singleton(1)) == 5);
}

TEST_CASE("verify_submodular") {
  CHECK(verify_submodular(multi_unit_oracle(4, 5)).ok());
  CHECK(verify_submodular(single_keyword_oracle({5, 5, 2, 0})).ok());

  const auto report = verify_submodular(square_oracle(3));
  REQUIRE(report.violation == SubmodularityReport::Violation::kSubmodularity);
  CHECK(report.first == Subset::singleton(0));
  CHECK(report.second == Subset::singleton(1));

  const SubmodularOracle shifted(2, [](Subset) { return Rational(1); }, true, "shift");
  CHECK(verify_submodular(shifted).violation ==
        SubmodularityReport::Violation::kNormalization);

  const SubmodularOracle falling(
      2, [](Subset s) { return s == Subset::full(2) ? Rational(0) : Rational(s.size()); },
      true, "falling");
  CHECK(verify_submodular(falling).violation ==
        SubmodularityReport::Violation::kMonotonicity);
}

TEST_CASE("enumeration cap") {
  const SubmodularOracle big(20, [](Subset) { return Rational(0); }, true, "big");
  CHECK_THROWS_AS(SubmodularOracle(40, [](Subset) { return Rational(0); }, true, "huge"),
                  SizeError);
  CHECK_THROWS_AS(verify_submodular(big), SizeError);
}

TEST_CASE("residual examples") {
  const auto f = single_keyword_oracle({3, 2});
  const auto r = residual(f, {1, 0}, {5, 1});
  CHECK(r.total() == 3);
  CHECK(r(Subset::singleton(1)) == 1);
  CHECK(r(Subset::singleton(0)) == 2);
  CHECK(clinch_amounts(f, {1, 0}, {5, 1}) == Vector{2, 1});

  const auto zero = residual(f, {1, 0}, {0, 0});
  for (Subset::Mask m = 0; m < 4; ++m) CHECK(zero(Subset::from_mask(m)) == 0);
  CHECK(clinch_amounts(f, {1, 0}, {0, 0}) == Vector{0, 0});

  const auto same = residual(f, {0, 0}, {3, 3});
  for (Subset::Mask m = 0; m < 4; ++m) {
    CHECK(same(Subset::from_mask(m)) == f(Subset::from_mask(m)));
  }

  CHECK_THROWS_AS(residual(f, {4, 0}, {1, 1}), PreconditionError);
}

TEST_CASE("sole demander clinches the remaining supply") {
  const auto f = multi_unit_oracle(5, 3);
  const Vector rho{1, Rational(1, 2), 0};
  CHECK(clinch_amounts(f, rho, {7, 0, 0})[0] == Rational(7, 2));
  CHECK(clinch_amounts(f, rho, {2, 0, 0})[0] == 2);
}

TEST_CASE("min_constrained") {
  const SetFunction g(2, [](Subset s) {
    Rational v = 0;
    if (s.contains(0)) v -= 1;
    if (s.contains(1)) v += 2;
    return v;
  });
  auto m = min_constrained(g);
  CHECK(m.set == Subset::singleton(0));
  CHECK(m.value == -1);
  m = min_constrained(g, Subset::singleton(1));
  CHECK(m.set == Subset::full(2));
  CHECK(m.value == 1);

  const auto f = single_keyword_oracle({3, 2});
  const Vector x{3, 1};
  const SetFunction tight(2, [&](Subset s) {
    Rational v = f(s);
    for (std::size_t i : s.elements()) v -= x[i];
    return v;
  });
  m = min_constrained(tight, Subset::singleton(0), Subset::singleton(1));
  CHECK(m.set == Subset::singleton(0));
  CHECK(m.value == 0);
}

TEST_CASE("membership") {
  const auto f = single_keyword_oracle({3, 2, 1});
  CHECK(membership(f, Vector{0, 0, 0}).ok());
  CHECK(membership(f, Vector{3, 2, 1}).ok());
  const auto bad = membership(f, Vector{4, 0, 0});
  REQUIRE_FALSE(bad.ok());
  CHECK(*bad.violated == Subset::singleton(0));
  CHECK_THROWS_AS(membership(f, Vector{-1, 0, 0}), DomainError);
}

TEST_CASE("residual against direct enumeration") {
  Gen g(11);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + g.below(5);
    const auto f = single_keyword_oracle(g.ctrs(n), n);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), g.engine());
    Vector rho = greedy_vertex(f, order);
    for (auto& r : rho) r *= testing::frac(g.range(0, 3), 3);
    Vector d(n);
    for (auto& x : d) x = g.rational(0, 3, 2);

    const auto r = residual(f, rho, d);
    const auto fm = as_mask_fn(f);
    for (Subset::Mask s = 0; s < (Subset::Mask{1} << n); ++s) {
      CHECK(r(Subset::from_mask(s)) == brute_residual(fm, rho, d, s));
    }
    CHECK(verify_submodular(r.as_oracle()).ok());
    CHECK(clinch_amounts(f, rho, d) == brute_clinch(fm, rho, d));

    Vector x(n);
    for (auto& q : x) q = g.rational(0, 3, 2);
    CHECK(membership(f, x).ok() == brute_member(fm, x));
  }
}

TEST_CASE("residual of a residual at zero is itself") {
  const auto f = single_keyword_oracle({4, 2, 1});
  const auto r = residual(f, {1, 1, 0}, {2, 1, 3});
  const auto again = residual(r.monotonized_oracle(), {0, 0, 0}, {2, 1, 3});
  for (Subset::Mask s = 0; s < 8; ++s) {
    CHECK(again.monotonized(Subset::from_mask(s)) == r.monotonized(Subset::from_mask(s)));
  }
}

TEST_CASE("greedy vertex is a base") {
  const auto f = single_keyword_oracle({3, 2, 1});
  const Vector v = greedy_vertex(f, std::vector<std::size_t>{2, 0, 1});
  CHECK(v == Vector{2, 1, 3});
  CHECK(membership(f, v).ok());
}

}  // namespace
}  // namespace clinch
