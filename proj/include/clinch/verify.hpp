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

// Property checkers for auction outcomes: Pareto optimality (tight sets on
// polymatroids, dominated directions on 2-D polytopes), individual
// rationality and budgets, truthfulness fuzzing, per-step invariant
// monitors, and the two counterexample demos.
//
// Every failed property carries a witness that can be replayed on its own.

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clinch/auction.hpp"
#include "clinch/environments.hpp"
#include "clinch/rational.hpp"
#include "clinch/submodular.hpp"
#include "json.hpp"

namespace clinch {

using Json = nlohmann::ordered_json;

struct PropertyResult {
  std::string name;
  bool passed = true;
  /// Human-readable summary; empty when nothing to add.
  std::string detail;
  /// Machine-checkable witness for a failure (null on pass).
  Json witness;
};

class VerificationReport {
 public:
  VerificationReport() = default;
  explicit VerificationReport(std::string subject)
      : subject_(std::move(subject)) {}

  const std::string& subject() const { return subject_; }
  const std::vector<PropertyResult>& properties() const { return properties_; }

  void add(PropertyResult result) { properties_.push_back(std::move(result)); }
  void pass(std::string name, std::string detail = {});
  void fail(std::string name, std::string detail, Json witness);
  /// Appends every property of `other`, prefixing names with `prefix`.
  void merge(const VerificationReport& other, const std::string& prefix = {});

  bool passed() const;
  /// nullptr when no property has this name.
  const PropertyResult* find(const std::string& name) const;

  /// Free-form context (traces, narrative) serialized after the properties.
  Json& data() { return data_; }
  const Json& data() const { return data_; }

  /// {"subject", "passed", "properties": [...], "data"} in that order.
  Json to_json() const;

 private:
  std::string subject_;
  std::vector<PropertyResult> properties_;
  Json data_ = Json::object();
};

// Serialization helpers shared with the command-line tool.
Json to_json(const Rational& q);
Json to_json(const Vector& v);
Json to_json(const Budget& b);
Json to_json(const Snapshot& snapshot);
Json to_json(const Outcome& outcome);

/// Polymatroid outcome checks: sold-out, tight separating sets, individual
/// rationality, budgets, and membership x in P(f).
VerificationReport check_outcome(const SubmodularOracle& f,
                                 std::span<const Bidder> bidders,
                                 const Outcome& outcome);

/// True when `point` lies in the dominated region of the polytope, i.e.
/// some feasible point other than it is coordinatewise at least as large.
bool in_dominated_region(const PackingPolytope2D& polytope,
                         const Vector& point);

/// A direction d with x + d dominated, d.v >= 0 and d_i <= 0 for every
/// bidder whose payment equals its budget; nullopt when none exists. Exact
/// and complete for two bidders. SizeError for any other dimension.
std::optional<Vector> check_dominated_direction(
    const PackingPolytope2D& polytope, std::span<const Bidder> bidders,
    const Outcome& outcome);

/// What a mechanism hands back for one report profile.
struct MechanismResult {
  Vector allocation;
  Vector payments;
};

/// Reruns `mechanism` with bidder i's report replaced by each entry of
/// grid[i] and compares utilities exactly against truthful reporting.
/// Fails with the most profitable deviation found. `utility(i, x, pay)`
/// is bidder i's true utility; `describe` renders a report for witnesses.
template <class Report>
struct FuzzSetup {
  std::function<MechanismResult(const std::vector<Report>&)> mechanism;
  std::vector<Report> truth;
  std::vector<std::vector<Report>> grid;
  std::function<Rational(std::size_t, const Rational&, const Rational&)>
      utility;
  std::function<Json(const Report&)> describe;
};

VerificationReport fuzz_truthfulness(const FuzzSetup<Rational>& setup);
VerificationReport fuzz_truthfulness(const FuzzSetup<ConcaveCurve>& setup);

/// Multiplicative factors of the deviation grid, spanning [1/4, 4].
const std::vector<Rational>& deviation_factors();

/// Deviations for bidder i: every factor times v_i, a report 0+ below both
/// v_i and eps, and each other bidder's value plus and minus eps. Positive,
/// distinct from v_i and free of repeats.
std::vector<Rational> value_deviation_grid(std::span<const Rational> values,
                                           std::size_t i,
                                           const Rational& epsilon);

/// Deviations for a concave curve: each segment's slope scaled by every
/// factor, keeping only the results that are still concave.
std::vector<ConcaveCurve> curve_deviation_grid(const ConcaveCurve& curve);

/// Truthfulness fuzz of run_clinching over `env`. cfg must use a fixed
/// epsilon; the grid is value_deviation_grid with that epsilon.
VerificationReport fuzz_clinching(const Environment& env,
                                  std::span<const Bidder> bidders,
                                  const AuctionConfig& cfg);

/// Truthfulness fuzz of run_decreasing_marginals with curve_deviation_grid.
VerificationReport fuzz_decreasing_marginals(
    const std::vector<ConcaveCurve>& curves, const std::vector<Budget>& budgets,
    const Rational& supply, const AuctionConfig& cfg);

/// Step invariants over a polymatroid trace: 1.rho + fhat([n]) constant,
/// post-clinch fhat([n]) <= fhat([n] \ j), rho in P, a second clinch at the
/// same state grants nothing, remaining budgets nonnegative. `gamma`
/// describes a scaled run (trace in allocation units, f unscaled).
VerificationReport monitor_trace(const SubmodularOracle& f,
                                 const std::vector<Snapshot>& trace,
                                 const std::optional<Vector>& gamma = {});

/// Invariants that make sense on a 2-D packing polytope: feasibility,
/// re-clinch grants nothing, remaining budgets nonnegative.
VerificationReport monitor_trace(const PackingPolytope2D& polytope,
                                 const std::vector<Snapshot>& trace);

/// run_clinching with tracing forced on, followed by monitor_trace. Never
/// throws on a monitor violation; engine errors propagate.
std::pair<Outcome, VerificationReport> run_with_monitors(
    const Environment& env, std::span<const Bidder> bidders,
    AuctionConfig cfg);

/// The decreasing-marginals counterexample: supply 2, B = (inf, 4),
/// V_1 = 4x on [0,1] then slope 1, V_2 = 3x; deviation doubles V_1's
/// second slope. Runs the simultaneous clock, so both bidders face one price.
VerificationReport demo_appendix_d();

/// Generic clinching (round-robin clock, eps = 1/100) on {2x0 + x1 <= 6,
/// x0 + 2x1 <= 6}, B = (1, 1). Checks a sweep of value profiles for any
/// dominated direction, then the profiles (13/20, 10) and (1/10, 1/10).
VerificationReport demo_impossibility();

/// Root of 1 - v/2 + log(3v/2) = 1 above v = 2/3, to within 1e-4.
double impossibility_threshold();

}  // namespace clinch
