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

// Ascending-price clinching auctions for budget-constrained bidders.
//
// Every run follows the same loop: compute demands at the current prices,
// clinch, charge each clinched amount at the bidder's current price,
// recompute demands, advance the price clock, and stop once every demand is
// zero. The variants differ in the environment (how much can be clinched),
// the demand rule, and how the price clock moves.

#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "clinch/environments.hpp"
#include "clinch/rational.hpp"
#include "clinch/submodular.hpp"

namespace clinch {

struct Bidder {
  /// Per-unit value; must be positive.
  Rational value;
  Budget budget;
};

enum class EpsilonPolicy {
  /// Use AuctionConfig::epsilon. Independent of reported values, so the
  /// price trajectory cannot be manipulated.
  kFixed,
  /// Half the smallest gap between distinct values, capped by half the
  /// smallest value. Small enough for the tight-set guarantee.
  kAuto,
};

enum class ClockMode {
  /// One bidder's price moves per iteration, in index order.
  kRoundRobin,
  /// Every price moves each iteration (a single shared clock).
  kUniform,
};

struct AuctionConfig {
  EpsilonPolicy epsilon_policy = EpsilonPolicy::kAuto;
  Rational epsilon = Rational(1, 100);
  std::size_t max_steps = 1'000'000;
  bool trace = false;
  ClockMode clock = ClockMode::kRoundRobin;
  /// Single-keyword environments normally use the greedy clinch; this
  /// forces the generic submodular-minimization path.
  bool force_generic = false;
};

/// One loop iteration. `rho`, `demand` and `residual` describe the state
/// when the iteration starts; the *_after fields describe it after clinching
/// and the demand update, before the price moves.
struct Snapshot {
  std::size_t step = 0;
  Vector prices;
  Vector rho;
  Vector demand;
  Vector delta;
  Vector rho_after;
  Vector demand_after;
  /// Budgets left when the iteration starts.
  std::vector<Budget> remaining;
  /// Most that could still be handed out in total, before and after the
  /// clinch (fhat([n]) for polymatroids; in scaled units for scaled runs).
  Rational residual;
  Rational residual_after;
};

struct Outcome {
  Vector allocation;
  Vector payments;
  /// Bidders whose payment equals their (finite) budget.
  std::vector<std::size_t> exhausted;
  std::optional<std::vector<Snapshot>> trace;
  std::size_t steps = 0;
  Rational epsilon;
};

/// Environments the clinching engine accepts.
struct PolymatroidEnv {
  SubmodularOracle f;
};
struct SingleKeywordEnv {
  Vector ctrs;
};
struct ScaledEnv {
  SubmodularOracle f;
  Vector gamma;
};
using Environment =
    std::variant<PolymatroidEnv, SingleKeywordEnv, ScaledEnv, PackingPolytope2D>;

/// Bidder count implied by the environment, when it fixes one.
std::optional<std::size_t> environment_size(const Environment& env);

/// The polymatroid oracle behind a polymatroid or single-keyword environment
/// (the unscaled one for a scaled environment). nullopt for 2-D polytopes.
std::optional<SubmodularOracle> environment_oracle(const Environment& env);

/// Resolves the price increment for a run with these values.
Rational resolve_epsilon(const AuctionConfig& cfg,
                         std::span<const Rational> values);

/// Quantity demanded at price p: min{B/p, cap} while p < v, cap when p = 0,
/// nothing once p >= v. An unbounded budget demands the cap.
Rational demand(const Budget& remaining, const Rational& price,
                const Rational& value, const Rational& cap);

/// The clinching auction. Dispatches on the environment: polymatroids use
/// submodular minimization, single-keyword uses the greedy fast path (unless
/// cfg.force_generic), scaled environments go to run_scaled, and 2-D packing
/// polytopes use clinch_generic_2player.
Outcome run_clinching(const Environment& env, std::span<const Bidder> bidders,
                      const AuctionConfig& cfg);

/// max{1.x : x + rho in P, 0 <= x <= d} for one keyword with CTRs alpha,
/// by the sorted greedy fill. Equals fhat([n]).
Rational fast_residual_max(const Vector& ctrs, const Vector& rho,
                           const Vector& demand);

/// Clinch amounts on a single-keyword polytope via fast_residual_max.
Vector fast_clinch_amounts(const Vector& ctrs, const Vector& rho,
                           const Vector& demand);

/// Auction on the scaled polymatroid {x : (x_i / gamma_i) in P(f)}. Runs
/// the clock in allocation units: bidder i's price moves by eps / gamma_i,
/// where eps is resolved on the values gamma_i v_i.
Outcome run_scaled(const SubmodularOracle& f, const Vector& gamma,
                   std::span<const Bidder> bidders, const AuctionConfig& cfg);

/// Generic polyhedral clinching for two bidders: delta_0 is the largest x_0
/// that leaves bidder 1's feasible set unchanged, and symmetrically.
Vector clinch_generic_2player(const PackingPolytope2D& polytope,
                              const Vector& rho, const Vector& demand);

/// Piecewise-linear concave valuation V on [0, total length], given by
/// consecutive segments with positive nonincreasing slopes.
class ConcaveCurve {
 public:
  struct Segment {
    Rational length;
    Rational slope;
  };

  explicit ConcaveCurve(std::vector<Segment> segments);
  /// V(x) = value * x on [0, length].
  static ConcaveCurve linear(const Rational& value, const Rational& length);

  const std::vector<Segment>& segments() const { return segments_; }
  Rational length() const;

  /// V(x); constant beyond the last segment.
  Rational operator()(const Rational& x) const;

  /// Total length of segments with slope strictly above p, measured from
  /// `from`: how much more the bidder wants at marginal price p. Right
  /// continuous: at a breakpoint the slope after it governs.
  Rational wanted_beyond(const Rational& from, const Rational& price) const;

  friend bool operator==(const ConcaveCurve&, const ConcaveCurve&);

 private:
  std::vector<Segment> segments_;
};

/// Multi-unit auction with supply s and concave valuations; demands are
/// min{B/p, amount still wanted at marginal price p}, capped by the supply
/// left for the bidder. cfg.epsilon_policy kAuto uses the distinct slopes.
Outcome run_decreasing_marginals(const std::vector<ConcaveCurve>& curves,
                                 const std::vector<Budget>& budgets,
                                 const Rational& supply,
                                 const AuctionConfig& cfg);

}  // namespace clinch
