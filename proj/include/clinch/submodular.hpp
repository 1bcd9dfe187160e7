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

// Exact set-function oracles over a ground set of bidders, the residual
// (remnant-supply) polymatroid, brute-force constrained minimization and
// the clinch-amount computation built on top of them.
//
// All minimization here is exhaustive subset enumeration; operations that
// enumerate refuse ground sets larger than brute_force_cap().

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "clinch/rational.hpp"
#include "clinch/subset.hpp"

namespace clinch {

inline constexpr std::size_t kDefaultBruteForceCap = 16;

/// Largest n for which subsets are enumerated. CLINCH_BRUTE_FORCE_CAP
/// overrides the default of 16 (clamped to kMaxGroundSize).
std::size_t brute_force_cap();

/// Throws SizeError when n exceeds brute_force_cap().
void require_enumerable(std::size_t n, std::string_view operation);

/// A plain evaluator S -> value over {0..n-1}. No structural claims.
class SetFunction {
 public:
  SetFunction(std::size_t n, std::function<Rational(Subset)> fn);

  std::size_t size() const { return n_; }
  Subset ground() const { return Subset::full(n_); }
  Rational operator()(Subset s) const { return fn_(s); }

 private:
  std::size_t n_;
  std::function<Rational(Subset)> fn_;
};

/// Normalized submodular function f over the bidders, defining the
/// polymatroid {x >= 0 : x(S) <= f(S) for all S}.
///
/// Immutable after construction. Copies share one lazily built value table,
/// so concurrent readers are safe.
class SubmodularOracle {
 public:
  SubmodularOracle(std::size_t n, std::function<Rational(Subset)> fn,
                   bool monotone, std::string name);

  std::size_t size() const;
  Subset ground() const { return Subset::full(size()); }
  bool claims_monotone() const;
  const std::string& name() const;

  /// f(S). Uses the value table when it has been built.
  Rational operator()(Subset s) const;

  /// f over every subset, indexed by mask. Built once on first use;
  /// requires size() <= brute_force_cap().
  const std::vector<Rational>& table() const;

  SetFunction as_set_function() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// Uniform call surface: f(S), with S checked against the ground set.
Rational evaluate(const SubmodularOracle& oracle, Subset s);

/// Result of verify_submodular. On failure (first, second) is a violating
/// pair: f(A|B) + f(A&B) > f(A) + f(B) for submodularity, f(A) > f(B) with
/// A subset of B for monotonicity, and (empty, empty) for normalization.
struct SubmodularityReport {
  enum class Violation { kNone, kNormalization, kSubmodularity, kMonotonicity };

  Violation violation = Violation::kNone;
  Subset first;
  Subset second;

  bool ok() const { return violation == Violation::kNone; }
};

const char* to_string(SubmodularityReport::Violation violation);

/// Exhaustive check of normalization, submodularity and (if claimed)
/// monotonicity. Uses the local exchange form f(S+i) + f(S+j) >= f(S+i+j) +
/// f(S), which is equivalent to the all-pairs inequality and yields a
/// violating pair directly.
SubmodularityReport verify_submodular(const SubmodularOracle& oracle);

struct ConstrainedMinimum {
  Subset set;
  Rational value;
};

/// Minimizes fn(S) over include <= S <= ground \ exclude. Ties go to the
/// smallest set, then the lexicographically smallest one.
ConstrainedMinimum min_constrained(const SetFunction& fn, Subset include = {},
                                   Subset exclude = {});

struct Membership {
  /// Most violated nonempty set (minimizing f(S) - x(S)), if any. The
  /// largest minimizer is returned; it is unique.
  std::optional<Subset> violated;
  bool ok() const { return !violated.has_value(); }
};

/// x in P(f)? Negative coordinates are a DomainError.
Membership membership(const SubmodularOracle& f, std::span<const Rational> x);

/// Remnant-supply polymatroid P_{rho,d} = {x >= 0 : rho + x in P, x <= d}
/// as the set function
///
///   fhat(S) = min_{T subset of S} f(T) - rho(T) + d(S \ T),
///
/// plus its monotone closure fbar(S) = min_{S' superset of S} fhat(S').
/// Both are tabulated on first use for this (rho, d) snapshot.
class ResidualOracle {
 public:
  ResidualOracle(SubmodularOracle base, Vector rho, Vector demand);

  std::size_t size() const { return base_.size(); }
  const SubmodularOracle& base() const { return base_; }
  const Vector& rho() const { return rho_; }
  const Vector& demand() const { return demand_; }

  Rational operator()(Subset s) const;
  Rational monotonized(Subset s) const;

  /// fhat([n]): the most that can still be handed out in total.
  Rational total() const { return (*this)(Subset::full(size())); }

  /// fhat as a standalone oracle (not claimed monotone).
  SubmodularOracle as_oracle() const;
  SubmodularOracle monotonized_oracle() const;

 private:
  struct Tables;
  const Tables& tables() const;

  SubmodularOracle base_;
  Vector rho_;
  Vector demand_;
  std::shared_ptr<Tables> tables_;
};

/// Builds the residual oracle after checking rho in P(f) (PreconditionError
/// with the violating set otherwise) and d >= 0.
ResidualOracle residual(const SubmodularOracle& f, Vector rho, Vector demand);

/// delta_i = max{0, fhat([n]) - fhat([n] \ i)}: the amount bidder i can be
/// granted without shrinking what the others can still be served.
Vector clinch_amounts(const SubmodularOracle& f, const Vector& rho,
                      const Vector& demand);

/// x_{order[k]} = f(first k+1 of order) - f(first k of order).
Vector greedy_vertex(const SubmodularOracle& f,
                     std::span<const std::size_t> order);

}  // namespace clinch
