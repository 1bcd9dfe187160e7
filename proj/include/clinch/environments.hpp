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

// Polymatroidal allocation environments: each constructor returns the
// submodular function whose polymatroid is the set of feasible allocations.

#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "clinch/rational.hpp"
#include "clinch/submodular.hpp"

namespace clinch {

/// Supply Q of one divisible good: f(S) = Q for S nonempty, f(empty) = 0.
SubmodularOracle multi_unit_oracle(const Rational& supply, std::size_t n);

/// One keyword whose slots have nonincreasing click-through rates `ctrs`:
/// f(S) = ctrs[0] + ... + ctrs[|S|-1]. The ground set has ctrs.size()
/// bidders.
SubmodularOracle single_keyword_oracle(const Vector& ctrs);

/// Same, for n bidders: ctrs are truncated or padded with zero-CTR slots to
/// length n.
SubmodularOracle single_keyword_oracle(const Vector& ctrs, std::size_t n);

/// Throws DomainError unless ctrs is nonincreasing and nonnegative.
void require_ctr_list(const Vector& ctrs);

struct Keyword {
  /// Nonincreasing CTRs, one per slot. Normalized to one slot per interested
  /// bidder when the oracle is built.
  Vector ctrs;
  /// Gamma(k): interested bidders, each listed once.
  std::vector<std::size_t> bidders;
};

/// Bipartite bidder/keyword interest structure, derived from the keywords.
struct InterestGraph {
  std::vector<std::vector<std::size_t>> keywords_of_bidder;
  std::vector<std::vector<std::size_t>> bidders_of_keyword;
};

/// Multi-keyword sponsored-search instance.
struct AdWordsInstance {
  std::size_t bidders = 0;
  std::vector<Keyword> keywords;
  /// Uniform per-bidder quality factors. Consumed by the scaled auction, not
  /// by adwords_oracle.
  std::optional<Vector> quality;

  /// Validates the instance and returns the interest graph. Throws
  /// DomainError on out-of-range or duplicate bidders, keywords without
  /// bidders, or CTR lists that increase.
  InterestGraph interest_graph() const;

  /// Keyword k's CTRs padded/truncated to |Gamma(k)|.
  Vector normalized_ctrs(std::size_t keyword) const;
};

/// f*(S) = sum over keywords k of f_k(S & Gamma(k)).
SubmodularOracle adwords_oracle(const AdWordsInstance& instance);

/// Rejects per-keyword quality factors: only a uniform vector gamma_i is a
/// scaled polymatroid. `per_keyword[k][i]` is gamma^k_i for i in Gamma(k).
/// Returns the uniform vector when all keywords agree.
Vector uniform_quality(const AdWordsInstance& instance,
                       const std::vector<Vector>& per_keyword);

/// Per-keyword split of an AdWords allocation: shares[k][j] is the amount
/// bidder instance.keywords[k].bidders[j] receives from keyword k.
struct Decomposition {
  std::vector<Vector> shares;
};

/// Exact feasibility search for x = sum_k x^k with x^k in P(f_k). Returns
/// std::nullopt when no split exists. Requires bidders, keyword count and
/// every |Gamma(k)| to be within the enumeration cap.
std::optional<Decomposition> decompose(const AdWordsInstance& instance,
                                       std::span<const Rational> x);

struct GraphEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  /// Owning bidder; every edge must carry one.
  std::optional<std::size_t> bidder;
};

struct GraphicInstance {
  std::size_t vertices = 0;
  std::vector<GraphEdge> edges;
};

/// Graphic matroid rank: each bidder owns one edge, f(S) is the size of a
/// spanning forest of S's edges.
SubmodularOracle graphic_oracle(const GraphicInstance& graph);

struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;
  Rational capacity;
};

struct CapacitatedNetwork {
  std::size_t nodes = 0;
  std::size_t source = 0;
  std::vector<Arc> arcs;
  /// Node of each bidder.
  std::vector<std::size_t> bidder_nodes;
};

/// Video-on-demand environment: f(S) is the minimum s-cut separating the
/// source from the nodes of S.
SubmodularOracle vod_cut_oracle(const CapacitatedNetwork& network);

/// Exact max-flow value from the network source into `sinks`.
Rational max_flow_to(const CapacitatedNetwork& network,
                     const std::vector<std::size_t>& sinks);

/// Two-bidder packing polytope {x >= 0 : a_r . x <= b_r}, a_r >= 0.
struct PackingPolytope2D {
  struct Row {
    Rational a0;
    Rational a1;
    Rational b;
  };
  std::vector<Row> rows;

  /// Throws DomainError for negative coefficients/bounds or an unbounded
  /// coordinate.
  void validate() const;
  bool contains(const Rational& x0, const Rational& x1) const;
  /// Largest t with point + t e_i still inside; point must be inside.
  Rational headroom(const Vector& point, std::size_t i) const;
  /// True when some coordinate of `point` can be raised while staying
  /// feasible, i.e. the point is weakly dominated inside the polytope.
  bool dominated(const Vector& point) const;

  /// f(S) = max x(S) over the polytope. P(f) always contains the polytope.
  SubmodularOracle rank_oracle() const;
  /// A vertex of P(rank_oracle()) outside the polytope; nullopt when the two
  /// coincide, i.e. the polytope is a polymatroid.
  std::optional<Vector> polymatroid_gap() const;
};

}  // namespace clinch
