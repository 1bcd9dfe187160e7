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

#include "clinch/environments.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>

#include "clinch/errors.hpp"
#include "exact_lp.hpp"
#include "geometry2d.hpp"

namespace clinch {
namespace {

// prefix[k] = ctrs[0] + ... + ctrs[k-1], for k = 0..n.
Vector ctr_prefix_sums(const Vector& ctrs, std::size_t n) {
  Vector prefix = zeros(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    prefix[k + 1] = prefix[k] + (k < ctrs.size() ? ctrs[k] : Rational(0));
  }
  return prefix;
}

}  // namespace

SubmodularOracle multi_unit_oracle(const Rational& supply, std::size_t n) {
  if (supply < 0) throw DomainError("multi-unit supply must be nonnegative");
  return SubmodularOracle(
      n, [supply](Subset s) { return s.empty() ? Rational(0) : supply; }, true,
      "multi-unit");
}

void require_ctr_list(const Vector& ctrs) {
  for (std::size_t k = 0; k < ctrs.size(); ++k) {
    if (ctrs[k] < 0) throw DomainError("click-through rates must be >= 0");
    if (k > 0 && ctrs[k] > ctrs[k - 1]) {
      throw DomainError("click-through rates must be nonincreasing (slot " +
                        std::to_string(k) + " exceeds slot " +
                        std::to_string(k - 1) + ")");
    }
  }
}

SubmodularOracle single_keyword_oracle(const Vector& ctrs) {
  return single_keyword_oracle(ctrs, ctrs.size());
}

SubmodularOracle single_keyword_oracle(const Vector& ctrs, std::size_t n) {
  require_ctr_list(ctrs);
  return SubmodularOracle(
      n, [prefix = ctr_prefix_sums(ctrs, n)](Subset s) {
        return prefix[s.size()];
      },
      true, "single-keyword");
}

InterestGraph AdWordsInstance::interest_graph() const {
  if (bidders == 0) throw DomainError("adwords instance has no bidders");
  InterestGraph graph;
  graph.keywords_of_bidder.resize(bidders);
  graph.bidders_of_keyword.resize(keywords.size());
  for (std::size_t k = 0; k < keywords.size(); ++k) {
    const Keyword& kw = keywords[k];
    require_ctr_list(kw.ctrs);
    if (kw.bidders.empty()) {
      throw DomainError("keyword " + std::to_string(k) +
                        " has no interested bidder");
    }
    for (std::size_t i : kw.bidders) {
      if (i >= bidders) {
        throw DomainError("keyword " + std::to_string(k) +
                          " references bidder " + std::to_string(i) +
                          " out of range");
      }
      auto& mine = graph.keywords_of_bidder[i];
      if (!mine.empty() && mine.back() == k) {
        throw DomainError("bidder " + std::to_string(i) +
                          " listed twice for keyword " + std::to_string(k));
      }
      mine.push_back(k);
      graph.bidders_of_keyword[k].push_back(i);
    }
  }
  if (quality) {
    if (quality->size() != bidders) {
      throw DomainError("quality vector length differs from bidder count");
    }
    for (const auto& g : *quality) {
      if (g <= 0) throw DomainError("quality factors must be positive");
    }
  }
  return graph;
}

Vector AdWordsInstance::normalized_ctrs(std::size_t keyword) const {
  const Keyword& kw = keywords.at(keyword);
  Vector ctrs(kw.bidders.size(), Rational(0));
  for (std::size_t j = 0; j < ctrs.size() && j < kw.ctrs.size(); ++j) {
    ctrs[j] = kw.ctrs[j];
  }
  return ctrs;
}

SubmodularOracle adwords_oracle(const AdWordsInstance& instance) {
  instance.interest_graph();
  struct Term {
    Subset interested;
    Vector prefix;
  };
  std::vector<Term> terms;
  for (std::size_t k = 0; k < instance.keywords.size(); ++k) {
    Subset interested;
    for (std::size_t i : instance.keywords[k].bidders) {
      interested = interested.with(i);
    }
    const Vector ctrs = instance.normalized_ctrs(k);
    terms.push_back({interested, ctr_prefix_sums(ctrs, ctrs.size())});
  }
  return SubmodularOracle(
      instance.bidders,
      [terms = std::move(terms)](Subset s) {
        Rational total = 0;
        for (const Term& term : terms) {
          total += term.prefix[(s & term.interested).size()];
        }
        return total;
      },
      true, "adwords");
}

Vector uniform_quality(const AdWordsInstance& instance,
                       const std::vector<Vector>& per_keyword) {
  if (per_keyword.size() != instance.keywords.size()) {
    throw DomainError("one quality list per keyword is required");
  }
  std::vector<std::optional<Rational>> gamma(instance.bidders);
  for (std::size_t k = 0; k < per_keyword.size(); ++k) {
    const auto& bidders = instance.keywords[k].bidders;
    if (per_keyword[k].size() != bidders.size()) {
      throw DomainError("keyword " + std::to_string(k) +
                        " quality list length differs from its bidders");
    }
    for (std::size_t j = 0; j < bidders.size(); ++j) {
      const Rational& g = per_keyword[k][j];
      if (g <= 0) throw DomainError("quality factors must be positive");
      auto& slot = gamma[bidders[j]];
      if (slot && *slot != g) {
        throw DomainError(
            "bidder " + std::to_string(bidders[j]) +
            " has keyword-dependent quality factors; only uniform per-bidder "
            "factors define a scaled polymatroid");
      }
      slot = g;
    }
  }
  Vector out(instance.bidders, Rational(1));
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (gamma[i]) out[i] = *gamma[i];
  }
  return out;
}

std::optional<Decomposition> decompose(const AdWordsInstance& instance,
                                       std::span<const Rational> x) {
  instance.interest_graph();
  const std::size_t n = instance.bidders;
  if (x.size() != n) throw DomainError("allocation length differs from n");
  for (const auto& xi : x) {
    if (xi < 0) throw DomainError("allocation must be nonnegative");
  }
  require_enumerable(n, "decompose");
  require_enumerable(instance.keywords.size(), "decompose");

  // One variable per (keyword, interested bidder) edge.
  detail::LinearSystem system;
  std::vector<std::vector<std::size_t>> var_of(instance.keywords.size());
  std::vector<detail::LinearRow> bidder_rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    bidder_rows[i].equality = true;
    bidder_rows[i].rhs = x[i];
  }
  for (std::size_t k = 0; k < instance.keywords.size(); ++k) {
    for (std::size_t i : instance.keywords[k].bidders) {
      const std::size_t var = system.variables++;
      var_of[k].push_back(var);
      bidder_rows[i].terms.emplace_back(var, Rational(1));
    }
  }
  system.rows = std::move(bidder_rows);

  for (std::size_t k = 0; k < instance.keywords.size(); ++k) {
    const std::size_t size = var_of[k].size();
    require_enumerable(size, "decompose");
    const Vector prefix = ctr_prefix_sums(instance.normalized_ctrs(k), size);
    const Subset::Mask count = Subset::Mask{1} << size;
    for (Subset::Mask m = 1; m < count; ++m) {
      detail::LinearRow row;
      for (std::size_t j : Subset::from_mask(m).elements()) {
        row.terms.emplace_back(var_of[k][j], Rational(1));
      }
      row.rhs = prefix[Subset::from_mask(m).size()];
      system.rows.push_back(std::move(row));
    }
  }

  const auto point = detail::find_feasible_point(system);
  if (!point) return std::nullopt;
  Decomposition out;
  for (std::size_t k = 0; k < var_of.size(); ++k) {
    Vector shares;
    for (std::size_t var : var_of[k]) shares.push_back((*point)[var]);
    out.shares.push_back(std::move(shares));
  }
  return out;
}

SubmodularOracle graphic_oracle(const GraphicInstance& graph) {
  const std::size_t n = graph.edges.size();
  if (n == 0) throw DomainError("graphic environment has no edges");
  std::vector<std::optional<std::size_t>> edge_of(n);
  for (std::size_t e = 0; e < n; ++e) {
    const GraphEdge& edge = graph.edges[e];
    if (!edge.bidder) {
      throw DomainError("edge " + std::to_string(e) + " has no bidder label");
    }
    if (edge.u >= graph.vertices || edge.v >= graph.vertices) {
      throw DomainError("edge " + std::to_string(e) +
                        " references a missing vertex");
    }
    const std::size_t b = *edge.bidder;
    if (b >= n) {
      throw DomainError("edge " + std::to_string(e) + " labels bidder " +
                        std::to_string(b) + " out of range");
    }
    if (edge_of[b]) {
      throw DomainError("bidder " + std::to_string(b) +
                        " labels more than one edge");
    }
    edge_of[b] = e;
  }
  std::vector<std::pair<std::size_t, std::size_t>> endpoints(n);
  for (std::size_t b = 0; b < n; ++b) {
    const GraphEdge& edge = graph.edges[*edge_of[b]];
    endpoints[b] = {edge.u, edge.v};
  }
  return SubmodularOracle(
      n,
      [endpoints = std::move(endpoints), vertices = graph.vertices](Subset s) {
        std::vector<std::size_t> parent(vertices);
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        auto find = [&parent](std::size_t a) {
          while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
          }
          return a;
        };
        long rank = 0;
        for (std::size_t b : s.elements()) {
          const std::size_t ra = find(endpoints[b].first);
          const std::size_t rb = find(endpoints[b].second);
          if (ra != rb) {
            parent[ra] = rb;
            ++rank;
          }
        }
        return Rational(rank);
      },
      true, "graphic");
}

Rational max_flow_to(const CapacitatedNetwork& network,
                     const std::vector<std::size_t>& sinks) {
  if (sinks.empty()) return 0;
  // Residual graph with one super-sink; sink arcs get a capacity larger than
  // every finite cut, which makes them uncuttable.
  const std::size_t sink = network.nodes;
  const std::size_t count = network.nodes + 1;
  struct Edge {
    std::size_t to;
    Rational residual;
    std::size_t reverse;
  };
  std::vector<std::vector<Edge>> adj(count);
  auto add_edge = [&adj](std::size_t a, std::size_t b, const Rational& cap) {
    adj[a].push_back({b, cap, adj[b].size()});
    adj[b].push_back({a, Rational(0), adj[a].size() - 1});
  };
  Rational big = 1;
  for (const Arc& arc : network.arcs) {
    add_edge(arc.from, arc.to, arc.capacity);
    big += arc.capacity;
  }
  for (std::size_t node : sinks) add_edge(node, sink, big);

  Rational flow = 0;
  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> via(
        count, {count, 0});  // (previous node, edge index)
    std::deque<std::size_t> queue{network.source};
    via[network.source] = {network.source, 0};
    while (!queue.empty() && via[sink].first == count) {
      const std::size_t a = queue.front();
      queue.pop_front();
      for (std::size_t e = 0; e < adj[a].size(); ++e) {
        const Edge& edge = adj[a][e];
        if (edge.residual > 0 && via[edge.to].first == count) {
          via[edge.to] = {a, e};
          queue.push_back(edge.to);
        }
      }
    }
    if (via[sink].first == count) break;

    Rational bottleneck = -1;
    for (std::size_t v = sink; v != network.source; v = via[v].first) {
      const Edge& edge = adj[via[v].first][via[v].second];
      if (bottleneck < 0 || edge.residual < bottleneck) {
        bottleneck = edge.residual;
      }
    }
    for (std::size_t v = sink; v != network.source; v = via[v].first) {
      Edge& edge = adj[via[v].first][via[v].second];
      edge.residual -= bottleneck;
      adj[v][edge.reverse].residual += bottleneck;
    }
    flow += bottleneck;
  }
  return flow;
}

SubmodularOracle vod_cut_oracle(const CapacitatedNetwork& network) {
  if (network.bidder_nodes.empty()) {
    throw DomainError("network has no bidder nodes");
  }
  if (network.source >= network.nodes) {
    throw DomainError("source node out of range");
  }
  for (const Arc& arc : network.arcs) {
    if (arc.from >= network.nodes || arc.to >= network.nodes) {
      throw DomainError("arc references a missing node");
    }
    if (arc.capacity < 0) throw DomainError("arc capacities must be >= 0");
  }
  for (std::size_t node : network.bidder_nodes) {
    if (node >= network.nodes) throw DomainError("bidder node out of range");
    if (node == network.source) {
      throw DomainError("bidder node coincides with the source");
    }
  }
  return SubmodularOracle(
      network.bidder_nodes.size(),
      [network](Subset s) {
        std::vector<std::size_t> sinks;
        for (std::size_t i : s.elements()) {
          sinks.push_back(network.bidder_nodes[i]);
        }
        return max_flow_to(network, sinks);
      },
      true, "vod-cut");
}

void PackingPolytope2D::validate() const {
  bool bounded0 = false;
  bool bounded1 = false;
  for (const Row& row : rows) {
    if (row.a0 < 0 || row.a1 < 0 || row.b < 0) {
      throw DomainError("packing polytope rows need a >= 0 and b >= 0");
    }
    bounded0 = bounded0 || row.a0 > 0;
    bounded1 = bounded1 || row.a1 > 0;
  }
  if (!bounded0 || !bounded1) {
    throw DomainError("packing polytope is unbounded in some coordinate");
  }
}

bool PackingPolytope2D::contains(const Rational& x0,
                                 const Rational& x1) const {
  if (x0 < 0 || x1 < 0) return false;
  return std::all_of(rows.begin(), rows.end(), [&](const Row& row) {
    return row.a0 * x0 + row.a1 * x1 <= row.b;
  });
}

Rational PackingPolytope2D::headroom(const Vector& point,
                                     std::size_t i) const {
  std::optional<Rational> best;
  for (const Row& row : rows) {
    const Rational& a = i == 0 ? row.a0 : row.a1;
    if (a == 0) continue;
    Rational room = (row.b - row.a0 * point[0] - row.a1 * point[1]) / a;
    if (!best || room < *best) best = std::move(room);
  }
  if (!best) throw DomainError("packing polytope is unbounded");
  return *best > 0 ? *best : Rational(0);
}

bool PackingPolytope2D::dominated(const Vector& point) const {
  return headroom(point, 0) > 0 || headroom(point, 1) > 0;
}

SubmodularOracle PackingPolytope2D::rank_oracle() const {
  validate();
  std::vector<detail::HalfPlane> planes{{-1, 0, 0}, {0, -1, 0}};
  for (const Row& row : rows) planes.push_back({row.a0, row.a1, row.b});
  Rational best_total = 0;
  for (const auto& v : detail::polygon_vertices(planes)) {
    const Rational total = v[0] + v[1];
    if (total > best_total) best_total = total;
  }
  const Vector origin{0, 0};
  const std::array<Rational, 4> f{0, headroom(origin, 0), headroom(origin, 1),
                                  best_total};
  return SubmodularOracle(
      2, [f](Subset s) { return f[s.mask()]; }, true, "h-polytope-2d rank");
}

std::optional<Vector> PackingPolytope2D::polymatroid_gap() const {
  const SubmodularOracle f = rank_oracle();
  const Rational f0 = f(Subset::singleton(0));
  const Rational f1 = f(Subset::singleton(1));
  const Rational f01 = f(Subset::full(2));
  for (const Vector& v : {Vector{f0, f01 - f0}, Vector{f01 - f1, f1}}) {
    if (!contains(v[0], v[1])) return v;
  }
  return std::nullopt;
}

}  // namespace clinch
