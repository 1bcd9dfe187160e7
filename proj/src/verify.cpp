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

#include "clinch/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "clinch/errors.hpp"
#include "geometry2d.hpp"

namespace clinch {

void VerificationReport::pass(std::string name, std::string detail) {
  properties_.push_back({std::move(name), true, std::move(detail), nullptr});
}

void VerificationReport::fail(std::string name, std::string detail,
                              Json witness) {
  properties_.push_back(
      {std::move(name), false, std::move(detail), std::move(witness)});
}

void VerificationReport::merge(const VerificationReport& other,
                               const std::string& prefix) {
  for (const auto& p : other.properties_) {
    PropertyResult copy = p;
    copy.name = prefix + copy.name;
    properties_.push_back(std::move(copy));
  }
}

bool VerificationReport::passed() const {
  return std::all_of(properties_.begin(), properties_.end(),
                     [](const PropertyResult& p) { return p.passed; });
}

const PropertyResult* VerificationReport::find(const std::string& name) const {
  for (const auto& p : properties_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

Json VerificationReport::to_json() const {
  Json props = Json::array();
  for (const auto& p : properties_) {
    Json entry;
    entry["name"] = p.name;
    entry["status"] = p.passed ? "pass" : "fail";
    if (!p.detail.empty()) entry["detail"] = p.detail;
    if (!p.passed) entry["witness"] = p.witness;
    props.push_back(std::move(entry));
  }
  Json out;
  out["subject"] = subject_;
  out["passed"] = passed();
  out["properties"] = std::move(props);
  if (!data_.empty()) out["data"] = data_;
  return out;
}

Json to_json(const Rational& q) { return format_rational(q); }

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(format_rational(q));
  return out;
}

Json to_json(const Budget& b) { return format_budget(b); }

Json to_json(const Snapshot& s) {
  Json out;
  out["step"] = s.step;
  out["prices"] = to_json(s.prices);
  out["rho"] = to_json(s.rho);
  out["demand"] = to_json(s.demand);
  out["delta"] = to_json(s.delta);
  out["rho_after"] = to_json(s.rho_after);
  out["demand_after"] = to_json(s.demand_after);
  Json rem = Json::array();
  for (const auto& b : s.remaining) rem.push_back(to_json(b));
  out["remaining"] = std::move(rem);
  out["residual"] = to_json(s.residual);
  out["residual_after"] = to_json(s.residual_after);
  return out;
}

Json to_json(const Outcome& o) {
  Json out;
  out["allocation"] = to_json(o.allocation);
  out["payments"] = to_json(o.payments);
  out["exhausted"] = o.exhausted;
  out["steps"] = o.steps;
  out["epsilon"] = to_json(o.epsilon);
  if (o.trace) {
    Json trace = Json::array();
    for (const auto& s : *o.trace) trace.push_back(to_json(s));
    out["trace"] = std::move(trace);
  }
  return out;
}

namespace {

void require_outcome_shape(std::size_t n, std::span<const Bidder> bidders,
                           const Outcome& outcome) {
  if (bidders.size() != n || outcome.allocation.size() != n ||
      outcome.payments.size() != n) {
    throw DomainError("outcome and bidders must match the ground set size");
  }
}

std::string approx(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", q.get_d());
  return buf;
}

bool below_budget(const Budget& b, const Rational& paid) {
  return b.is_unbounded() || paid < b.amount();
}

std::string describe_pair(std::size_t i, std::size_t j) {
  return "bidder " + std::to_string(i) + " vs bidder " + std::to_string(j);
}

void check_ir_and_budget(std::span<const Bidder> bidders,
                         const Outcome& outcome, VerificationReport& report) {
  const std::size_t n = bidders.size();
  std::optional<std::size_t> ir_bad;
  std::optional<std::size_t> budget_bad;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& pay = outcome.payments[i];
    if (!ir_bad && pay > bidders[i].value * outcome.allocation[i]) ir_bad = i;
    if (!budget_bad && !bidders[i].budget.is_unbounded() &&
        pay > bidders[i].budget.amount()) {
      budget_bad = i;
    }
  }
  if (ir_bad) {
    const std::size_t i = *ir_bad;
    Json w;
    w["bidder"] = i;
    w["payment"] = to_json(outcome.payments[i]);
    w["value_received"] = to_json(bidders[i].value * outcome.allocation[i]);
    report.fail("individual-rationality", "payment exceeds value received", w);
  } else {
    report.pass("individual-rationality");
  }
  if (budget_bad) {
    const std::size_t i = *budget_bad;
    Json w;
    w["bidder"] = i;
    w["payment"] = to_json(outcome.payments[i]);
    w["budget"] = to_json(bidders[i].budget);
    report.fail("budget", "payment exceeds budget", w);
  } else {
    report.pass("budget");
  }
}

}  // namespace

VerificationReport check_outcome(const SubmodularOracle& f,
                                 std::span<const Bidder> bidders,
                                 const Outcome& outcome) {
  const std::size_t n = f.size();
  require_enumerable(n, "check_outcome");
  require_outcome_shape(n, bidders, outcome);
  const Vector& x = outcome.allocation;
  VerificationReport report("outcome");

  const Rational sold = sum(x);
  const Rational supply = f(f.ground());
  if (sold == supply) {
    report.pass("sold-out");
  } else {
    Json w;
    w["allocated"] = to_json(sold);
    w["available"] = to_json(supply);
    report.fail("sold-out", "not every unit of f([n]) is allocated", w);
  }

  const SetFunction slack(n, [&](Subset s) {
    Rational v = f(s);
    for (std::size_t i : s.elements()) v -= x[i];
    return v;
  });
  bool separated = true;
  for (std::size_t i = 0; i < n && separated; ++i) {
    if (!below_budget(bidders[i].budget, outcome.payments[i])) continue;
    for (std::size_t j = 0; j < n && separated; ++j) {
      if (j == i || !(bidders[j].value < bidders[i].value)) continue;
      const auto best = min_constrained(slack, Subset::singleton(i),
                                        Subset::singleton(j));
      if (best.value != 0) {
        separated = false;
        Json w;
        w["bidder"] = i;
        w["lower_value_bidder"] = j;
        w["least_slack_set"] = best.set.elements();
        w["slack"] = to_json(best.value);
        report.fail("tight-separation",
                    "no tight set separates " + describe_pair(i, j), w);
      }
    }
  }
  if (separated) report.pass("tight-separation");

  check_ir_and_budget(bidders, outcome, report);

  bool nonneg = std::all_of(x.begin(), x.end(),
                            [](const Rational& q) { return q >= 0; });
  if (!nonneg) {
    Json w;
    w["allocation"] = to_json(x);
    report.fail("feasibility", "negative allocation", w);
  } else if (const auto m = membership(f, x); !m.ok()) {
    Json w;
    w["violated_set"] = m.violated->elements();
    Rational load = 0;
    for (std::size_t i : m.violated->elements()) load += x[i];
    w["load"] = to_json(load);
    w["capacity"] = to_json(f(*m.violated));
    report.fail("feasibility", "allocation outside the polymatroid", w);
  } else {
    report.pass("feasibility");
  }
  return report;
}

bool in_dominated_region(const PackingPolytope2D& polytope,
                         const Vector& point) {
  if (point.size() != 2) throw SizeError("dominated region is 2-D only");
  if (point[0] < 0 || point[1] < 0) return false;
  if (!polytope.contains(point[0], point[1])) return false;
  return polytope.dominated(point);
}

std::optional<Vector> check_dominated_direction(
    const PackingPolytope2D& polytope, std::span<const Bidder> bidders,
    const Outcome& outcome) {
  if (bidders.size() != 2 || outcome.allocation.size() != 2 ||
      outcome.payments.size() != 2) {
    throw SizeError("dominated-direction search supports exactly 2 bidders");
  }
  polytope.validate();
  const Vector& x = outcome.allocation;
  if (x[0] < 0 || x[1] < 0 || !polytope.contains(x[0], x[1])) {
    throw PreconditionError("outcome allocation lies outside the polytope");
  }

  // Candidate endpoints y = x + d form the polygon
  //   {y in X : v.y >= v.x, y_i <= x_i for exhausted i}.
  // It is convex and the undominated boundary is a concave chain, so the
  // polygon avoids the dominated region only if it sits on one edge of that
  // chain. Vertices, pairwise midpoints and the centroid then decide it.
  std::vector<detail::HalfPlane> planes;
  for (const auto& row : polytope.rows) planes.push_back({row.a0, row.a1, row.b});
  planes.push_back({-1, 0, 0});
  planes.push_back({0, -1, 0});
  const Rational& v0 = bidders[0].value;
  const Rational& v1 = bidders[1].value;
  planes.push_back({-v0, -v1, -(v0 * x[0] + v1 * x[1])});
  for (std::size_t i = 0; i < 2; ++i) {
    if (!below_budget(bidders[i].budget, outcome.payments[i])) {
      planes.push_back(i == 0 ? detail::HalfPlane{1, 0, x[0]}
                              : detail::HalfPlane{0, 1, x[1]});
    }
  }
  const auto vertices = detail::polygon_vertices(planes);

  std::vector<detail::Point2> candidates = vertices;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      candidates.push_back({(vertices[a][0] + vertices[b][0]) / 2,
                            (vertices[a][1] + vertices[b][1]) / 2});
    }
  }
  if (!vertices.empty()) {
    detail::Point2 centroid{Rational(0), Rational(0)};
    for (const auto& p : vertices) {
      centroid[0] += p[0];
      centroid[1] += p[1];
    }
    centroid[0] /= static_cast<long>(vertices.size());
    centroid[1] /= static_cast<long>(vertices.size());
    candidates.push_back(centroid);
  }
  for (const auto& y : candidates) {
    if (in_dominated_region(polytope, {y[0], y[1]})) {
      return Vector{y[0] - x[0], y[1] - x[1]};
    }
  }
  return std::nullopt;
}

namespace {

template <class Report>
VerificationReport fuzz_impl(const FuzzSetup<Report>& setup) {
  const std::size_t n = setup.truth.size();
  if (setup.grid.size() != n) {
    throw DomainError("deviation grid needs one list per bidder");
  }
  VerificationReport report("truthfulness");
  const MechanismResult base = setup.mechanism(setup.truth);

  struct Best {
    std::size_t bidder;
    std::size_t index;
    Rational truthful;
    Rational deviating;
    Rational gain;
  };
  std::optional<Best> best;
  Json profitable = Json::array();
  std::size_t checked = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational truthful =
        setup.utility(i, base.allocation[i], base.payments[i]);
    for (std::size_t k = 0; k < setup.grid[i].size(); ++k) {
      std::vector<Report> reports = setup.truth;
      reports[i] = setup.grid[i][k];
      const MechanismResult r = setup.mechanism(reports);
      const Rational deviating =
          setup.utility(i, r.allocation[i], r.payments[i]);
      ++checked;
      const Rational gain = deviating - truthful;
      if (gain <= 0) continue;
      Json entry;
      entry["bidder"] = i;
      entry["report"] = setup.describe(setup.grid[i][k]);
      entry["gain"] = to_json(gain);
      profitable.push_back(std::move(entry));
      if (!best || gain > best->gain) {
        best = Best{i, k, truthful, deviating, gain};
      }
    }
  }

  const std::string counted = std::to_string(checked) + " deviations";
  if (!best) {
    report.pass("no-profitable-deviation", counted);
  } else {
    Json w;
    w["bidder"] = best->bidder;
    w["report"] = setup.describe(setup.grid[best->bidder][best->index]);
    w["truthful_utility"] = to_json(best->truthful);
    w["deviating_utility"] = to_json(best->deviating);
    w["gain"] = to_json(best->gain);
    w["all_profitable"] = std::move(profitable);
    report.fail("no-profitable-deviation",
                counted + ", bidder " + std::to_string(best->bidder) +
                    " gains by misreporting",
                w);
  }
  return report;
}

Json describe_curve(const ConcaveCurve& c) {
  Json out = Json::array();
  for (const auto& s : c.segments()) {
    out.push_back(Json::array({format_rational(s.length), format_rational(s.slope)}));
  }
  return out;
}

}  // namespace

VerificationReport fuzz_truthfulness(const FuzzSetup<Rational>& setup) {
  return fuzz_impl(setup);
}

VerificationReport fuzz_truthfulness(const FuzzSetup<ConcaveCurve>& setup) {
  return fuzz_impl(setup);
}

const std::vector<Rational>& deviation_factors() {
  static const std::vector<Rational> factors = [] {
    std::vector<Rational> out;
    for (const char* s : {"1/4", "1/3", "1/2", "2/3", "3/4", "4/5", "9/10",
                          "19/20", "21/20", "11/10", "5/4", "4/3", "3/2",
                          "7/4", "2", "5/2", "3", "7/2", "15/4", "4"}) {
      out.push_back(parse_rational(s));
    }
    return out;
  }();
  return factors;
}

std::vector<Rational> value_deviation_grid(std::span<const Rational> values,
                                           std::size_t i,
                                           const Rational& epsilon) {
  if (i >= values.size()) throw DomainError("bidder index out of range");
  if (epsilon <= 0) throw DomainError("epsilon must be positive");
  const Rational& v = values[i];
  std::vector<Rational> out;
  auto push = [&](Rational q) {
    if (q <= 0 || q == v) return;
    if (std::find(out.begin(), out.end(), q) != out.end()) return;
    out.push_back(std::move(q));
  };
  for (const auto& f : deviation_factors()) push(f * v);
  push((v < epsilon ? v : epsilon) / 2);
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (j == i) continue;
    push(values[j] - epsilon);
    push(values[j] + epsilon);
  }
  return out;
}

std::vector<ConcaveCurve> curve_deviation_grid(const ConcaveCurve& curve) {
  std::vector<ConcaveCurve> out;
  const auto& segs = curve.segments();
  for (std::size_t k = 0; k < segs.size(); ++k) {
    for (const auto& f : deviation_factors()) {
      auto changed = segs;
      changed[k].slope *= f;
      const bool concave =
          (k == 0 || changed[k].slope <= changed[k - 1].slope) &&
          (k + 1 == segs.size() || changed[k].slope >= changed[k + 1].slope);
      if (!concave) continue;
      ConcaveCurve c(std::move(changed));
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
  }
  return out;
}

VerificationReport fuzz_clinching(const Environment& env,
                                  std::span<const Bidder> bidders,
                                  const AuctionConfig& cfg) {
  if (cfg.epsilon_policy != EpsilonPolicy::kFixed) {
    throw DomainError("truthfulness fuzzing needs a value-independent epsilon");
  }
  AuctionConfig run_cfg = cfg;
  run_cfg.trace = false;
  const std::vector<Bidder> base(bidders.begin(), bidders.end());

  FuzzSetup<Rational> setup;
  for (const auto& b : base) setup.truth.push_back(b.value);
  for (std::size_t i = 0; i < base.size(); ++i) {
    setup.grid.push_back(value_deviation_grid(setup.truth, i, cfg.epsilon));
  }
  setup.mechanism = [&env, base, run_cfg](const std::vector<Rational>& values) {
    std::vector<Bidder> reported = base;
    for (std::size_t i = 0; i < reported.size(); ++i) reported[i].value = values[i];
    Outcome o = run_clinching(env, reported, run_cfg);
    return MechanismResult{std::move(o.allocation), std::move(o.payments)};
  };
  setup.utility = [&base](std::size_t i, const Rational& x, const Rational& pay) {
    return Rational(base[i].value * x - pay);
  };
  setup.describe = [](const Rational& v) { return to_json(v); };
  return fuzz_truthfulness(setup);
}

VerificationReport fuzz_decreasing_marginals(
    const std::vector<ConcaveCurve>& curves, const std::vector<Budget>& budgets,
    const Rational& supply, const AuctionConfig& cfg) {
  AuctionConfig run_cfg = cfg;
  run_cfg.trace = false;
  FuzzSetup<ConcaveCurve> setup;
  setup.truth = curves;
  for (const auto& c : curves) setup.grid.push_back(curve_deviation_grid(c));
  setup.mechanism = [budgets, supply, run_cfg](const std::vector<ConcaveCurve>& cs) {
    Outcome o = run_decreasing_marginals(cs, budgets, supply, run_cfg);
    return MechanismResult{std::move(o.allocation), std::move(o.payments)};
  };
  setup.utility = [curves](std::size_t i, const Rational& x, const Rational& pay) {
    return Rational(curves[i](x) - pay);
  };
  setup.describe = describe_curve;
  return fuzz_truthfulness(setup);
}

namespace {

// First violation of one monitored property.
struct Monitor {
  std::string name;
  std::optional<std::pair<std::string, Json>> failure;

  void flag(std::string detail, Json witness) {
    if (!failure) failure.emplace(std::move(detail), std::move(witness));
  }
  void report_into(VerificationReport& report) const {
    if (failure) {
      report.fail(name, failure->first, failure->second);
    } else {
      report.pass(name);
    }
  }
};

Json step_witness(std::size_t step) {
  Json w;
  w["step"] = step;
  return w;
}

void monitor_budgets(const Snapshot& s, Monitor& budgets) {
  for (std::size_t i = 0; i < s.remaining.size(); ++i) {
    if (s.remaining[i].is_unbounded()) continue;
    const Rational left = s.remaining[i].amount() - s.prices[i] * s.delta[i];
    if (left < 0) {
      Json w = step_witness(s.step);
      w["bidder"] = i;
      w["remaining_after"] = to_json(left);
      budgets.flag("remaining budget negative at step " +
                       std::to_string(s.step),
                   w);
    }
  }
}

}  // namespace

VerificationReport monitor_trace(const SubmodularOracle& f,
                                 const std::vector<Snapshot>& trace,
                                 const std::optional<Vector>& gamma) {
  const std::size_t n = f.size();
  require_enumerable(n, "monitor_trace");
  if (gamma && gamma->size() != n) {
    throw DomainError("gamma must have one entry per bidder");
  }
  auto unscale = [&](const Vector& v) {
    if (!gamma) return v;
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / (*gamma)[i];
    return out;
  };

  Monitor conserved{"conserved-quantity", {}};
  Monitor after{"after-clinching", {}};
  Monitor feasible{"feasibility", {}};
  Monitor reclinch{"re-clinch", {}};
  Monitor budgets{"budget-nonnegative", {}};
  std::optional<Rational> reference;

  for (const auto& s : trace) {
    if (s.rho.size() != n || s.demand.size() != n || s.rho_after.size() != n ||
        s.demand_after.size() != n || s.delta.size() != n ||
        s.prices.size() != n || s.remaining.size() != n) {
      throw DomainError("snapshot size does not match the oracle");
    }
    const Vector rho = unscale(s.rho);
    const Vector d = unscale(s.demand);
    const Vector rho_after = unscale(s.rho_after);
    const Vector d_after = unscale(s.demand_after);

    monitor_budgets(s, budgets);

    bool inside = true;
    for (const Vector* point : {&rho, &rho_after}) {
      const bool nonneg = std::all_of(point->begin(), point->end(),
                                      [](const Rational& q) { return q >= 0; });
      std::optional<Subset> bad;
      if (nonneg) bad = membership(f, *point).violated;
      if (!nonneg || bad) {
        inside = false;
        Json w = step_witness(s.step);
        w["phase"] = point == &rho ? "before" : "after";
        w["rho"] = to_json(*point);
        if (bad) w["violated_set"] = bad->elements();
        feasible.flag("promised allocation outside P at step " +
                          std::to_string(s.step),
                      w);
      }
    }
    if (!inside) continue;
    if (std::any_of(d.begin(), d.end(), [](const Rational& q) { return q < 0; }) ||
        std::any_of(d_after.begin(), d_after.end(),
                    [](const Rational& q) { return q < 0; })) {
      continue;
    }

    const ResidualOracle before_r(f, rho, d);
    const ResidualOracle after_r(f, rho_after, d_after);
    const Rational q_before = sum(rho) + before_r.total();
    const Rational q_after = sum(rho_after) + after_r.total();
    if (!reference) reference = q_before;
    for (const auto& [phase, q] :
         {std::pair<const char*, const Rational&>{"before", q_before},
          std::pair<const char*, const Rational&>{"after", q_after}}) {
      if (q != *reference) {
        Json w = step_witness(s.step);
        w["phase"] = phase;
        w["expected"] = to_json(*reference);
        w["actual"] = to_json(q);
        conserved.flag("1.rho + fhat([n]) changed at step " +
                           std::to_string(s.step),
                       w);
      }
    }

    const Rational total_after = after_r.total();
    for (std::size_t j = 0; j < n; ++j) {
      const Rational without = after_r(Subset::full(n).without(j));
      if (total_after > without) {
        Json w = step_witness(s.step);
        w["bidder"] = j;
        w["fhat_all"] = to_json(total_after);
        w["fhat_without"] = to_json(without);
        after.flag("clinchable amount left after step " +
                       std::to_string(s.step),
                   w);
        break;
      }
    }

    const Vector again = clinch_amounts(f, rho_after, d_after);
    if (std::any_of(again.begin(), again.end(),
                    [](const Rational& q) { return q != 0; })) {
      Json w = step_witness(s.step);
      w["delta"] = to_json(again);
      reclinch.flag("second clinch grants more at step " +
                        std::to_string(s.step),
                    w);
    }
  }

  VerificationReport report("monitors");
  for (const Monitor* m : {&conserved, &after, &feasible, &reclinch, &budgets}) {
    m->report_into(report);
  }
  return report;
}

VerificationReport monitor_trace(const PackingPolytope2D& polytope,
                                 const std::vector<Snapshot>& trace) {
  polytope.validate();
  Monitor feasible{"feasibility", {}};
  Monitor reclinch{"re-clinch", {}};
  Monitor budgets{"budget-nonnegative", {}};
  for (const auto& s : trace) {
    if (s.rho.size() != 2 || s.rho_after.size() != 2 ||
        s.demand_after.size() != 2 || s.delta.size() != 2 ||
        s.prices.size() != 2 || s.remaining.size() != 2) {
      throw DomainError("snapshot size does not match the polytope");
    }
    monitor_budgets(s, budgets);
    bool inside = true;
    for (const Vector* point : {&s.rho, &s.rho_after}) {
      const Vector& p = *point;
      if (p[0] < 0 || p[1] < 0 || !polytope.contains(p[0], p[1])) {
        inside = false;
        Json w = step_witness(s.step);
        w["phase"] = point == &s.rho ? "before" : "after";
        w["rho"] = to_json(p);
        feasible.flag("promised allocation outside P at step " +
                          std::to_string(s.step),
                      w);
      }
    }
    if (!inside) continue;
    const Vector again = clinch_generic_2player(polytope, s.rho_after, s.demand_after);
    if (again[0] != 0 || again[1] != 0) {
      Json w = step_witness(s.step);
      w["delta"] = to_json(again);
      reclinch.flag("second clinch grants more at step " +
                        std::to_string(s.step),
                    w);
    }
  }
  VerificationReport report("monitors");
  for (const Monitor* m : {&feasible, &reclinch, &budgets}) m->report_into(report);
  return report;
}

std::pair<Outcome, VerificationReport> run_with_monitors(
    const Environment& env, std::span<const Bidder> bidders,
    AuctionConfig cfg) {
  cfg.trace = true;
  Outcome outcome = run_clinching(env, bidders, cfg);
  const auto& trace = *outcome.trace;
  VerificationReport report;
  if (const auto* p = std::get_if<PolymatroidEnv>(&env)) {
    report = monitor_trace(p->f, trace);
  } else if (const auto* k = std::get_if<SingleKeywordEnv>(&env)) {
    report = monitor_trace(single_keyword_oracle(k->ctrs, bidders.size()), trace);
  } else if (const auto* s = std::get_if<ScaledEnv>(&env)) {
    report = monitor_trace(s->f, trace, s->gamma);
  } else {
    report = monitor_trace(std::get<PackingPolytope2D>(env), trace);
  }
  return {std::move(outcome), std::move(report)};
}

namespace {

struct MarginalsInstance {
  std::vector<ConcaveCurve> truthful;
  std::vector<ConcaveCurve> deviating;
  std::vector<Budget> budgets;
  Rational supply;
  AuctionConfig cfg;
};

MarginalsInstance marginals_instance() {
  MarginalsInstance inst;
  inst.truthful = {ConcaveCurve({{1, 4}, {1, 1}}), ConcaveCurve::linear(3, 2)};
  inst.deviating = {ConcaveCurve({{1, 4}, {1, 2}}), ConcaveCurve::linear(3, 2)};
  inst.budgets = {Budget::unbounded(), Budget(Rational(4))};
  inst.supply = 2;
  inst.cfg.epsilon_policy = EpsilonPolicy::kFixed;
  inst.cfg.epsilon = Rational(1, 100);
  inst.cfg.clock = ClockMode::kUniform;
  inst.cfg.trace = true;
  return inst;
}

}  // namespace

VerificationReport demo_appendix_d() {
  const MarginalsInstance inst = marginals_instance();
  const Outcome truthful =
      run_decreasing_marginals(inst.truthful, inst.budgets, inst.supply, inst.cfg);
  const Outcome deviating =
      run_decreasing_marginals(inst.deviating, inst.budgets, inst.supply, inst.cfg);
  VerificationReport report("appendix-d");

  const Vector want_x{1, 1};
  const Vector want_pay{3, 1};
  if (truthful.allocation == want_x && truthful.payments == want_pay) {
    report.pass("truthful-outcome", "x = (1, 1), pay = (3, 1)");
  } else {
    Json w;
    w["allocation"] = to_json(truthful.allocation);
    w["payments"] = to_json(truthful.payments);
    report.fail("truthful-outcome", "expected x = (1, 1), pay = (3, 1)", w);
  }

  if (deviating.allocation[0] == 1) {
    report.pass("deviating-allocation", "bidder 0 still receives 1");
  } else {
    Json w;
    w["allocation"] = to_json(deviating.allocation);
    report.fail("deviating-allocation", "bidder 0 should still receive 1", w);
  }

  if (deviating.payments[0] < 3) {
    report.pass("deviating-payment",
                "bidder 0 pays about " + approx(deviating.payments[0]) + " < 3");
  } else {
    Json w;
    w["payments"] = to_json(deviating.payments);
    report.fail("deviating-payment", "bidder 0 should pay less than 3", w);
  }

  bool clinched_at_two = false;
  for (const auto& s : *deviating.trace) {
    if (s.delta[1] == 1 && s.prices[1] == 2) clinched_at_two = true;
  }
  if (clinched_at_two) {
    report.pass("clinch-at-price-2", "bidder 1 clinches 1 unit at price 2");
  } else {
    Json w;
    w["allocation"] = to_json(deviating.allocation);
    w["payments"] = to_json(deviating.payments);
    report.fail("clinch-at-price-2",
                "no step where bidder 1 clinches 1 unit at price 2", w);
  }

  const VerificationReport fuzz = fuzz_decreasing_marginals(
      inst.truthful, inst.budgets, inst.supply, inst.cfg);
  const PropertyResult* found = fuzz.find("no-profitable-deviation");
  if (found && !found->passed && found->witness["bidder"] == 0) {
    report.pass("fuzz-finds-deviation", found->detail);
    report.data()["fuzz_witness"] = found->witness;
  } else {
    report.fail("fuzz-finds-deviation",
                "the deviation grid found no profitable misreport for bidder 0",
                fuzz.to_json());
  }

  report.data()["truthful"] = to_json(truthful);
  report.data()["deviating"] = to_json(deviating);
  return report;
}

namespace {

PackingPolytope2D impossibility_polytope() {
  return PackingPolytope2D{{{2, 1, 6}, {1, 2, 6}}};
}

AuctionConfig impossibility_config(ClockMode clock) {
  AuctionConfig cfg;
  cfg.epsilon_policy = EpsilonPolicy::kFixed;
  cfg.epsilon = Rational(1, 100);
  cfg.clock = clock;
  return cfg;
}

struct ProfileRun {
  Outcome outcome;
  std::optional<Vector> direction;
};

ProfileRun run_profile(const Rational& v0, const Rational& v1, ClockMode clock) {
  const PackingPolytope2D polytope = impossibility_polytope();
  const std::vector<Bidder> bidders{{v0, Budget(Rational(1))},
                                    {v1, Budget(Rational(1))}};
  ProfileRun run;
  run.outcome = run_clinching(polytope, bidders, impossibility_config(clock));
  run.direction = check_dominated_direction(polytope, bidders, run.outcome);
  return run;
}

Json profile_json(const Rational& v0, const Rational& v1, const ProfileRun& run) {
  Json entry;
  entry["values"] = to_json(Vector{v0, v1});
  entry["allocation"] = to_json(run.outcome.allocation);
  entry["payments"] = to_json(run.outcome.payments);
  entry["exhausted"] = run.outcome.exhausted;
  if (run.direction) {
    entry["direction"] = to_json(*run.direction);
  } else {
    entry["direction"] = nullptr;
  }
  return entry;
}

}  // namespace

VerificationReport demo_impossibility() {
  VerificationReport report("impossibility");
  const std::vector<Rational> first{Rational(1, 10), Rational(1, 3),
                                    Rational(21, 40), Rational(31, 50),
                                    Rational(13, 20), Rational(33, 50)};
  const std::vector<Rational> second{Rational(1, 10), Rational(1), Rational(10)};

  Json sweep = Json::array();
  std::size_t failures = 0;
  for (const auto& v0 : first) {
    for (const auto& v1 : second) {
      const ProfileRun run = run_profile(v0, v1, ClockMode::kRoundRobin);
      if (run.direction) ++failures;
      sweep.push_back(profile_json(v0, v1, run));
    }
  }
  const std::string counted = std::to_string(failures) + " of " +
                              std::to_string(sweep.size()) +
                              " profiles admit a dominated direction";
  if (failures > 0) {
    report.pass("pareto-failure-detected", counted);
  } else {
    report.fail("pareto-failure-detected", counted, sweep);
  }

  const Rational a0(13, 20);
  const Rational a1(10);
  const ProfileRun high = run_profile(a0, a1, ClockMode::kRoundRobin);
  if (high.direction) {
    const bool zero = (*high.direction)[0] == 0 && (*high.direction)[1] == 0;
    report.pass("dominated-direction-13/20-10",
                zero ? "the outcome itself lies in the dominated region"
                     : "d = " + format_vector(*high.direction));
  } else {
    report.fail("dominated-direction-13/20-10",
                "outcome admits no dominated direction",
                profile_json(a0, a1, high));
  }

  const Rational b(1, 10);
  const ProfileRun low = run_profile(b, b, ClockMode::kRoundRobin);
  const Vector efficient{2, 2};
  if (low.outcome.allocation == efficient && low.outcome.exhausted.empty() &&
      !low.direction) {
    report.pass("efficient-vertex-1/10-1/10", "x = (2, 2)");
  } else {
    report.fail("efficient-vertex-1/10-1/10",
                "expected the efficient vertex (2, 2) with no budget exhausted",
                profile_json(b, b, low));
  }

  char threshold[32];
  std::snprintf(threshold, sizeof threshold, "%.4f", impossibility_threshold());
  report.data()["polytope"] = "2x0 + x1 <= 6, x0 + 2x1 <= 6";
  report.data()["budgets"] = to_json(Vector{1, 1});
  report.data()["epsilon"] = "1/100";
  report.data()["clock"] = "round-robin";
  report.data()["sweep"] = std::move(sweep);
  // The simultaneous clock for comparison. It can stop with supply unsold,
  // which makes the outcome itself dominated.
  Json uniform = Json::object();
  uniform["13/20-10"] =
      profile_json(a0, a1, run_profile(a0, a1, ClockMode::kUniform));
  uniform["1/10-1/10"] =
      profile_json(b, b, run_profile(b, b, ClockMode::kUniform));
  report.data()["uniform_clock"] = std::move(uniform);
  report.data()["threshold"] = threshold;
  char half[32];
  std::snprintf(half, sizeof half, "%.4f", impossibility_threshold() / 2);
  report.data()["narrative"] =
      std::string("log(3v/2) = v/2 has root v = ") + threshold +
      " above 2/3; a truthful, budget-feasible, Pareto-optimal mechanism on "
      "this polytope would need constant allocations for v0 in (" + half +
      ", 2/3) as v1 grows, which Pareto optimality rules out";
  return report;
}

double impossibility_threshold() {
  // g(v) = log(3v/2) - v/2 is negative at 2/3 and positive at 2.
  double lo = 2.0 / 3.0;
  double hi = 2.0;
  while (hi - lo > 1e-6) {
    const double mid = (lo + hi) / 2;
    if (std::log(1.5 * mid) - mid / 2 < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

}  // namespace clinch
