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

#include "clinch/instance.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "clinch/errors.hpp"

namespace clinch {
namespace {

[[noreturn]] void fail(ParseErrorCode code, const std::string& field,
                       const std::string& what) {
  throw ParseError(code, field, field.empty() ? what : field + ": " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string join(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

const Json& object_at(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(ParseErrorCode::kMalformedJson, path, "expected an object");
  return j;
}

const Json& array_at(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(ParseErrorCode::kMalformedJson, path, "expected an array");
  return j;
}

const Json& require(const Json& obj, const std::string& path,
                    const std::string& key) {
  object_at(obj, path);
  const auto it = obj.find(key);
  if (it == obj.end()) {
    fail(ParseErrorCode::kMissingField, join(path, key), "missing field");
  }
  return *it;
}

const Json* optional_field(const Json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

Rational rational_at(const Json& j, const std::string& path) {
  if (!j.is_string()) {
    fail(ParseErrorCode::kMalformedRational, path,
         "rationals must be strings \"p/q\"");
  }
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    fail(e.code(), path, e.what());
  }
}

Vector rationals_at(const Json& j, const std::string& path) {
  array_at(j, path);
  Vector out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(rational_at(j[k], join(path, k)));
  return out;
}

std::size_t index_at(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    fail(ParseErrorCode::kMalformedJson, path, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

std::vector<std::size_t> indices_at(const Json& j, const std::string& path) {
  array_at(j, path);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(index_at(j[k], join(path, k)));
  return out;
}

Budget budget_at(const Json& j, const std::string& path) {
  if (!j.is_string()) {
    fail(ParseErrorCode::kMalformedRational, path,
         "budgets must be strings \"p/q\" or \"inf\"");
  }
  try {
    return parse_budget(j.get<std::string>());
  } catch (const ParseError& e) {
    fail(e.code(), path, e.what());
  }
}

// Runs `check` and turns a DomainError into a ParseError at `path`.
template <class F>
void validate(ParseErrorCode code, const std::string& path, F&& check) {
  try {
    check();
  } catch (const DomainError& e) {
    fail(code, path, e.what());
  }
}

EnvironmentPayload parse_environment(const Json& env, std::size_t n) {
  const std::string path = "environment";
  const Json& kind_json = require(env, path, "kind");
  if (!kind_json.is_string()) {
    fail(ParseErrorCode::kMalformedJson, "environment.kind", "expected a string");
  }
  const std::string kind = kind_json.get<std::string>();

  if (kind == "multi-unit") {
    MultiUnitPayload p{rational_at(require(env, path, "supply"), "environment.supply")};
    if (p.supply < 0) {
      fail(ParseErrorCode::kInvalidValue, "environment.supply", "supply must be >= 0");
    }
    return p;
  }
  if (kind == "single-keyword") {
    SingleKeywordPayload p{rationals_at(require(env, path, "ctrs"), "environment.ctrs")};
    validate(ParseErrorCode::kInvalidValue, "environment.ctrs",
             [&] { require_ctr_list(p.ctrs); });
    return p;
  }
  if (kind == "adwords") {
    AdWordsInstance inst;
    inst.bidders = n;
    const Json& kws = array_at(require(env, path, "keywords"), "environment.keywords");
    for (std::size_t k = 0; k < kws.size(); ++k) {
      const std::string kp = join("environment.keywords", k);
      Keyword kw;
      kw.ctrs = rationals_at(require(kws[k], kp, "ctrs"), join(kp, "ctrs"));
      kw.bidders = indices_at(require(kws[k], kp, "bidders"), join(kp, "bidders"));
      validate(ParseErrorCode::kInvalidValue, join(kp, "ctrs"),
               [&] { require_ctr_list(kw.ctrs); });
      inst.keywords.push_back(std::move(kw));
    }
    validate(ParseErrorCode::kInconsistentGraph, "environment.keywords",
             [&] { inst.interest_graph(); });
    return inst;
  }
  if (kind == "graphic") {
    GraphicInstance g;
    g.vertices = index_at(require(env, path, "vertices"), "environment.vertices");
    const Json& edges = array_at(require(env, path, "edges"), "environment.edges");
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const std::string ep = join("environment.edges", e);
      GraphEdge edge;
      edge.u = index_at(require(edges[e], ep, "u"), join(ep, "u"));
      edge.v = index_at(require(edges[e], ep, "v"), join(ep, "v"));
      edge.bidder = index_at(require(edges[e], ep, "bidder"), join(ep, "bidder"));
      g.edges.push_back(edge);
    }
    if (g.edges.size() != n) {
      fail(ParseErrorCode::kInconsistentGraph, "environment.edges",
           "need exactly one edge per bidder");
    }
    validate(ParseErrorCode::kInconsistentGraph, "environment.edges",
             [&] { graphic_oracle(g); });
    return g;
  }
  if (kind == "vod-cut") {
    CapacitatedNetwork net;
    net.nodes = index_at(require(env, path, "nodes"), "environment.nodes");
    net.source = index_at(require(env, path, "source"), "environment.source");
    const Json& arcs = array_at(require(env, path, "arcs"), "environment.arcs");
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      const std::string ap = join("environment.arcs", a);
      Arc arc;
      arc.from = index_at(require(arcs[a], ap, "from"), join(ap, "from"));
      arc.to = index_at(require(arcs[a], ap, "to"), join(ap, "to"));
      arc.capacity = rational_at(require(arcs[a], ap, "capacity"), join(ap, "capacity"));
      net.arcs.push_back(std::move(arc));
    }
    net.bidder_nodes = indices_at(require(env, path, "bidder_nodes"),
                                  "environment.bidder_nodes");
    if (net.bidder_nodes.size() != n) {
      fail(ParseErrorCode::kInconsistentGraph, "environment.bidder_nodes",
           "need exactly one node per bidder");
    }
    validate(ParseErrorCode::kInconsistentGraph, "environment.arcs",
             [&] { vod_cut_oracle(net); });
    return net;
  }
  if (kind == "h-polytope-2d") {
    PackingPolytope2D poly;
    const Json& rows = array_at(require(env, path, "rows"), "environment.rows");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::string rp = join("environment.rows", r);
      const Vector a = rationals_at(require(rows[r], rp, "a"), join(rp, "a"));
      if (a.size() != 2) {
        fail(ParseErrorCode::kInvalidValue, join(rp, "a"), "expected two coefficients");
      }
      poly.rows.push_back({a[0], a[1], rational_at(require(rows[r], rp, "b"), join(rp, "b"))});
    }
    if (n != 2) {
      fail(ParseErrorCode::kInvalidValue, "bidders", "h-polytope-2d needs exactly 2 bidders");
    }
    validate(ParseErrorCode::kInvalidValue, "environment.rows", [&] { poly.validate(); });
    return poly;
  }
  fail(ParseErrorCode::kUnknownKind, "environment.kind", "unknown kind \"" + kind + "\"");
}

AuctionConfig parse_config(const Json* cfg) {
  AuctionConfig out;
  if (!cfg) return out;
  object_at(*cfg, "config");
  if (const Json* eps = optional_field(*cfg, "epsilon")) {
    if (eps->is_string() && eps->get<std::string>() == "auto") {
      out.epsilon_policy = EpsilonPolicy::kAuto;
    } else {
      out.epsilon_policy = EpsilonPolicy::kFixed;
      out.epsilon = rational_at(*eps, "config.epsilon");
      if (out.epsilon <= 0) {
        fail(ParseErrorCode::kInvalidValue, "config.epsilon", "epsilon must be positive");
      }
    }
  }
  if (const Json* steps = optional_field(*cfg, "max_steps")) {
    out.max_steps = index_at(*steps, "config.max_steps");
    if (out.max_steps == 0) {
      fail(ParseErrorCode::kInvalidValue, "config.max_steps", "must be positive");
    }
  }
  for (const char* key : {"trace", "force_generic"}) {
    if (const Json* flag = optional_field(*cfg, key)) {
      if (!flag->is_boolean()) {
        fail(ParseErrorCode::kMalformedJson, join("config", key), "expected a boolean");
      }
      (std::string(key) == "trace" ? out.trace : out.force_generic) = flag->get<bool>();
    }
  }
  if (const Json* clock = optional_field(*cfg, "clock")) {
    const std::string c = clock->is_string() ? clock->get<std::string>() : "";
    if (c == "round-robin") {
      out.clock = ClockMode::kRoundRobin;
    } else if (c == "uniform") {
      out.clock = ClockMode::kUniform;
    } else {
      fail(ParseErrorCode::kInvalidValue, "config.clock",
           "expected \"round-robin\" or \"uniform\"");
    }
  }
  return out;
}

std::vector<ConcaveCurve> parse_curves(const Json& j, std::size_t n) {
  array_at(j, "curves");
  if (j.size() != n) {
    fail(ParseErrorCode::kInvalidValue, "curves", "need one curve per bidder");
  }
  std::vector<ConcaveCurve> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string cp = join("curves", i);
    array_at(j[i], cp);
    std::vector<ConcaveCurve::Segment> segs;
    for (std::size_t k = 0; k < j[i].size(); ++k) {
      const Vector pair = rationals_at(j[i][k], join(cp, k));
      if (pair.size() != 2) {
        fail(ParseErrorCode::kInvalidValue, join(cp, k), "expected [length, slope]");
      }
      segs.push_back({pair[0], pair[1]});
    }
    validate(ParseErrorCode::kInvalidValue, cp,
             [&] { out.push_back(ConcaveCurve(std::move(segs))); });
  }
  return out;
}

}  // namespace

std::string kind_of(const EnvironmentPayload& payload) {
  static const char* const kNames[] = {"multi-unit", "single-keyword", "adwords",
                                       "graphic", "vod-cut", "h-polytope-2d"};
  return kNames[payload.index()];
}

InstanceFile parse_instance(const Json& doc) {
  object_at(doc, "");
  InstanceFile out;
  const Json& version = require(doc, "", "schema_version");
  if (!version.is_number_integer() || version.get<long long>() != kSchemaVersion) {
    fail(ParseErrorCode::kInvalidValue, "schema_version",
         "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
  }

  const Json* curves = optional_field(doc, "curves");
  const Json& bidders = array_at(require(doc, "", "bidders"), "bidders");
  if (bidders.empty() || bidders.size() > kMaxGroundSize) {
    fail(ParseErrorCode::kInvalidValue, "bidders",
         "need between 1 and " + std::to_string(kMaxGroundSize) + " bidders");
  }
  for (std::size_t i = 0; i < bidders.size(); ++i) {
    const std::string bp = join("bidders", i);
    Bidder b;
    b.budget = budget_at(require(bidders[i], bp, "budget"), join(bp, "budget"));
    if (curves && !bidders[i].contains("value")) {
      b.value = 1;
    } else {
      b.value = rational_at(require(bidders[i], bp, "value"), join(bp, "value"));
      if (b.value <= 0) {
        fail(ParseErrorCode::kInvalidValue, join(bp, "value"), "values must be positive");
      }
    }
    out.bidders.push_back(std::move(b));
  }
  const std::size_t n = out.bidders.size();

  out.environment = parse_environment(require(doc, "", "environment"), n);
  out.config = parse_config(optional_field(doc, "config"));

  if (const Json* q = optional_field(doc, "quality")) {
    Vector gamma = rationals_at(*q, "quality");
    if (gamma.size() != n) {
      fail(ParseErrorCode::kInvalidValue, "quality", "need one factor per bidder");
    }
    for (const auto& g : gamma) {
      if (g <= 0) fail(ParseErrorCode::kInvalidValue, "quality", "factors must be positive");
    }
    if (std::holds_alternative<PackingPolytope2D>(out.environment)) {
      fail(ParseErrorCode::kInvalidValue, "quality",
           "quality factors need a polymatroid environment");
    }
    out.quality = std::move(gamma);
  }
  if (curves) {
    if (!std::holds_alternative<MultiUnitPayload>(out.environment)) {
      fail(ParseErrorCode::kInvalidValue, "curves", "curves need a multi-unit environment");
    }
    if (out.quality) {
      fail(ParseErrorCode::kInvalidValue, "curves", "curves cannot be combined with quality");
    }
    out.curves = parse_curves(*curves, n);
  }
  return out;
}

InstanceFile parse_instance_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ParseErrorCode::kMalformedJson, "", e.what());
  }
  return parse_instance(doc);
}

InstanceFile read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ParseErrorCode::kMalformedJson, "", "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_text(buf.str());
}

Json serialize_instance(const InstanceFile& inst) {
  Json env;
  env["kind"] = kind_of(inst.environment);
  if (const auto* p = std::get_if<MultiUnitPayload>(&inst.environment)) {
    env["supply"] = to_json(p->supply);
  } else if (const auto* p = std::get_if<SingleKeywordPayload>(&inst.environment)) {
    env["ctrs"] = to_json(p->ctrs);
  } else if (const auto* p = std::get_if<AdWordsInstance>(&inst.environment)) {
    Json kws = Json::array();
    for (const auto& kw : p->keywords) {
      Json k;
      k["ctrs"] = to_json(kw.ctrs);
      k["bidders"] = kw.bidders;
      kws.push_back(std::move(k));
    }
    env["keywords"] = std::move(kws);
  } else if (const auto* p = std::get_if<GraphicInstance>(&inst.environment)) {
    env["vertices"] = p->vertices;
    Json edges = Json::array();
    for (const auto& e : p->edges) {
      Json j;
      j["u"] = e.u;
      j["v"] = e.v;
      j["bidder"] = e.bidder.value_or(0);
      edges.push_back(std::move(j));
    }
    env["edges"] = std::move(edges);
  } else if (const auto* p = std::get_if<CapacitatedNetwork>(&inst.environment)) {
    env["nodes"] = p->nodes;
    env["source"] = p->source;
    Json arcs = Json::array();
    for (const auto& a : p->arcs) {
      Json j;
      j["from"] = a.from;
      j["to"] = a.to;
      j["capacity"] = to_json(a.capacity);
      arcs.push_back(std::move(j));
    }
    env["arcs"] = std::move(arcs);
    env["bidder_nodes"] = p->bidder_nodes;
  } else {
    Json rows = Json::array();
    for (const auto& r : std::get<PackingPolytope2D>(inst.environment).rows) {
      Json j;
      j["a"] = to_json(Vector{r.a0, r.a1});
      j["b"] = to_json(r.b);
      rows.push_back(std::move(j));
    }
    env["rows"] = std::move(rows);
  }

  Json out;
  out["schema_version"] = inst.schema_version;
  out["environment"] = std::move(env);
  Json bidders = Json::array();
  for (const auto& b : inst.bidders) {
    Json j;
    if (!inst.curves) j["value"] = to_json(b.value);
    j["budget"] = to_json(b.budget);
    bidders.push_back(std::move(j));
  }
  out["bidders"] = std::move(bidders);

  Json cfg;
  cfg["epsilon"] = inst.config.epsilon_policy == EpsilonPolicy::kAuto
                       ? Json("auto")
                       : to_json(inst.config.epsilon);
  cfg["max_steps"] = inst.config.max_steps;
  cfg["trace"] = inst.config.trace;
  cfg["clock"] = inst.config.clock == ClockMode::kUniform ? "uniform" : "round-robin";
  if (inst.config.force_generic) cfg["force_generic"] = true;
  out["config"] = std::move(cfg);

  if (inst.quality) out["quality"] = to_json(*inst.quality);
  if (inst.curves) {
    Json curves = Json::array();
    for (const auto& c : *inst.curves) {
      Json segs = Json::array();
      for (const auto& s : c.segments()) {
        segs.push_back(Json::array({format_rational(s.length), format_rational(s.slope)}));
      }
      curves.push_back(std::move(segs));
    }
    out["curves"] = std::move(curves);
  }
  return out;
}

std::optional<SubmodularOracle> instance_oracle(const InstanceFile& inst) {
  const std::size_t n = inst.bidders.size();
  if (const auto* p = std::get_if<MultiUnitPayload>(&inst.environment)) {
    return multi_unit_oracle(p->supply, n);
  }
  if (const auto* p = std::get_if<SingleKeywordPayload>(&inst.environment)) {
    return single_keyword_oracle(p->ctrs, n);
  }
  if (const auto* p = std::get_if<AdWordsInstance>(&inst.environment)) {
    return adwords_oracle(*p);
  }
  if (const auto* p = std::get_if<GraphicInstance>(&inst.environment)) {
    return graphic_oracle(*p);
  }
  if (const auto* p = std::get_if<CapacitatedNetwork>(&inst.environment)) {
    return vod_cut_oracle(*p);
  }
  return std::nullopt;
}

Environment instance_environment(const InstanceFile& inst) {
  if (const auto* p = std::get_if<PackingPolytope2D>(&inst.environment)) {
    return *p;
  }
  const SubmodularOracle f = *instance_oracle(inst);
  if (inst.quality) return ScaledEnv{f, *inst.quality};
  if (const auto* p = std::get_if<SingleKeywordPayload>(&inst.environment)) {
    Vector ctrs = p->ctrs;
    ctrs.resize(inst.bidders.size(), Rational(0));
    return SingleKeywordEnv{std::move(ctrs)};
  }
  return PolymatroidEnv{f};
}

InstanceFile generate_instance(const std::string& kind, std::size_t n,
                               std::size_t m, std::uint64_t seed) {
  if (n == 0 || n > kMaxGroundSize) {
    throw DomainError("bidder count must be between 1 and " +
                      std::to_string(kMaxGroundSize));
  }
  std::mt19937_64 rng(seed);
  // Modulo keeps the stream identical across standard libraries.
  auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);
  };
  auto small = [&](std::uint64_t lo, std::uint64_t hi) {
    return Rational(static_cast<long>(uniform(lo, hi)));
  };
  auto ctr_list = [&](std::size_t len) {
    Vector ctrs;
    for (std::size_t k = 0; k < len; ++k) ctrs.push_back(small(0, 5));
    std::sort(ctrs.begin(), ctrs.end(), std::greater<>());
    return ctrs;
  };

  InstanceFile inst;
  if (kind == "multi-unit") {
    inst.environment = MultiUnitPayload{small(1, 5)};
  } else if (kind == "single-keyword") {
    inst.environment = SingleKeywordPayload{ctr_list(n)};
  } else if (kind == "adwords") {
    AdWordsInstance a;
    a.bidders = n;
    const std::size_t keywords = m == 0 ? 2 : m;
    for (std::size_t k = 0; k < keywords; ++k) {
      Keyword kw;
      for (std::size_t i = 0; i < n; ++i) {
        if (uniform(0, 1) == 1) kw.bidders.push_back(i);
      }
      if (kw.bidders.empty()) kw.bidders.push_back(uniform(0, n - 1));
      kw.ctrs = ctr_list(kw.bidders.size());
      a.keywords.push_back(std::move(kw));
    }
    inst.environment = std::move(a);
  } else if (kind == "graphic") {
    GraphicInstance g;
    g.vertices = std::max<std::size_t>(m == 0 ? n + 1 : m, 2);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t u = uniform(0, g.vertices - 1);
      std::size_t v = uniform(0, g.vertices - 2);
      if (v >= u) ++v;
      g.edges.push_back({u, v, i});
    }
    inst.environment = std::move(g);
  } else if (kind == "vod-cut") {
    CapacitatedNetwork net;
    net.nodes = std::max<std::size_t>(m == 0 ? n + 2 : m, 2);
    net.source = 0;
    for (std::size_t u = 0; u < net.nodes; ++u) {
      for (std::size_t v = 1; v < net.nodes; ++v) {
        if (u != v && uniform(0, 2) == 0) net.arcs.push_back({u, v, small(1, 4)});
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      net.bidder_nodes.push_back(uniform(1, net.nodes - 1));
    }
    inst.environment = std::move(net);
  } else if (kind == "h-polytope-2d") {
    if (n != 2) throw DomainError("h-polytope-2d instances have exactly 2 bidders");
    // Two coordinate caps and a total cap: a polymatroid written as an
    // H-polytope, so generic clinching lands on a Pareto-optimal point.
    const Rational c0 = small(1, 4);
    const Rational c1 = small(1, 4);
    const Rational total = small(1, 8);
    inst.environment = PackingPolytope2D{{{1, 0, c0}, {0, 1, c1}, {1, 1, total}}};
  } else {
    throw ParseError(ParseErrorCode::kUnknownKind, "kind", "unknown kind \"" + kind + "\"");
  }

  for (std::size_t i = 0; i < n; ++i) {
    Bidder b;
    b.value = small(1, 9);
    b.budget = uniform(0, 4) == 0 ? Budget::unbounded() : Budget(small(1, 6));
    inst.bidders.push_back(std::move(b));
  }
  return inst;
}

int exit_code_for(const VerificationReport& report) {
  return report.passed() ? kExitPass : kExitFail;
}

Outcome run_instance(const InstanceFile& inst) {
  if (inst.curves) {
    std::vector<Budget> budgets;
    for (const auto& b : inst.bidders) budgets.push_back(b.budget);
    return run_decreasing_marginals(
        *inst.curves, budgets, std::get<MultiUnitPayload>(inst.environment).supply,
        inst.config);
  }
  return run_clinching(instance_environment(inst), inst.bidders, inst.config);
}

namespace {

Json outcome_section(const Outcome& o) {
  Json out = to_json(o);
  out.erase("trace");
  return out;
}

Json trace_section(const Outcome& o) {
  Json trace = Json::array();
  if (o.trace) {
    for (const auto& s : *o.trace) trace.push_back(to_json(s));
  }
  return trace;
}

Json report_file(const std::string& command, const InstanceFile& inst,
                 const Outcome& o, const VerificationReport* verification) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = command;
  out["kind"] = kind_of(inst.environment);
  out["outcome"] = outcome_section(o);
  if (verification) out["verification"] = verification->to_json();
  if (o.trace) out["trace"] = trace_section(o);
  return out;
}

void check_curve_outcome(const InstanceFile& inst, const Outcome& o,
                         VerificationReport& report) {
  const auto& curves = *inst.curves;
  std::optional<std::size_t> ir_bad;
  std::optional<std::size_t> budget_bad;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (!ir_bad && o.payments[i] > curves[i](o.allocation[i])) ir_bad = i;
    const Budget& b = inst.bidders[i].budget;
    if (!budget_bad && !b.is_unbounded() && o.payments[i] > b.amount()) budget_bad = i;
  }
  if (ir_bad) {
    Json w;
    w["bidder"] = *ir_bad;
    w["payment"] = to_json(o.payments[*ir_bad]);
    w["value_received"] = to_json(curves[*ir_bad](o.allocation[*ir_bad]));
    report.fail("outcome.individual-rationality", "payment exceeds value received", w);
  } else {
    report.pass("outcome.individual-rationality");
  }
  if (budget_bad) {
    Json w;
    w["bidder"] = *budget_bad;
    w["payment"] = to_json(o.payments[*budget_bad]);
    report.fail("outcome.budget", "payment exceeds budget", w);
  } else {
    report.pass("outcome.budget");
  }
}

}  // namespace

CommandResult command_run(const InstanceFile& inst) {
  const Outcome o = run_instance(inst);
  return {report_file("run", inst, o, nullptr), kExitPass};
}

CommandResult command_verify(const InstanceFile& inst) {
  VerificationReport report("verify");
  Outcome outcome;
  if (inst.curves) {
    AuctionConfig cfg = inst.config;
    cfg.trace = true;
    InstanceFile traced = inst;
    traced.config = cfg;
    outcome = run_instance(traced);
    const auto& supply = std::get<MultiUnitPayload>(inst.environment).supply;
    report.merge(monitor_trace(multi_unit_oracle(supply, inst.bidders.size()),
                               *outcome.trace),
                 "monitor.");
    check_curve_outcome(inst, outcome, report);
  } else {
    const Environment env = instance_environment(inst);
    auto [o, monitors] = run_with_monitors(env, inst.bidders, inst.config);
    outcome = std::move(o);
    report.merge(monitors, "monitor.");
    if (const auto* poly = std::get_if<PackingPolytope2D>(&env)) {
      VerificationReport local("outcome");
      const auto d = check_dominated_direction(*poly, inst.bidders, outcome);
      if (d) {
        Json w;
        w["direction"] = to_json(*d);
        local.fail("pareto", "outcome admits a dominated direction", w);
      } else {
        local.pass("pareto");
      }
      report.merge(local, "outcome.");
    } else if (inst.quality) {
      // Scaled outcome x corresponds to x / gamma on P(f) with values
      // gamma * v and the same payments.
      const Vector& gamma = *inst.quality;
      std::vector<Bidder> scaled = inst.bidders;
      Outcome unscaled = outcome;
      for (std::size_t i = 0; i < gamma.size(); ++i) {
        scaled[i].value *= gamma[i];
        unscaled.allocation[i] /= gamma[i];
      }
      report.merge(check_outcome(*instance_oracle(inst), scaled, unscaled), "outcome.");
    } else {
      report.merge(check_outcome(*instance_oracle(inst), inst.bidders, outcome),
                   "outcome.");
    }
  }
  if (!inst.config.trace) outcome.trace.reset();
  return {report_file("verify", inst, outcome, &report), exit_code_for(report)};
}

CommandResult command_check_submodular(const InstanceFile& inst) {
  const auto* polytope = std::get_if<PackingPolytope2D>(&inst.environment);
  // An H-polytope is checked through its rank function max x(S).
  const auto f = polytope ? polytope->rank_oracle() : *instance_oracle(inst);
  const SubmodularityReport r = verify_submodular(f);
  VerificationReport report("check-submodular");
  if (r.ok()) {
    report.pass("submodular", "exhaustive check over " +
                                  std::to_string(std::size_t{1} << f.size()) +
                                  " subsets");
  } else {
    Json w;
    w["violation"] = to_string(r.violation);
    w["first"] = r.first.elements();
    w["second"] = r.second.elements();
    w["f_first"] = to_json(f(r.first));
    w["f_second"] = to_json(f(r.second));
    report.fail("submodular", to_string(r.violation), w);
  }
  if (polytope) {
    if (const auto gap = polytope->polymatroid_gap()) {
      Json w;
      w["rank"] = {to_json(f(Subset::singleton(0))), to_json(f(Subset::singleton(1))),
                   to_json(f(Subset::full(2)))};
      w["vertex_outside"] = to_json(*gap);
      report.fail("polymatroid", "P(rank) has a vertex outside the polytope", w);
    } else {
      report.pass("polymatroid", "the polytope equals P(rank)");
    }
  }
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "check-submodular";
  out["kind"] = kind_of(inst.environment);
  out["verification"] = report.to_json();
  return {std::move(out), exit_code_for(report)};
}

CommandResult command_demo(const std::string& name) {
  VerificationReport report;
  if (name == "appendix-d") {
    report = demo_appendix_d();
  } else if (name == "impossibility") {
    report = demo_impossibility();
  } else {
    throw ParseError(ParseErrorCode::kUnknownKind, "demo",
                     "unknown demo \"" + name + "\"");
  }
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "demo " + name;
  out["verification"] = report.to_json();
  return {std::move(out), exit_code_for(report)};
}

namespace {

std::string list_of(const Json& arr) {
  std::string out = "(";
  for (std::size_t k = 0; k < arr.size(); ++k) {
    if (k) out += ", ";
    out += arr[k].is_string() ? arr[k].get<std::string>() : arr[k].dump();
  }
  return out + ")";
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream out;
  if (report.contains("command")) {
    out << "command: " << report["command"].get<std::string>() << "\n";
  }
  if (report.contains("outcome")) {
    const Json& o = report["outcome"];
    out << "allocation: " << list_of(o["allocation"]) << "\n";
    out << "payments:   " << list_of(o["payments"]) << "\n";
    out << "exhausted:  " << list_of(o["exhausted"]) << "\n";
    out << "steps:      " << o["steps"].dump() << "  epsilon: "
        << o["epsilon"].get<std::string>() << "\n";
  }
  if (report.contains("verification")) {
    const Json& v = report["verification"];
    for (const auto& p : v["properties"]) {
      out << (p["status"] == "pass" ? "PASS " : "FAIL ") << p["name"].get<std::string>();
      if (p.contains("detail")) out << "  " << p["detail"].get<std::string>();
      out << "\n";
      if (p.contains("witness")) out << "     witness: " << p["witness"].dump() << "\n";
    }
    out << (v["passed"].get<bool>() ? "all properties pass" : "some properties fail")
        << "\n";
  }
  return out.str();
}

}  // namespace clinch
