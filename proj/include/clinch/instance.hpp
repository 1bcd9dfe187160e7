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

// JSON instance files, seeded instance generation, and the commands of the
// `clinch` tool with their reports and exit codes.
//
// Instance file layout (rationals are strings "p/q" or "p"):
//
//   {
//     "schema_version": 1,
//     "environment": {"kind": "multi-unit", "supply": "3"},
//     "bidders": [{"value": "3", "budget": "2"}, {"value": "2", "budget": "inf"}],
//     "config": {"epsilon": "auto", "max_steps": 1000000, "trace": false,
//                "clock": "round-robin"},
//     "quality": ["1", "2"],                    (optional)
//     "curves": [[["1", "4"], ["1", "1"]], ...] (optional, [length, slope])
//   }
//
// Environment payloads by kind:
//   multi-unit      "supply"
//   single-keyword  "ctrs"
//   adwords         "keywords": [{"ctrs": [...], "bidders": [0, 2]}]
//   graphic         "vertices", "edges": [{"u": 0, "v": 1, "bidder": 0}]
//   vod-cut         "nodes", "source", "arcs": [{"from", "to", "capacity"}],
//                   "bidder_nodes"
//   h-polytope-2d   "rows": [{"a": ["2", "1"], "b": "6"}]

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "clinch/auction.hpp"
#include "clinch/environments.hpp"
#include "clinch/verify.hpp"

namespace clinch {

inline constexpr int kSchemaVersion = 1;

struct MultiUnitPayload {
  Rational supply;
};
struct SingleKeywordPayload {
  Vector ctrs;
};
using EnvironmentPayload =
    std::variant<MultiUnitPayload, SingleKeywordPayload, AdWordsInstance,
                 GraphicInstance, CapacitatedNetwork, PackingPolytope2D>;

struct InstanceFile {
  int schema_version = kSchemaVersion;
  EnvironmentPayload environment;
  std::vector<Bidder> bidders;
  AuctionConfig config;
  /// Uniform per-bidder quality factors (scaled auction).
  std::optional<Vector> quality;
  /// Concave valuations for a decreasing-marginals run (multi-unit only).
  /// When present, bidder values are not used.
  std::optional<std::vector<ConcaveCurve>> curves;
};

/// "multi-unit", "single-keyword", "adwords", "graphic", "vod-cut" or
/// "h-polytope-2d".
std::string kind_of(const EnvironmentPayload& payload);

/// Structured ParseError on any problem, naming the offending field.
InstanceFile parse_instance(const Json& document);
InstanceFile parse_instance_text(const std::string& text);
InstanceFile read_instance(const std::string& path);

Json serialize_instance(const InstanceFile& instance);

/// The submodular function behind a polymatroid instance; nullopt for
/// h-polytope-2d.
std::optional<SubmodularOracle> instance_oracle(const InstanceFile& instance);

/// Environment handed to run_clinching (a ScaledEnv when quality is set).
Environment instance_environment(const InstanceFile& instance);

/// Deterministic small-integer instance. `m` is the keyword count for
/// adwords, the vertex count for graphic, the node count for vod-cut and
/// ignored otherwise (0 picks a default). h-polytope-2d requires n == 2.
InstanceFile generate_instance(const std::string& kind, std::size_t n,
                               std::size_t m, std::uint64_t seed);

/// Outcome of one command: a JSON report plus its exit code.
struct CommandResult {
  Json report;
  int exit_code = 0;
};

enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,
  kExitInput = 2,
  kExitInternal = 3,
};

/// 0 when every property passed, 1 otherwise.
int exit_code_for(const VerificationReport& report);

/// Runs the auction (decreasing marginals when curves are present).
Outcome run_instance(const InstanceFile& instance);

CommandResult command_run(const InstanceFile& instance);
CommandResult command_verify(const InstanceFile& instance);
CommandResult command_check_submodular(const InstanceFile& instance);
CommandResult command_demo(const std::string& name);

/// Text rendering: allocation, payments, exhausted set and one line per
/// property (with its witness on failure).
std::string render_text(const Json& report);

}  // namespace clinch
