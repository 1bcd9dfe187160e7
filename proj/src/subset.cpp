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

#include "clinch/subset.hpp"

#include <algorithm>

#include "clinch/errors.hpp"

namespace clinch {

std::vector<std::size_t> Subset::elements() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for (Mask m = mask_; m != 0; m &= m - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  }
  return out;
}

std::string Subset::to_string() const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : elements()) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

bool witness_less(Subset a, Subset b) {
  if (a.size() != b.size()) return a.size() < b.size();
  const auto ea = a.elements();
  const auto eb = b.elements();
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(),
                                      eb.end());
}

const char* to_string(ParseErrorCode code) {
  switch (code) {
    case ParseErrorCode::kMissingField:
      return "missing-field";
    case ParseErrorCode::kMalformedRational:
      return "malformed-rational";
    case ParseErrorCode::kUnknownKind:
      return "unknown-kind";
    case ParseErrorCode::kInconsistentGraph:
      return "inconsistent-graph";
    case ParseErrorCode::kInvalidValue:
      return "invalid-value";
    case ParseErrorCode::kMalformedJson:
      return "malformed-json";
  }
  return "unknown";
}

}  // namespace clinch
