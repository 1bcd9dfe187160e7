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

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "clinch/subset.hpp"

namespace clinch {

/// Argument outside the mathematical domain of an operation: negative
/// coordinates, out-of-range indices, increasing CTR lists, and so on.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ground set too large for subset enumeration, or a dimension the
/// operation does not support.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A documented precondition failed. Carries the violating set when one
/// exists (e.g. the set S with rho(S) > f(S)).
class PreconditionError : public std::logic_error {
 public:
  PreconditionError(const std::string& what, Subset violating)
      : std::logic_error(what), violating_(violating) {}
  explicit PreconditionError(const std::string& what)
      : std::logic_error(what) {}

  Subset violating_set() const { return violating_; }

 private:
  Subset violating_;
};

/// The auction loop hit its step guard without all demands reaching zero.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParseErrorCode {
  kMissingField,
  kMalformedRational,
  kUnknownKind,
  kInconsistentGraph,
  kInvalidValue,
  kMalformedJson,
};

const char* to_string(ParseErrorCode code);

/// Structured instance-file error naming the offending field.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorCode code, std::string field, const std::string& what)
      : std::runtime_error(what), code_(code), field_(std::move(field)) {}

  ParseErrorCode code() const { return code_; }
  const std::string& field() const { return field_; }

 private:
  ParseErrorCode code_;
  std::string field_;
};

}  // namespace clinch
