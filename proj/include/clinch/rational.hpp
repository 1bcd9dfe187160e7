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

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clinch {

/// Exact rational number. Every price, budget, allocation and oracle value in
/// the library is one of these; nothing is ever rounded.
using Rational = mpq_class;
using Vector = std::vector<Rational>;

/// Parses "p/q" or "p" (optional leading '-'), q > 0. Throws ParseError
/// (code MalformedRational) on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form, or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

Vector zeros(std::size_t n);
Rational sum(std::span<const Rational> values);
std::string format_vector(std::span<const Rational> values);

/// A budget is either a finite nonnegative rational or unbounded. The
/// unbounded sentinel never compares equal to any finite amount. A
/// default-constructed budget is unbounded.
class Budget {
 public:
  Budget() = default;
  explicit Budget(Rational amount);

  static Budget unbounded() { return Budget{}; }

  bool is_unbounded() const { return !amount_.has_value(); }
  /// Precondition: !is_unbounded().
  const Rational& amount() const;

  /// Remaining budget after spending `spent`; unbounded stays unbounded.
  Budget minus(const Rational& spent) const;

  friend bool operator==(const Budget&, const Budget&) = default;

 private:
  std::optional<Rational> amount_;
};

/// "inf" for the unbounded budget, otherwise the canonical rational.
std::string format_budget(const Budget& budget);
Budget parse_budget(std::string_view text);

}  // namespace clinch
