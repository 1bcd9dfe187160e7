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

#include "clinch/rational.hpp"

#include <cctype>

#include "clinch/errors.hpp"

namespace clinch {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void malformed(std::string_view text) {
  throw ParseError(ParseErrorCode::kMalformedRational, "",
                   "malformed rational '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) malformed(text);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) malformed(text);
  Rational value(n, d);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) { return value.get_str(); }

Vector zeros(std::size_t n) { return Vector(n, Rational(0)); }

Rational sum(std::span<const Rational> values) {
  Rational total = 0;
  for (const auto& v : values) total += v;
  return total;
}

std::string format_vector(std::span<const Rational> values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_rational(values[i]);
  }
  return out + ")";
}

Budget::Budget(Rational amount) : amount_(std::move(amount)) {
  if (*amount_ < 0) throw DomainError("budget must be nonnegative");
}

const Rational& Budget::amount() const {
  if (!amount_) throw DomainError("unbounded budget has no finite amount");
  return *amount_;
}

Budget Budget::minus(const Rational& spent) const {
  if (!amount_) return *this;
  return Budget(*amount_ - spent);
}

std::string format_budget(const Budget& budget) {
  return budget.is_unbounded() ? "inf" : format_rational(budget.amount());
}

Budget parse_budget(std::string_view text) {
  if (text == "inf") return Budget::unbounded();
  Rational amount = parse_rational(text);
  if (amount < 0) {
    throw ParseError(ParseErrorCode::kInvalidValue, "",
                     "budget must be nonnegative");
  }
  return Budget(amount);
}

}  // namespace clinch
