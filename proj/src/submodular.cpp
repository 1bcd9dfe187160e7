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

#include "clinch/submodular.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <mutex>

#include "clinch/errors.hpp"

namespace clinch {

std::size_t brute_force_cap() {
  const char* env = std::getenv("CLINCH_BRUTE_FORCE_CAP");
  if (env == nullptr) return kDefaultBruteForceCap;
  std::size_t value = 0;
  const std::string_view text(env);
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    return kDefaultBruteForceCap;
  }
  return std::min(value, kMaxGroundSize);
}

void require_enumerable(std::size_t n, std::string_view operation) {
  const std::size_t cap = brute_force_cap();
  if (n > cap) {
    throw SizeError(std::string(operation) + ": ground set of size " +
                    std::to_string(n) + " exceeds the enumeration cap " +
                    std::to_string(cap));
  }
}

SetFunction::SetFunction(std::size_t n, std::function<Rational(Subset)> fn)
    : n_(n), fn_(std::move(fn)) {}

struct SubmodularOracle::State {
  std::size_t n;
  std::function<Rational(Subset)> fn;
  bool monotone;
  std::string name;

  std::once_flag table_once;
  std::vector<Rational> table;
  std::atomic<bool> table_ready{false};
};

SubmodularOracle::SubmodularOracle(std::size_t n,
                                   std::function<Rational(Subset)> fn,
                                   bool monotone, std::string name)
    : state_(std::make_shared<State>()) {
  if (n == 0) throw DomainError("ground set must be nonempty");
  if (n > kMaxGroundSize) {
    throw SizeError("ground set of size " + std::to_string(n) +
                    " exceeds the addressable maximum");
  }
  state_->n = n;
  state_->fn = std::move(fn);
  state_->monotone = monotone;
  state_->name = std::move(name);
}

std::size_t SubmodularOracle::size() const { return state_->n; }
bool SubmodularOracle::claims_monotone() const { return state_->monotone; }
const std::string& SubmodularOracle::name() const { return state_->name; }

Rational SubmodularOracle::operator()(Subset s) const {
  if (state_->table_ready.load(std::memory_order_acquire)) {
    return state_->table[s.mask()];
  }
  return state_->fn(s);
}

const std::vector<Rational>& SubmodularOracle::table() const {
  std::call_once(state_->table_once, [this] {
    require_enumerable(state_->n, "oracle table");
    const std::size_t count = std::size_t{1} << state_->n;
    std::vector<Rational> values;
    values.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
      values.push_back(
          state_->fn(Subset::from_mask(static_cast<Subset::Mask>(mask))));
    }
    state_->table = std::move(values);
    state_->table_ready.store(true, std::memory_order_release);
  });
  return state_->table;
}

SetFunction SubmodularOracle::as_set_function() const {
  return SetFunction(size(), [self = *this](Subset s) { return self(s); });
}

Rational evaluate(const SubmodularOracle& oracle, Subset s) {
  if (!s.is_subset_of(oracle.ground())) {
    throw DomainError("subset " + s.to_string() +
                      " is not contained in the ground set of '" +
                      oracle.name() + "'");
  }
  return oracle(s);
}

const char* to_string(SubmodularityReport::Violation violation) {
  using V = SubmodularityReport::Violation;
  switch (violation) {
    case V::kNone:
      return "none";
    case V::kNormalization:
      return "normalization";
    case V::kSubmodularity:
      return "submodularity";
    case V::kMonotonicity:
      return "monotonicity";
  }
  return "unknown";
}

SubmodularityReport verify_submodular(const SubmodularOracle& oracle) {
  using V = SubmodularityReport::Violation;
  const std::size_t n = oracle.size();
  require_enumerable(n, "verify_submodular");
  const auto& f = oracle.table();

  if (f[0] != 0) return {V::kNormalization, Subset{}, Subset{}};

  const Subset::Mask count = Subset::Mask{1} << n;
  // Masks in increasing order visit smaller bases first, so the reported
  // witness is deterministic.
  for (Subset::Mask m = 0; m < count; ++m) {
    const Subset s = Subset::from_mask(m);
    for (std::size_t i = 0; i < n; ++i) {
      if (s.contains(i)) continue;
      const Subset si = s.with(i);
      if (oracle.claims_monotone() && f[s.mask()] > f[si.mask()]) {
        return {V::kMonotonicity, si, s};
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        if (s.contains(j)) continue;
        const Subset sj = s.with(j);
        if (f[si.mask()] + f[sj.mask()] < f[si.with(j).mask()] + f[m]) {
          return {V::kSubmodularity, si, sj};
        }
      }
    }
  }
  return {};
}

ConstrainedMinimum min_constrained(const SetFunction& fn, Subset include,
                                   Subset exclude) {
  const std::size_t n = fn.size();
  require_enumerable(n, "min_constrained");
  if (!(include & exclude).empty()) {
    throw DomainError("include and exclude sets overlap");
  }
  const Subset ground = fn.ground();
  if (!include.is_subset_of(ground) || !exclude.is_subset_of(ground)) {
    throw DomainError("constraint set outside the ground set");
  }
  const Subset free = ground - include - exclude;

  std::optional<ConstrainedMinimum> best;
  // Walk the submasks of the free elements.
  Subset::Mask sub = free.mask();
  while (true) {
    const Subset s = include | Subset::from_mask(sub);
    Rational value = fn(s);
    if (!best || value < best->value ||
        (value == best->value && witness_less(s, best->set))) {
      best = ConstrainedMinimum{s, std::move(value)};
    }
    if (sub == 0) break;
    sub = (sub - 1) & free.mask();
  }
  return *best;
}

namespace {

void require_nonnegative(std::span<const Rational> x, std::string_view what) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0) {
      throw DomainError(std::string(what) + "[" + std::to_string(i) +
                        "] is negative");
    }
  }
}

void require_length(std::span<const Rational> x, std::size_t n,
                    std::string_view what) {
  if (x.size() != n) {
    throw DomainError(std::string(what) + " has length " +
                      std::to_string(x.size()) + ", expected " +
                      std::to_string(n));
  }
}

// w(T) for every mask T, via w(T) = w(T minus lowest bit) + w_lowest.
std::vector<Rational> subset_sums(std::span<const Rational> w) {
  const std::size_t count = std::size_t{1} << w.size();
  std::vector<Rational> out(count);
  out[0] = 0;
  for (std::size_t m = 1; m < count; ++m) {
    const std::size_t low = static_cast<std::size_t>(std::countr_zero(m));
    out[m] = out[m & (m - 1)] + w[low];
  }
  return out;
}

}  // namespace

Membership membership(const SubmodularOracle& f, std::span<const Rational> x) {
  const std::size_t n = f.size();
  require_length(x, n, "x");
  require_nonnegative(x, "x");
  require_enumerable(n, "membership");
  const auto& values = f.table();
  const auto sums = subset_sums(x);

  std::optional<Subset> worst;
  Rational worst_slack = 0;
  for (std::size_t m = 1; m < values.size(); ++m) {
    Rational slack = values[m] - sums[m];
    const Subset s = Subset::from_mask(static_cast<Subset::Mask>(m));
    if (slack < worst_slack) {
      worst_slack = std::move(slack);
      worst = s;
    } else if (worst && slack == worst_slack) {
      // Minimizers of a submodular function are closed under union.
      worst = *worst | s;
    }
  }
  return Membership{worst};
}

struct ResidualOracle::Tables {
  std::once_flag once;
  std::vector<Rational> hat;
  std::vector<Rational> bar;
};

ResidualOracle::ResidualOracle(SubmodularOracle base, Vector rho,
                               Vector demand)
    : base_(std::move(base)),
      rho_(std::move(rho)),
      demand_(std::move(demand)),
      tables_(std::make_shared<Tables>()) {
  require_length(rho_, base_.size(), "rho");
  require_length(demand_, base_.size(), "demand");
}

const ResidualOracle::Tables& ResidualOracle::tables() const {
  std::call_once(tables_->once, [this] {
    const std::size_t n = size();
    require_enumerable(n, "residual oracle");
    const auto& f = base_.table();
    const std::size_t count = f.size();
    const auto rho_sums = subset_sums(rho_);
    const auto d_sums = subset_sums(demand_);

    // low(S) = min over T subset of S of f(T) - rho(T) - d(T); then
    // fhat(S) = d(S) + low(S). The subset-minimum is accumulated one
    // element at a time, which enumerates every T exactly once per S.
    std::vector<Rational> low(count);
    for (std::size_t m = 0; m < count; ++m) {
      low[m] = f[m] - rho_sums[m] - d_sums[m];
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t bit = std::size_t{1} << i;
      for (std::size_t m = 0; m < count; ++m) {
        if ((m & bit) && low[m ^ bit] < low[m]) low[m] = low[m ^ bit];
      }
    }
    std::vector<Rational> hat(count);
    for (std::size_t m = 0; m < count; ++m) hat[m] = d_sums[m] + low[m];

    std::vector<Rational> bar = hat;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t bit = std::size_t{1} << i;
      for (std::size_t m = 0; m < count; ++m) {
        if (!(m & bit) && bar[m | bit] < bar[m]) bar[m] = bar[m | bit];
      }
    }
    tables_->hat = std::move(hat);
    tables_->bar = std::move(bar);
  });
  return *tables_;
}

Rational ResidualOracle::operator()(Subset s) const {
  if (!s.is_subset_of(Subset::full(size()))) {
    throw DomainError("subset outside the ground set");
  }
  return tables().hat[s.mask()];
}

Rational ResidualOracle::monotonized(Subset s) const {
  if (!s.is_subset_of(Subset::full(size()))) {
    throw DomainError("subset outside the ground set");
  }
  return tables().bar[s.mask()];
}

SubmodularOracle ResidualOracle::as_oracle() const {
  return SubmodularOracle(
      size(), [self = *this](Subset s) { return self(s); }, false,
      "residual(" + base_.name() + ")");
}

SubmodularOracle ResidualOracle::monotonized_oracle() const {
  return SubmodularOracle(
      size(), [self = *this](Subset s) { return self.monotonized(s); }, true,
      "monotonized-residual(" + base_.name() + ")");
}

ResidualOracle residual(const SubmodularOracle& f, Vector rho, Vector demand) {
  require_length(demand, f.size(), "demand");
  require_nonnegative(demand, "demand");
  const Membership m = membership(f, rho);
  if (!m.ok()) {
    throw PreconditionError(
        "promised allocation violates the polymatroid on " +
            m.violated->to_string(),
        *m.violated);
  }
  return ResidualOracle(f, std::move(rho), std::move(demand));
}

Vector clinch_amounts(const SubmodularOracle& f, const Vector& rho,
                      const Vector& demand) {
  const ResidualOracle fhat = residual(f, rho, demand);
  const std::size_t n = f.size();
  const Subset all = Subset::full(n);
  const Rational total = fhat(all);
  Vector delta(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational gain = total - fhat(all.without(i));
    delta[i] = gain > 0 ? gain : Rational(0);
  }
  return delta;
}

Vector greedy_vertex(const SubmodularOracle& f,
                     std::span<const std::size_t> order) {
  const std::size_t n = f.size();
  if (order.size() != n) throw DomainError("order must be a permutation");
  Vector x = zeros(n);
  Subset prefix;
  Rational previous = 0;
  for (std::size_t i : order) {
    if (i >= n || prefix.contains(i)) {
      throw DomainError("order must be a permutation");
    }
    prefix = prefix.with(i);
    Rational current = f(prefix);
    x[i] = current - previous;
    previous = std::move(current);
  }
  return x;
}

}  // namespace clinch
