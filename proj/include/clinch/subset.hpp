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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace clinch {

/// Largest ground set a Subset can address.
inline constexpr std::size_t kMaxGroundSize = 30;

/// A subset of the bidders {0, ..., n-1}, stored as a bit mask.
class Subset {
 public:
  using Mask = std::uint32_t;

  constexpr Subset() = default;
  static constexpr Subset from_mask(Mask mask) { return Subset(mask); }
  static constexpr Subset full(std::size_t n) {
    return Subset(static_cast<Mask>((Mask{1} << n) - 1));
  }
  static constexpr Subset singleton(std::size_t i) {
    return Subset(Mask{1} << i);
  }
  static Subset of(std::initializer_list<std::size_t> elements) {
    Subset s;
    for (std::size_t i : elements) s = s.with(i);
    return s;
  }

  constexpr Mask mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(mask_));
  }
  constexpr bool contains(std::size_t i) const { return (mask_ >> i) & 1U; }
  constexpr bool is_subset_of(Subset other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  /// One past the largest element; 0 for the empty set.
  constexpr std::size_t bound() const {
    return static_cast<std::size_t>(std::bit_width(mask_));
  }

  constexpr Subset with(std::size_t i) const {
    return Subset(mask_ | (Mask{1} << i));
  }
  constexpr Subset without(std::size_t i) const {
    return Subset(mask_ & ~(Mask{1} << i));
  }

  std::vector<std::size_t> elements() const;
  /// "{0,2,3}"
  std::string to_string() const;

  friend constexpr Subset operator|(Subset a, Subset b) {
    return Subset(a.mask_ | b.mask_);
  }
  friend constexpr Subset operator&(Subset a, Subset b) {
    return Subset(a.mask_ & b.mask_);
  }
  friend constexpr Subset operator-(Subset a, Subset b) {
    return Subset(a.mask_ & ~b.mask_);
  }
  friend constexpr bool operator==(Subset, Subset) = default;

 private:
  constexpr explicit Subset(Mask mask) : mask_(mask) {}
  Mask mask_ = 0;
};

/// Deterministic witness order: smaller cardinality first, then
/// lexicographic comparison of the sorted element lists.
bool witness_less(Subset a, Subset b);

}  // namespace clinch
