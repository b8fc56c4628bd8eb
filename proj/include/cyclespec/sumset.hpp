// Copyright 2026 The cyclespec Authors
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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cyclespec/route.hpp"

namespace cyclespec {

class SumsetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One attainable length and the route realizing it (null for purely
/// arithmetic sets).
struct LengthEntry {
  std::uint64_t length = 0;
  RouteRef witness;
};

/// Strictly increasing lengths with optional certificates.
struct LengthSet {
  std::vector<LengthEntry> entries;
  std::optional<std::uint64_t> gap_lo;
  std::optional<std::uint64_t> gap_hi;
  /// max - min < interval_size.
  std::optional<std::uint64_t> interval_size;

  static LengthSet from_lengths(const std::vector<std::uint64_t>& lengths);
  /// Keeps one witness per distinct length (the first seen).
  static LengthSet from_routes(const std::vector<RouteRef>& routes);
  static LengthSet singleton(std::uint64_t length, RouteRef witness = nullptr);

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  std::uint64_t min() const { return entries.front().length; }
  std::uint64_t max() const { return entries.back().length; }
  std::uint64_t span() const { return empty() ? 0 : max() - min(); }
  std::vector<std::uint64_t> lengths() const;

  /// Smallest and largest consecutive gap (0, 0 for fewer than 2 entries).
  std::pair<std::uint64_t, std::uint64_t> measured_gaps() const;
  /// Sets gap_lo and gap_hi to the measured values.
  LengthSet& certify_gaps();
  /// Throws SumsetError if ordering or any present certificate fails.
  void check() const;
};

/// Staircase subset of L_1 + ... + L_t of size 1 + sum(|L_i| - 1) with
/// every consecutive gap in [a, b]. Witnesses are concatenations in input
/// order.
LengthSet combine_gapped(const std::vector<LengthSet>& sets, std::uint64_t a, std::uint64_t b);

/// Full sum-set L1 + L2 when L1 spans less than l1 with gaps at least l2
/// and L2 spans less than l2. Result has |L1||L2| elements inside an
/// interval of size l1 + l2.
LengthSet spread_close_product(const LengthSet& l1, const LengthSet& l2, std::uint64_t len1,
                               std::uint64_t len2);

/// Greedy thinning: keep the smallest, then repeatedly the first element
/// at least `target` above the last kept one.
LengthSet thin_to_spacing(const LengthSet& l, std::uint64_t target);

/// Every witness wrapped as before + w + after; lengths shift accordingly.
LengthSet wrapped(const LengthSet& l, const RouteRef& before, const RouteRef& after);

}  // namespace cyclespec
