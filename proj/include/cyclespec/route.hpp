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
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cyclespec/graph.hpp"

namespace cyclespec {

enum class Direction : std::int8_t { Forward = 1, Backward = -1 };

/// Walk along the Hamilton cycle from `start` to `end`. An arc whose
/// endpoints coincide is the full cycle; zero-length arcs are never emitted.
struct Arc {
  Pos start = 0;
  Pos end = 0;
  Direction dir = Direction::Forward;
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// A single chord traversed from `from` to `to` (positions).
struct ChordStep {
  Pos from = 0;
  Pos to = 0;
  friend bool operator==(const ChordStep&, const ChordStep&) = default;
};

using Step = std::variant<Arc, ChordStep>;

/// Compressed path or cycle: arcs of H alternating with chords.
struct RouteDescriptor {
  std::vector<Step> steps;
  bool closed = false;
  friend bool operator==(const RouteDescriptor&, const RouteDescriptor&) = default;
};

struct Witness {
  std::uint64_t length = 0;
  RouteDescriptor route;
};

class RouteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t arc_length(std::size_t n, const Arc& a);
Pos step_start(const Step& s);
Pos step_end(const Step& s);
Step reversed(const Step& s);

/// The trusted checker. Expands `r`, verifies that consecutive steps
/// connect, that every chord step is a chord of `g`, that no vertex repeats
/// (a closed route may return to its start once) and that `closed` matches
/// the geometry. Returns the exact edge count.
Witness realize_route(const HamGraph& g, const RouteDescriptor& r);

/// Reusable checker for bulk verification; avoids an O(n) allocation per
/// route.
class RouteChecker {
 public:
  explicit RouteChecker(const HamGraph& g);
  Witness realize(const RouteDescriptor& r);
  /// Vertices of the last realized route in visiting order.
  const std::vector<Pos>& last_vertices() const { return visited_order_; }

 private:
  const HamGraph& g_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<Pos> visited_order_;
  Pos origin_ = 0;
};

/// Expanded vertex sequence of a route (first vertex repeated at the end if
/// closed). Performs no validation.
std::vector<Pos> route_vertices(std::size_t n, const RouteDescriptor& r);

/// Text form: "a:<start>:<end>:<+|->" for arcs, "c:<from>:<to>" for chords,
/// whitespace separated.
std::string format_steps(const std::vector<Step>& steps);
std::vector<Step> parse_steps(std::string_view text);

class RouteNode;
using RouteRef = std::shared_ptr<const RouteNode>;

/// Lazily composed route: either a leaf holding steps or a concatenation of
/// parts, optionally traversed backwards. Lengths are cached so composing
/// long families never expands them.
class RouteNode {
 public:
  static RouteRef leaf(std::size_t n, std::vector<Step> steps);
  static RouteRef concat(std::vector<RouteRef> parts);
  static RouteRef reverse(RouteRef r);
  /// Empty path (single vertex).
  static RouteRef empty();

  std::uint64_t length() const { return length_; }
  bool is_leaf() const { return parts_.empty(); }
  bool is_reversed() const { return reversed_; }
  const std::vector<RouteRef>& parts() const { return parts_; }
  const std::vector<Step>& steps() const { return steps_; }

 private:
  std::vector<Step> steps_;
  std::vector<RouteRef> parts_;
  bool reversed_ = false;
  std::uint64_t length_ = 0;
};

/// Flattens a node into a step sequence, merging touching arcs that run in
/// the same direction. Iterative, so deep concatenation chains are fine.
std::vector<Step> expand(const RouteRef& r);

RouteDescriptor to_descriptor(const RouteRef& r, bool closed);

}  // namespace cyclespec
