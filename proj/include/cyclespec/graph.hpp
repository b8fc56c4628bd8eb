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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cyclespec {

/// External vertex identifier as it appears in instance files.
using Vertex = std::uint64_t;
/// Index of a vertex along the Hamilton cycle.
using Pos = std::uint32_t;

/// Chord stored by cycle positions, `a < b`.
struct Chord {
  Pos a = 0;
  Pos b = 0;
  friend bool operator==(const Chord&, const Chord&) = default;
  friend auto operator<=>(const Chord&, const Chord&) = default;
};

class InstanceError : public std::runtime_error {
 public:
  explicit InstanceError(const std::string& what, std::size_t line = 0,
                         std::size_t column = 0);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Raised by validate_instance; carries every violated invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// A graph given as a Hamilton cycle (vertex order) plus chords.
///
/// The cycle direction is the order of `order()`; every other notion of
/// direction in the library is relative to it. Immutable after
/// construction.
class HamGraph {
 public:
  /// Builds and structurally checks an instance. Throws InstanceError on a
  /// duplicate vertex, an unknown chord endpoint, a self-loop, a chord
  /// that duplicates a cycle edge, or a repeated chord.
  static HamGraph from_order(std::vector<Vertex> order,
                             const std::vector<std::pair<Vertex, Vertex>>& chords);

  /// Cycle 0..n-1 with chords given in positions (ids equal positions).
  static HamGraph from_positions(std::size_t n, const std::vector<Chord>& chords);

  std::size_t n() const { return order_.size(); }
  const std::vector<Vertex>& order() const { return order_; }
  Vertex id(Pos p) const { return order_[p]; }
  Pos pos(Vertex v) const;
  bool contains(Vertex v) const { return position_.count(v) != 0; }

  /// Sorted by (a, b).
  const std::vector<Chord>& chords() const { return chords_; }
  std::span<const Pos> chord_neighbors(Pos p) const {
    return {adj_.data() + adj_start_[p], adj_.data() + adj_start_[p + 1]};
  }
  std::size_t degree(Pos p) const { return 2 + chord_neighbors(p).size(); }
  bool has_chord(Pos u, Pos v) const;
  bool cycle_adjacent(Pos u, Pos v) const;

  Pos forward(Pos p) const { return p + 1 == n() ? 0 : p + 1; }
  Pos backward(Pos p) const { return p == 0 ? static_cast<Pos>(n() - 1) : p - 1; }

  friend bool operator==(const HamGraph& a, const HamGraph& b) {
    return a.order_ == b.order_ && a.chords_ == b.chords_;
  }

 private:
  HamGraph() = default;
  void build_adjacency();

  std::vector<Vertex> order_;
  std::unordered_map<Vertex, Pos> position_;
  std::vector<Chord> chords_;
  std::vector<std::size_t> adj_start_;
  std::vector<Pos> adj_;
};

/// Parses the text instance format:
///   line 1 "n m", line 2 the n ids of the Hamilton order, then m "u v" chords.
/// Lines starting with '#' are comments.
HamGraph load_instance(std::istream& in);
HamGraph parse_instance(std::string_view text);

/// Byte-stable serialization: chords sorted by (min id, max id), single spaces.
std::string serialize_instance(const HamGraph& g);

/// Throws ValidationError listing every violation. With `theorem_grade`
/// every vertex must have degree at least 3.
void validate_instance(const HamGraph& g, bool theorem_grade);

/// Length of the shorter cycle arc between the endpoints of a chord.
std::size_t cycle_chord_length(const HamGraph& g, Vertex u, Vertex v);
/// Same, by positions, without membership check.
std::size_t cycle_span(std::size_t n, Pos a, Pos b);

}  // namespace cyclespec
