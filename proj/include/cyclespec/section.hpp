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
#include <functional>
#include <stdexcept>
#include <vector>

#include "cyclespec/graph.hpp"
#include "cyclespec/route.hpp"

namespace cyclespec {

class SectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Chord of a section pair, by side indices (0 = top).
struct PairChord {
  std::uint32_t xi = 0;
  std::uint32_t yi = 0;
  friend bool operator==(const PairChord&, const PairChord&) = default;
  friend auto operator<=>(const PairChord&, const PairChord&) = default;
};

enum class Side : std::uint8_t { X, Y };

/// Two vertex-disjoint oriented paths X and Y with the chords between them.
///
/// Sides are stored as host-graph positions, index 0 being the top. Any
/// two consecutive entries of a side are adjacent in the host graph (by a
/// cycle edge or, after rerouting, by a chord), so every path built inside
/// the pair lifts directly to a host route; nested subpairs keep lifting
/// in one pass because they copy the host positions.
struct SectionPair {
  std::size_t host_n = 0;
  std::vector<Pos> x;
  std::vector<Pos> y;
  /// Sorted by (xi, yi), no duplicates.
  std::vector<PairChord> chords;

  std::size_t m() const { return chords.size(); }
  bool contains(const PairChord& c) const;
};

/// A contiguous stretch of a host cycle, `count` vertices from `start`.
struct ArcSpec {
  Pos start = 0;
  std::uint32_t count = 0;
  Direction dir = Direction::Forward;
};

using ChordFilter = std::function<bool(Pos x, Pos y)>;

/// Chords of `g` with one endpoint on each arc that pass `filter`.
/// Throws SectionError if the arcs overlap.
SectionPair make_section_pair(const HamGraph& g, ArcSpec x_arc, ArcSpec y_arc,
                              const ChordFilter& filter = {});

/// Index distance of the chord's endpoints from the tops.
std::uint64_t pair_chord_length(const SectionPair& sp, const PairChord& c);

enum class ChordRelation : std::uint8_t { Parallel, Interlacing, SharesVertex };

ChordRelation classify_chords(const PairChord& c1, const PairChord& c2);
inline ChordRelation classify_chords(const SectionPair&, const PairChord& c1,
                                     const PairChord& c2) {
  return classify_chords(c1, c2);
}

/// Path along one side between two indices (either order).
RouteRef side_run(const SectionPair& sp, Side side, std::uint32_t from, std::uint32_t to);
/// The chord as a one-step route, X endpoint first.
RouteRef chord_hop(const SectionPair& sp, const PairChord& c);
/// X[x^t, x], (x, y), Y[y, y^t].
RouteRef trivial_path(const SectionPair& sp, const PairChord& c);

/// Inclusive index range on one side.
struct IndexRange {
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;
  std::uint32_t size() const { return hi - lo + 1; }
  bool contains(std::uint32_t i) const { return i >= lo && i <= hi; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Restriction to the given ranges with chords re-indexed; `flip_y`
/// reverses Y so its new top is the old bottom of the range.
SectionPair subpair(const SectionPair& sp, IndexRange xr, IndexRange yr, bool flip_y = false);
/// Reverses the chosen sides.
SectionPair flipped(const SectionPair& sp, bool flip_x, bool flip_y);

/// Chord priority: returns true if `a` should be kept over `b`.
using ChordPriority = std::function<bool(const PairChord& a, const PairChord& b)>;

/// Keeps at most one chord per X vertex. Default priority: smallest
/// pair_chord_length, then (xi, yi).
SectionPair prune_matching_x(const SectionPair& sp, const ChordPriority& priority = {});
bool is_x_matching(const SectionPair& sp);

enum class CollectionMode : std::uint8_t { Parallel, Interlacing };

struct SubPair {
  IndexRange x;
  IndexRange y;
};

/// Disjoint subsection pairs of a parent, listed bottom-to-top along X.
struct PairCollection {
  std::vector<SubPair> pairs;
  CollectionMode mode = CollectionMode::Parallel;
};

/// Throws SectionError unless ranges are in bounds, disjoint, ordered
/// bottom-to-top in X, and ordered in Y according to `mode`.
void check_collection(const SectionPair& sp, const PairCollection& coll);

/// Number of chords inside a subsection pair.
std::size_t count_chords(const SectionPair& sp, const SubPair& p);

/// Chords of `sp` with X endpoint in [xlo, xhi] (chords are sorted by xi).
std::pair<std::size_t, std::size_t> chords_in_x(const SectionPair& sp, std::uint32_t xlo,
                                                std::uint32_t xhi);

}  // namespace cyclespec
