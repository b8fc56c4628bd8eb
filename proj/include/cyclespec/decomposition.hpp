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
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclespec/section.hpp"

namespace cyclespec {

class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// initial_split precondition failure: a vertex carries too many chords.
class HeavyVertexError : public DecompositionError {
 public:
  HeavyVertexError(Side side, std::uint32_t index, std::size_t degree, double limit);
  Side side() const { return side_; }
  std::uint32_t index() const { return index_; }
  std::size_t degree() const { return degree_; }

 private:
  Side side_;
  std::uint32_t index_;
  std::size_t degree_;
};

enum class Monotone : std::uint8_t { AllParallel, AllInterlacing };

struct MonotoneFamily {
  std::vector<PairChord> chords;  // sorted by xi
  Monotone relation = Monotone::AllParallel;
};

/// Longest increasing (parallel) or decreasing (interlacing) y-sequence in
/// x-order; returns k chords, parallel preferred.
MonotoneFamily monotone_chord_family(const std::vector<PairChord>& chords, std::size_t k);

/// Longest chain of `chords` (any order) that is monotone in the given
/// sense; chords must be vertex-disjoint.
std::vector<PairChord> longest_monotone(std::vector<PairChord> chords, Monotone relation);

PairCollection initial_split(const SectionPair& sp, std::size_t k, double c_split = 1.0 / 400);

enum class SplitCase : std::uint8_t { HighDegreeVertex, InterlacerChord };

struct SplitEvidence {
  // HighDegreeVertex: the vertex. InterlacerChord: the chord.
  Side side = Side::X;
  std::uint32_t vertex = 0;
  PairChord chord;
  /// Chords at the vertex, or chords the evidence chord interlaces.
  std::size_t count = 0;
};

struct SplitOutcome {
  PairCollection collection;  // Parallel, bottom-to-top
  SplitCase kase = SplitCase::HighDegreeVertex;
  std::vector<SplitEvidence> evidence;
  std::vector<std::string> depth_trace;
  std::vector<std::size_t> chord_counts;
};

/// Divisor 6 log2 m of the splitting thresholds, clamped to at least 1.
double splitting_divisor(std::size_t m);

SplitOutcome splitting_process(const SectionPair& sp);

/// For each chord of `chords` (sorted), the number of other chords in the
/// list it interlaces.
std::vector<std::size_t> interlace_counts(const std::vector<PairChord>& chords);

struct ExtractedPair {
  PairChord upper;  // x above
  PairChord lower;
  std::uint32_t d = 0;  // x-index distance
};

struct Extraction {
  bool residue = false;
  MonotoneFamily family;  // residue branch
  std::vector<ExtractedPair> pairs;
};

Extraction interlacing_pair_extraction(const SectionPair& sp);

}  // namespace cyclespec
