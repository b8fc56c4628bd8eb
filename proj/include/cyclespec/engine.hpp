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
#include <utility>
#include <vector>

#include "cyclespec/config.hpp"
#include "cyclespec/graph.hpp"
#include "cyclespec/path_forge.hpp"
#include "cyclespec/section.hpp"
#include "cyclespec/sumset.hpp"

namespace cyclespec {

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InstanceTooSmall : public EngineError {
 public:
  using EngineError::EngineError;
};

struct ScaleSelection {
  std::size_t n = 0;
  /// Partner position of the chosen chord c(v), per position.
  std::vector<Pos> chosen;
  std::uint64_t ell = 0;
  /// Chosen lengths of the heavy class lie in [ell, heavy_hi].
  std::uint64_t heavy_hi = 0;
  std::vector<Pos> heavy;
  Pos offset = 0;
  /// Number of blocks of 4*ell vertices.
  std::size_t s = 0;
  /// Good vertices per block.
  std::vector<std::vector<Pos>> good;
  std::size_t good_total = 0;
  /// Blocks with at least ell / (4 log2 n) good vertices.
  std::vector<std::size_t> I;

  Pos block_start(std::size_t j) const {
    return static_cast<Pos>((offset + 4 * ell * j) % n);
  }
};

/// Good-vertex count of every offset, for checking the selection.
std::vector<std::size_t> good_counts_by_offset(const std::vector<Pos>& chosen, std::uint64_t ell);

ScaleSelection select_scale_and_blocks(const HamGraph& g, const EngineConfig& cfg);

struct Rerouted {
  SectionPair sp;
  PairCollection coll;
};

/// Parallel input is returned unchanged. Interlacing input (bottom-to-top,
/// at least 3 pairs) is rerouted along one chord of each of the two lowest
/// pairs; the remaining pairs come back as a parallel collection.
Rerouted reroute_if_interlacing(const SectionPair& sp, const PairCollection& coll);

struct Dichotomy {
  bool spaced = false;
  /// Spaced: trivial paths, pairwise at least `width` apart.
  LengthSet lengths;
  /// Dense: pair-length interval holding `count` chords.
  IndexRange interval;
  std::size_t count = 0;
  std::uint64_t width = 0;
};

/// Minimal interval cover of the chord lengths of `sub` with intervals of
/// size k^{i eps}.
Dichotomy dichotomy_step(const SectionPair& sub, std::size_t k, std::size_t i, double eps);

/// Paths from the top of X to the top of Y. `coll` is Parallel, listed
/// bottom-to-top; `trace` collects one line per decision.
PathFamily many_lengths_over_parallel(const SectionPair& sp, const PairCollection& coll,
                                      const EngineConfig& cfg,
                                      std::vector<std::string>* trace = nullptr);

struct SpectrumReport {
  std::size_t n = 0;
  /// Closed-route witnesses.
  LengthSet lengths;
  std::vector<std::pair<std::string, std::string>> stats;
  EngineConfig config;
};

SpectrumReport full_spectrum(const HamGraph& g, const EngineConfig& cfg);

}  // namespace cyclespec
