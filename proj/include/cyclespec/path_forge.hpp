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

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclespec/decomposition.hpp"
#include "cyclespec/section.hpp"
#include "cyclespec/sumset.hpp"

namespace cyclespec {

class ForgeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which pair of ends the paths join: (x^t, y^t) or (x^b, y^b).
enum class Anchor : std::uint8_t { Top, Bottom };

struct PathFamily {
  /// Routes run from the X end to the Y end.
  LengthSet paths;
  Anchor anchor = Anchor::Top;
  /// Gap parameter D of the construction (0 when not applicable).
  std::uint64_t D = 0;
  /// Certified lower bound on max - min.
  std::uint64_t spread_floor = 0;
  std::string diagnostic;
};

struct ForgeParams {
  double c_distant = 1.0 / 8;
  double theta_lo = 1.0 / 4;
  double theta_hi = 7.0;
  double c_close = 1.0 / 64;
};

/// The four candidate lengths a1+a2, a1+b2+2, a2+b1+2, b1+b2+2.
std::array<std::uint64_t, 4> ladder_candidates(std::uint64_t a1, std::uint64_t b1,
                                               std::uint64_t a2, std::uint64_t b2);

/// `chords`: pairwise interlacing, lengths inside an interval of size D
/// (0 is read as 1). Uses the first 3*floor(|chords|/3) in x-order.
PathFamily rung_ladder_paths(const SectionPair& sp, const std::vector<PairChord>& chords,
                             std::uint64_t D);

/// Two routes inside one subsection pair, both from its X end to its Y end.
struct Gadget {
  RouteRef blue;
  RouteRef red;
  std::uint64_t d = 0;
};

/// `coll` is an Interlacing collection (bottom-to-top in X) with t odd;
/// gadgets[i] belongs to coll.pairs[i]. Counting pairs from the top, odd
/// ones join tops and even ones join bottoms.
PathFamily stitched_paths(const SectionPair& sp, const PairCollection& coll,
                          const std::vector<Gadget>& gadgets, std::uint64_t D);

struct DistantPair {
  RouteRef shorter;
  RouteRef longer;
  std::uint64_t gap() const { return longer->length() - shorter->length(); }
};

DistantPair distant_paths(const SectionPair& sp, Anchor anchor = Anchor::Top);

/// `J` = [jlo, jhi] of pair-lengths.
PathFamily close_length_paths(const SectionPair& sp, const std::vector<PairChord>& E,
                              IndexRange J, const ForgeParams& params = {});

/// Vertices (host positions) of a route, in order.
std::vector<Pos> route_positions(std::size_t host_n, const RouteRef& r);

}  // namespace cyclespec
