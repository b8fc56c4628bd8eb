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

#include <chrono>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <variant>

#include "cyclespec/graph.hpp"
#include "cyclespec/section.hpp"

namespace cyclespec {

/// Raised when an exhaustive search would exceed its limits.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  std::size_t max_vertices = 18;
  std::uint64_t max_steps = 2'000'000'000;
  std::chrono::milliseconds time_budget{60'000};
};

/// Exact set of simple cycle lengths.
std::set<std::uint64_t> oracle_cycle_spectrum(const HamGraph& g, const OracleLimits& lim = {});

enum class Endpoint : std::uint8_t { XTop, XBottom, YTop, YBottom };

/// Exact set of simple path lengths between two pair ends, using side
/// edges and the pair's chords only. With `bottoms_joined` the two bottom
/// ends are also joined through one extra vertex.
std::set<std::uint64_t> oracle_section_paths(const SectionPair& sp, Endpoint from, Endpoint to,
                                             const OracleLimits& lim = {},
                                             bool bottoms_joined = false);

struct ChainExtremal {
  std::size_t n = 0;
  std::size_t k = 0;
};
struct RandomMinDeg3 {
  std::size_t n = 0;
  std::size_t extra_chords = 0;
};
struct RandomRegularHam {
  std::size_t n = 0;
  std::size_t k = 0;
};

struct GenSpec {
  std::variant<ChainExtremal, RandomMinDeg3, RandomRegularHam> family;
  std::uint64_t seed = 0;
};

/// n/(2k) copies of K_{k,k} minus an edge, joined in a cycle.
HamGraph gen_chain_extremal(std::size_t n, std::size_t k);
/// {even in [4,2k]} and {even in [2n/k, n]}.
std::set<std::uint64_t> chain_spectrum(std::size_t n, std::size_t k);
/// n/2 * (k-2)/k + k; counts an overlap of the two ranges twice.
std::uint64_t chain_spectrum_formula(std::size_t n, std::size_t k);

/// Random families only (ChainExtremal is forwarded to gen_chain_extremal).
HamGraph gen_random_ham3(const GenSpec& spec);

/// Uniform draw in [0, bound) from a 64-bit Mersenne twister, by
/// rejection, so streams agree across standard libraries.
class StableRng {
 public:
  explicit StableRng(std::uint64_t seed);
  std::uint64_t next();
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 eng_;
};

}  // namespace cyclespec
