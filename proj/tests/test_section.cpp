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


#include <random>
#include <set>

#include "cyclespec/section.hpp"
#include "doctest.h"

using namespace cyclespec;

namespace {

// Host cycle x-block, separator, y-block, separator; chords sampled
// between the blocks. Y runs backwards so its top is the last position.
struct RandomPair {
  HamGraph g;
  SectionPair sp;
};

RandomPair random_pair(std::mt19937_64& rng, std::uint32_t nx, std::uint32_t ny, double p) {
  const std::size_t n = nx + ny + 2;
  std::vector<Chord> chords;
  std::bernoulli_distribution coin(p);
  for (Pos a = 0; a < nx; ++a) {
    for (Pos b = nx + 1; b < nx + 1 + ny; ++b) {
      if (coin(rng)) chords.push_back({a, b});
    }
  }
  auto g = HamGraph::from_positions(n, chords);
  auto sp = make_section_pair(g, {0, nx, Direction::Forward},
                              {static_cast<Pos>(nx + ny), ny, Direction::Backward});
  return {std::move(g), std::move(sp)};
}

}  // namespace

TEST_CASE("make_section_pair splits a block at its midpoint") {
  const std::uint32_t l = 5;
  std::vector<Chord> chords;
  for (Pos i = 0; i < 2 * l; ++i) chords.push_back({i, static_cast<Pos>(4 * l - 1 - i)});
  chords.erase(chords.begin() + (2 * l - 1));  // (2l-1, 2l) is a cycle edge
  chords.push_back({2, 30});
  auto g = HamGraph::from_positions(40, chords);
  auto sp = make_section_pair(g, {0, 2 * l, Direction::Forward},
                              {4 * l - 1, 2 * l, Direction::Backward});
  CHECK(sp.x.size() == 2 * l);
  CHECK(sp.y.size() == 2 * l);
  CHECK(sp.m() == 2 * l - 1);
  for (const auto& c : sp.chords) CHECK(c.xi == c.yi);
  CHECK_THROWS_AS(make_section_pair(g, {0, 5, Direction::Forward}, {4, 5, Direction::Forward}),
                  SectionError);
  auto filtered = make_section_pair(g, {0, 2 * l, Direction::Forward},
                                    {4 * l - 1, 2 * l, Direction::Backward},
                                    [](Pos x, Pos) { return x % 2 == 0; });
  CHECK(filtered.m() == l);
}

TEST_CASE("pair_chord_length and trivial_path") {
  std::mt19937_64 rng(5);
  auto [g, sp] = random_pair(rng, 6, 6, 0.5);
  sp.chords = {{0, 0}, {2, 3}};
  CHECK(pair_chord_length(sp, {2, 3}) == 5);
  CHECK(pair_chord_length(sp, {0, 0}) == 0);
  CHECK_THROWS_AS(pair_chord_length(sp, {1, 1}), SectionError);

  for (int rep = 0; rep < 100; ++rep) {
    auto rp = random_pair(rng, 1 + rng() % 12, 1 + rng() % 12, 0.3);
    for (const auto& c : rp.sp.chords) {
      auto route = trivial_path(rp.sp, c);
      CHECK(route->length() == pair_chord_length(rp.sp, c) + 1);
      auto w = realize_route(rp.g, to_descriptor(route, false));
      CHECK(w.length == route->length());
    }
  }
}

TEST_CASE("trivial path of tops is the chord alone") {
  auto g = HamGraph::from_positions(8, {{0, 5}});
  auto sp = make_section_pair(g, {0, 3, Direction::Forward}, {5, 2, Direction::Forward});
  REQUIRE(sp.chords == std::vector<PairChord>{{0, 0}});
  CHECK(trivial_path(sp, {0, 0})->length() == 1);
}

TEST_CASE("classify_chords") {
  CHECK(classify_chords({1, 1}, {2, 2}) == ChordRelation::Parallel);
  CHECK(classify_chords({1, 2}, {2, 1}) == ChordRelation::Interlacing);
  CHECK(classify_chords({1, 1}, {2, 1}) == ChordRelation::SharesVertex);
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 500; ++rep) {
    PairChord a{static_cast<std::uint32_t>(rng() % 6), static_cast<std::uint32_t>(rng() % 6)};
    PairChord b{static_cast<std::uint32_t>(rng() % 6), static_cast<std::uint32_t>(rng() % 6)};
    if (a == b) continue;
    CHECK(classify_chords(a, b) == classify_chords(b, a));
  }
}

TEST_CASE("subpair identity, involution and flip swaps relations") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 50; ++rep) {
    auto [g, sp] = random_pair(rng, 2 + rng() % 10, 2 + rng() % 10, 0.4);
    IndexRange xr{0, static_cast<std::uint32_t>(sp.x.size() - 1)};
    IndexRange yr{0, static_cast<std::uint32_t>(sp.y.size() - 1)};
    auto same = subpair(sp, xr, yr, false);
    CHECK(same.x == sp.x);
    CHECK(same.y == sp.y);
    CHECK(same.chords == sp.chords);
    auto f = subpair(sp, xr, yr, true);
    auto ff = subpair(f, xr, yr, true);
    CHECK(ff.y == sp.y);
    CHECK(ff.chords == sp.chords);
    CHECK(f.chords.size() == sp.chords.size());
    for (const auto& a : sp.chords) {
      for (const auto& b : sp.chords) {
        if (a == b) continue;
        PairChord fa{a.xi, yr.hi - a.yi}, fb{b.xi, yr.hi - b.yi};
        auto before = classify_chords(a, b);
        auto after = classify_chords(fa, fb);
        if (before == ChordRelation::SharesVertex) {
          CHECK(after == ChordRelation::SharesVertex);
        } else {
          CHECK(after != before);
          CHECK(after != ChordRelation::SharesVertex);
        }
      }
    }
    CHECK(flipped(sp, false, true).chords == f.chords);
    CHECK(flipped(flipped(sp, true, true), true, true).chords == sp.chords);
    CHECK_THROWS_AS(subpair(sp, {3, 2}, yr), SectionError);
    CHECK_THROWS_AS(subpair(sp, xr, {0, static_cast<std::uint32_t>(sp.y.size())}), SectionError);
  }
}

TEST_CASE("subpair preserves chord-length offsets") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    auto [g, sp] = random_pair(rng, 12, 12, 0.3);
    std::uint32_t a = rng() % 12, b = rng() % 12, c = rng() % 12, d = rng() % 12;
    IndexRange xr{std::min(a, b), std::max(a, b)}, yr{std::min(c, d), std::max(c, d)};
    for (bool flip : {false, true}) {
      auto sub = subpair(sp, xr, yr, flip);
      for (const auto& ch : sub.chords) {
        std::uint32_t pyi = flip ? yr.hi - ch.yi : ch.yi + yr.lo;
        PairChord parent{ch.xi + xr.lo, pyi};
        REQUIRE(sp.contains(parent));
        if (!flip) {
          CHECK(pair_chord_length(sub, ch) + xr.lo + yr.lo == pair_chord_length(sp, parent));
        } else {
          CHECK(pair_chord_length(sub, ch) + xr.lo - yr.hi + 2 * pyi ==
                pair_chord_length(sp, parent));
        }
        // Nested routes lift straight to the host.
        auto w = realize_route(g, to_descriptor(trivial_path(sub, ch), false));
        CHECK(w.length == pair_chord_length(sub, ch) + 1);
      }
    }
  }
}

TEST_CASE("prune_matching_x") {
  SectionPair sp;
  sp.host_n = 20;
  for (Pos i = 0; i < 5; ++i) sp.x.push_back(i), sp.y.push_back(19 - i);
  sp.chords = {{1, 0}, {1, 2}, {1, 4}, {2, 3}, {3, 1}};
  auto p = prune_matching_x(sp);
  CHECK(is_x_matching(p));
  CHECK(p.chords == std::vector<PairChord>{{1, 0}, {2, 3}, {3, 1}});
  CHECK(prune_matching_x(p).chords == p.chords);
  auto far = prune_matching_x(sp, [](const PairChord& a, const PairChord& b) { return a.yi > b.yi; });
  CHECK(far.chords == std::vector<PairChord>{{1, 4}, {2, 3}, {3, 1}});
}

TEST_CASE("check_collection order rules") {
  SectionPair sp;
  sp.host_n = 40;
  for (Pos i = 0; i < 10; ++i) sp.x.push_back(i), sp.y.push_back(39 - i);
  PairCollection par{{{{6, 9}, {7, 9}}, {{2, 4}, {3, 5}}, {{0, 1}, {0, 1}}}, CollectionMode::Parallel};
  CHECK_NOTHROW(check_collection(sp, par));
  PairCollection inter{{{{6, 9}, {0, 1}}, {{2, 4}, {3, 5}}, {{0, 1}, {7, 9}}},
                       CollectionMode::Interlacing};
  CHECK_NOTHROW(check_collection(sp, inter));
  par.mode = CollectionMode::Interlacing;
  CHECK_THROWS_AS(check_collection(sp, par), SectionError);
  PairCollection overlap{{{{3, 9}, {7, 9}}, {{2, 4}, {3, 5}}}, CollectionMode::Parallel};
  CHECK_THROWS_AS(check_collection(sp, overlap), SectionError);
  PairCollection oob{{{{3, 10}, {7, 9}}}, CollectionMode::Parallel};
  CHECK_THROWS_AS(check_collection(sp, oob), SectionError);
}

TEST_CASE("collection mode implies cross relations") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 30; ++rep) {
    auto [g, sp] = random_pair(rng, 12, 12, 0.5);
    for (auto mode : {CollectionMode::Parallel, CollectionMode::Interlacing}) {
      PairCollection coll{{{{8, 11}, {}}, {{4, 6}, {}}, {{0, 2}, {}}}, mode};
      if (mode == CollectionMode::Parallel) {
        coll.pairs[0].y = {9, 11}, coll.pairs[1].y = {5, 7}, coll.pairs[2].y = {0, 3};
      } else {
        coll.pairs[0].y = {0, 3}, coll.pairs[1].y = {5, 7}, coll.pairs[2].y = {9, 11};
      }
      check_collection(sp, coll);
      auto want = mode == CollectionMode::Parallel ? ChordRelation::Parallel
                                                   : ChordRelation::Interlacing;
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
          for (const auto& a : sp.chords) {
            if (!coll.pairs[i].x.contains(a.xi) || !coll.pairs[i].y.contains(a.yi)) continue;
            for (const auto& b : sp.chords) {
              if (!coll.pairs[j].x.contains(b.xi) || !coll.pairs[j].y.contains(b.yi)) continue;
              CHECK(classify_chords(a, b) == want);
            }
          }
        }
      }
    }
  }
}
