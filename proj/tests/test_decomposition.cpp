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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "cyclespec/decomposition.hpp"
#include "doctest.h"

using namespace cyclespec;

namespace {

SectionPair bare_pair(std::uint32_t nx, std::uint32_t ny, std::vector<PairChord> chords) {
  SectionPair sp;
  sp.host_n = nx + ny + 2;
  for (Pos i = 0; i < nx; ++i) sp.x.push_back(i);
  for (Pos i = 0; i < ny; ++i) sp.y.push_back(static_cast<Pos>(nx + ny - i));
  std::sort(chords.begin(), chords.end());
  sp.chords = std::move(chords);
  return sp;
}

std::vector<PairChord> random_matching(std::mt19937_64& rng, std::uint32_t nx, std::uint32_t ny,
                                       std::size_t m) {
  std::vector<std::uint32_t> xs(nx), ys(ny);
  std::iota(xs.begin(), xs.end(), 0);
  std::iota(ys.begin(), ys.end(), 0);
  std::shuffle(xs.begin(), xs.end(), rng);
  std::shuffle(ys.begin(), ys.end(), rng);
  std::vector<PairChord> out;
  for (std::size_t i = 0; i < m && i < nx && i < ny; ++i) out.push_back({xs[i], ys[i]});
  std::sort(out.begin(), out.end());
  return out;
}

bool all_relation(const std::vector<PairChord>& cs, ChordRelation rel) {
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      if (classify_chords(cs[i], cs[j]) != rel) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("monotone_chord_family") {
  std::vector<PairChord> perm{{1, 2}, {2, 4}, {3, 1}, {4, 5}, {5, 3}};
  auto f = monotone_chord_family(perm, 3);
  CHECK(f.relation == Monotone::AllParallel);
  CHECK(f.chords == std::vector<PairChord>{{1, 2}, {2, 4}, {4, 5}});
  // Brute force: some parallel triple exists, and ours is one.
  CHECK(all_relation(f.chords, ChordRelation::Parallel));

  std::vector<PairChord> id, rev;
  for (std::uint32_t i = 0; i < 9; ++i) id.push_back({i, i}), rev.push_back({i, 8 - i});
  auto fi = monotone_chord_family(id, 9);
  CHECK(fi.relation == Monotone::AllParallel);
  CHECK(fi.chords == id);
  auto fr = monotone_chord_family(rev, 9);
  CHECK(fr.relation == Monotone::AllInterlacing);
  CHECK(fr.chords == rev);

  CHECK_THROWS_AS(monotone_chord_family({{0, 0}, {1, 1}}, 3), DecompositionError);
  CHECK_THROWS_AS(monotone_chord_family({{0, 0}, {1, 0}, {2, 2}, {3, 3}, {4, 4}}, 3),
                  DecompositionError);

  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t k = 2 + rng() % 5;
    auto cs = random_matching(rng, 40, 40, (k - 1) * (k - 1) + 1 + rng() % 5);
    auto fam = monotone_chord_family(cs, k);
    CHECK(fam.chords.size() == k);
    CHECK(all_relation(fam.chords, fam.relation == Monotone::AllParallel
                                       ? ChordRelation::Parallel
                                       : ChordRelation::Interlacing));
  }
}

TEST_CASE("initial_split on the 400-grid") {
  std::vector<PairChord> diag, anti;
  for (std::uint32_t i = 0; i < 400; ++i) diag.push_back({i, i}), anti.push_back({i, 399 - i});
  auto sp = bare_pair(400, 400, diag);
  auto coll = initial_split(sp, 2);
  CHECK(coll.mode == CollectionMode::Parallel);
  REQUIRE(coll.pairs.size() == 2);
  for (const auto& p : coll.pairs) CHECK(count_chords(sp, p) >= 100);

  auto sp2 = bare_pair(400, 400, anti);
  auto coll2 = initial_split(sp2, 2);
  CHECK(coll2.mode == CollectionMode::Interlacing);
  REQUIRE(coll2.pairs.size() == 2);
  for (const auto& p : coll2.pairs) CHECK(count_chords(sp2, p) >= 100);

  auto star = diag;
  for (std::uint32_t i = 0; i < 30; ++i) {
    if (i != 7) star.push_back({i, 7});
  }
  std::sort(star.begin(), star.end());
  try {
    initial_split(bare_pair(400, 400, star), 2);
    FAIL("expected heavy vertex");
  } catch (const HeavyVertexError& e) {
    CHECK(e.side() == Side::Y);
    CHECK(e.index() == 7);
  }
}

TEST_CASE("initial_split collections verified post hoc") {
  std::mt19937_64 rng(19);
  int produced = 0;
  for (int rep = 0; rep < 60; ++rep) {
    std::uint32_t n = 300 + rng() % 300;
    auto cs = random_matching(rng, n, n, n);
    auto sp = bare_pair(n, n, cs);
    std::size_t k = 2 + rng() % 2;
    PairCollection coll;
    try {
      coll = initial_split(sp, k);
    } catch (const HeavyVertexError&) {
      continue;
    }
    ++produced;
    REQUIRE(coll.pairs.size() == k);
    CHECK_NOTHROW(check_collection(sp, coll));
    auto want = coll.mode == CollectionMode::Parallel ? ChordRelation::Parallel
                                                      : ChordRelation::Interlacing;
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(static_cast<double>(count_chords(sp, coll.pairs[i])) >=
            static_cast<double>(sp.m()) / 400 / std::pow(double(k), 4));
      for (std::size_t j = i + 1; j < k; ++j) {
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
  CHECK(produced > 30);
}

TEST_CASE("splitting_process examples") {
  std::vector<PairChord> star;
  for (std::uint32_t i = 0; i < 40; ++i) star.push_back({i, 5});
  auto s = splitting_process(bare_pair(40, 10, star));
  CHECK(s.kase == SplitCase::HighDegreeVertex);
  REQUIRE(s.collection.pairs.size() == 1);
  CHECK(s.evidence[0].side == Side::Y);
  CHECK(s.evidence[0].vertex == 5);
  CHECK(s.evidence[0].count == 40);

  std::vector<PairChord> crossed, par;
  for (std::uint32_t i = 0; i < 64; ++i) crossed.push_back({i, 63 - i}), par.push_back({i, i});
  auto c = splitting_process(bare_pair(64, 64, crossed));
  CHECK(c.kase == SplitCase::InterlacerChord);
  REQUIRE(c.collection.pairs.size() == 1);
  CHECK(c.evidence[0].count == 63);

  auto p = splitting_process(bare_pair(64, 64, par));
  CHECK(p.kase == SplitCase::HighDegreeVertex);
  CHECK(p.collection.pairs.size() >= 2);
  std::size_t total = 0;
  for (auto e : p.chord_counts) total += e;
  CHECK(total * 24 >= 64);
}

TEST_CASE("splitting_process guarantees on random pairs") {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 150; ++rep) {
    std::uint32_t nx = 20 + rng() % 200, ny = 20 + rng() % 200;
    std::vector<PairChord> cs;
    std::size_t m = 2 + rng() % 600;
    int shape = rep % 3;
    for (std::size_t i = 0; i < m; ++i) {
      std::uint32_t x = rng() % nx, y;
      if (shape == 0) {
        y = rng() % ny;
      } else if (shape == 1) {
        y = std::min<std::uint32_t>(ny - 1, x * ny / nx + rng() % 5);  // near-parallel band
      } else {
        y = std::min<std::uint32_t>(ny - 1, (nx - 1 - x) * ny / nx + rng() % 3);
      }
      cs.push_back({x, y});
    }
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    if (cs.size() < 2) continue;
    auto sp = bare_pair(nx, ny, cs);
    auto out = splitting_process(sp);
    CHECK_NOTHROW(check_collection(sp, out.collection));
    std::size_t total = 0;
    const double div = splitting_divisor(sp.m());
    for (std::size_t i = 0; i < out.collection.pairs.size(); ++i) {
      const auto& pr = out.collection.pairs[i];
      std::size_t e = count_chords(sp, pr);
      CHECK(e == out.chord_counts[i]);
      total += e;
      CHECK(out.depth_trace[i].size() <= 2 * std::log2(double(sp.m())) + 1e-9);
      const auto& ev = out.evidence[i];
      std::vector<PairChord> inside;
      for (const auto& c : sp.chords) {
        if (pr.x.contains(c.xi) && pr.y.contains(c.yi)) inside.push_back(c);
      }
      if (out.kase == SplitCase::HighDegreeVertex) {
        std::size_t deg = 0;
        for (const auto& c : inside) deg += ev.side == Side::X ? c.xi == ev.vertex : c.yi == ev.vertex;
        CHECK(deg == ev.count);
        CHECK(static_cast<double>(deg) >= static_cast<double>(e) / div);
      } else {
        std::size_t cnt = 0;
        for (const auto& c : inside) cnt += classify_chords(c, ev.chord) == ChordRelation::Interlacing;
        CHECK(cnt == ev.count);
        CHECK(static_cast<double>(cnt) >= static_cast<double>(e) / div);
      }
    }
    CHECK(total * 24 >= sp.m());
  }
}

TEST_CASE("interlace_counts matches brute force") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<PairChord> cs;
    for (int i = 0; i < 40; ++i) cs.push_back({std::uint32_t(rng() % 15), std::uint32_t(rng() % 15)});
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    auto got = interlace_counts(cs);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      std::size_t want = 0;
      for (const auto& c : cs) want += classify_chords(cs[i], c) == ChordRelation::Interlacing;
      CHECK(got[i] == want);
    }
  }
}

TEST_CASE("interlacing_pair_extraction") {
  std::vector<PairChord> crossed, par;
  for (std::uint32_t i = 0; i < 20; ++i) crossed.push_back({i, 19 - i}), par.push_back({i, i});
  auto r = interlacing_pair_extraction(bare_pair(20, 20, crossed));
  CHECK(r.residue);
  CHECK(r.family.chords.size() == 20);

  auto p = interlacing_pair_extraction(bare_pair(20, 20, par));
  CHECK_FALSE(p.residue);
  REQUIRE(p.pairs.size() == 1);
  CHECK(p.pairs[0].d == 19);

  // Two parallel chords and one crossing both.
  auto three = interlacing_pair_extraction(bare_pair(6, 6, {{0, 1}, {4, 3}, {2, 5}}));
  CHECK_FALSE(three.residue);
  REQUIRE(three.pairs.size() == 1);
  CHECK(three.pairs[0].d >= 1);
  CHECK(three.pairs[0].upper == PairChord{0, 1});
  CHECK(three.pairs[0].lower == PairChord{4, 3});

  CHECK_THROWS_AS(interlacing_pair_extraction(bare_pair(6, 6, {{0, 1}, {0, 3}})), DecompositionError);

  std::mt19937_64 rng(37);
  for (int rep = 0; rep < 200; ++rep) {
    std::uint32_t n = 5 + rng() % 60;
    auto cs = random_matching(rng, n, n + rng() % 10, n);
    std::vector<PairChord> xm;
    for (const auto& c : cs) xm.push_back(c);
    // Allow shared y-vertices.
    for (auto& c : xm) {
      if (rng() % 4 == 0) c.yi = xm.front().yi;
    }
    std::sort(xm.begin(), xm.end());
    auto sp = bare_pair(n, n + 10, xm);
    auto out = interlacing_pair_extraction(sp);
    if (out.residue) {
      CHECK(2 * out.family.chords.size() >= sp.m());
      CHECK(all_relation(out.family.chords, ChordRelation::Interlacing));
      continue;
    }
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < out.pairs.size(); ++i) {
      const auto& a = out.pairs[i];
      sum += a.d;
      CHECK(classify_chords(a.upper, a.lower) != ChordRelation::Interlacing);
      CHECK(a.upper.xi != a.lower.xi);
      for (std::size_t j = i + 1; j < out.pairs.size(); ++j) {
        const auto& b = out.pairs[j];
        for (auto u : {a.upper, a.lower}) {
          for (auto v : {b.upper, b.lower}) CHECK(classify_chords(u, v) == ChordRelation::Interlacing);
        }
      }
    }
    CHECK(4 * sum >= sp.m());
  }
}
