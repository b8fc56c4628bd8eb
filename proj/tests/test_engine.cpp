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
#include <random>
#include <map>
#include <set>

#include "cyclespec/config.hpp"
#include "cyclespec/decomposition.hpp"
#include "cyclespec/engine.hpp"
#include "cyclespec/testbed.hpp"
#include "doctest.h"

using namespace cyclespec;

namespace {

struct Fixture {
  HamGraph g;
  SectionPair sp;
};

// X = 0..nx-1 forward, Y = n-1 down to nx; the bottoms are neighbours, as
// in a block, unless `spacers` puts a vertex between both pairs of ends.
Fixture block_pair(std::uint32_t nx, std::uint32_t ny, const std::vector<PairChord>& pcs,
                   bool spacers = false) {
  const std::uint32_t sep = spacers ? 1 : 0;
  const std::uint32_t n = nx + ny + 2 * sep;
  std::vector<Chord> chords;
  for (const auto& c : pcs) chords.push_back({c.xi, static_cast<Pos>(n - 1 - sep - c.yi)});
  auto g = HamGraph::from_positions(n, chords);
  auto sp = make_section_pair(g, {0, nx, Direction::Forward},
                              {static_cast<Pos>(n - 1 - sep), ny, Direction::Backward});
  return {std::move(g), std::move(sp)};
}

// Good vertices at `offset`, counted straight from the definition.
std::size_t brute_good(const std::vector<Pos>& chosen, std::uint64_t ell, std::size_t offset) {
  const std::size_t n = chosen.size(), B = 4 * ell, s = n / B;
  std::size_t count = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (chosen[v] == v) continue;
    std::size_t rv = (v + n - offset) % n, rw = (chosen[v] + n - offset) % n;
    if (rv / B >= s || rv / B != rw / B) continue;
    if ((rv % B < 2 * ell) != (rw % B < 2 * ell)) ++count;
  }
  return count;
}

void check_path(const HamGraph& g, const SectionPair& sp, const RouteRef& r) {
  auto w = realize_route(g, to_descriptor(r, false));
  CHECK(w.length == r->length());
  auto vs = route_vertices(g.n(), to_descriptor(r, false));
  REQUIRE(!vs.empty());
  CHECK(vs.front() == sp.x.front());
  CHECK(vs.back() == sp.y.front());
}

EngineConfig cfg_with(const std::string& eps_fn, std::size_t min_m = 12) {
  EngineConfig cfg;
  cfg.eps_fn = eps_fn;
  cfg.min_m = min_m;
  return cfg;
}

}  // namespace

TEST_CASE("chosen chords and scale on the chain") {
  auto g = gen_chain_extremal(48, 3);
  EngineConfig cfg;
  auto sel = select_scale_and_blocks(g, cfg);
  for (Pos v = 0; v < g.n(); ++v) {
    std::size_t best = SIZE_MAX;
    Pos partner = v;
    for (Pos w : g.chord_neighbors(v)) {
      auto len = cycle_span(g.n(), v, w);
      if (len < best || (len == best && w < partner)) {
        best = len;
        partner = w;
      }
    }
    CHECK(sel.chosen[v] == partner);
    CHECK(best <= 5);
  }
  CHECK(sel.ell <= 4);
  CHECK(static_cast<double>(sel.heavy.size()) >= 48 / std::log2(48.0));
  CHECK(sel.s == 48 / (4 * sel.ell));
}

TEST_CASE("offset scan agrees with direct counting") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 40; ++rep) {
    std::size_t n = 8 + rng() % 60;
    auto g = gen_random_ham3({RandomMinDeg3{n, n / 4}, rng()});
    auto sel = select_scale_and_blocks(g, EngineConfig{});
    auto counts = good_counts_by_offset(sel.chosen, sel.ell);
    std::size_t best = 0;
    for (std::size_t o = 0; o < n; ++o) {
      CHECK(counts[o] == brute_good(sel.chosen, sel.ell, o));
      best = std::max(best, counts[o]);
    }
    CHECK(sel.good_total == best);
    CHECK(static_cast<double>(sel.good_total) >=
          std::ceil(static_cast<double>(n) / (8 * std::log2(static_cast<double>(n)))));
    for (std::size_t j = 0; j < sel.s; ++j) {
      for (Pos v : sel.good[j]) {
        auto rv = (v + n - sel.block_start(j)) % n;
        auto rw = (sel.chosen[v] + n - sel.block_start(j)) % n;
        CHECK(rv < 4 * sel.ell);
        CHECK(rw < 4 * sel.ell);
        CHECK((rv < 2 * sel.ell) != (rw < 2 * sel.ell));
      }
    }
  }
}

TEST_CASE("heavy class on a large cubic graph") {
  auto g = gen_random_ham3({RandomRegularHam{10000, 3}, 1});
  auto sel = select_scale_and_blocks(g, EngineConfig{});
  CHECK(sel.heavy.size() >= 753);
  for (Pos v : sel.heavy) {
    auto len = cycle_span(g.n(), v, sel.chosen[v]);
    CHECK(len >= sel.ell);
    CHECK(len <= sel.heavy_hi);
  }
}

TEST_CASE("instances below the floor") {
  auto g = HamGraph::from_order({0, 1, 2, 3, 4, 5}, {{0, 3}, {1, 4}, {2, 5}});
  CHECK_THROWS_AS(select_scale_and_blocks(g, EngineConfig{}), InstanceTooSmall);
  CHECK_THROWS_AS(full_spectrum(g, EngineConfig{}), InstanceTooSmall);
}

TEST_CASE("rerouting an interlacing collection") {
  std::vector<PairChord> pcs;
  PairCollection coll;
  coll.mode = CollectionMode::Interlacing;
  for (std::uint32_t i = 0; i < 5; ++i) {
    coll.pairs.push_back({{12 - 3 * i, 14 - 3 * i}, {3 * i, 3 * i + 2}});
    pcs.push_back({12 - 3 * i, 3 * i + 1});
    pcs.push_back({13 - 3 * i, 3 * i});
    pcs.push_back({14 - 3 * i, 3 * i + 2});
  }
  auto f = block_pair(15, 15, pcs);
  check_collection(f.sp, coll);
  auto rr = reroute_if_interlacing(f.sp, coll);
  CHECK(rr.coll.mode == CollectionMode::Parallel);
  REQUIRE(rr.coll.pairs.size() == 3);
  CHECK(rr.sp.x.front() == f.sp.x.front());
  CHECK(rr.sp.y.front() == f.sp.y.front());
  // Y-ranges come back in reverse order.
  for (std::size_t i = 0; i + 1 < 3; ++i) CHECK(rr.coll.pairs[i].y.lo > rr.coll.pairs[i + 1].y.hi);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(count_chords(rr.sp, rr.coll.pairs[i]) == count_chords(f.sp, coll.pairs[i + 2]));
  }
  // Sides stay paths of the host graph and every kept chord is real.
  for (const auto* side : {&rr.sp.x, &rr.sp.y}) {
    std::set<Pos> seen(side->begin(), side->end());
    CHECK(seen.size() == side->size());
    for (std::size_t i = 0; i + 1 < side->size(); ++i) {
      Pos a = (*side)[i], b = (*side)[i + 1];
      CHECK((f.g.cycle_adjacent(a, b) || f.g.has_chord(a, b)));
    }
  }
  for (const auto& c : rr.sp.chords) {
    CHECK(f.g.has_chord(rr.sp.x[c.xi], rr.sp.y[c.yi]));
    check_path(f.g, rr.sp, trivial_path(rr.sp, c));
  }
  auto same = reroute_if_interlacing(rr.sp, rr.coll);
  CHECK(same.sp.chords == rr.sp.chords);
  CHECK(same.coll.pairs.size() == 3);

  PairCollection two{{coll.pairs[0], coll.pairs[1]}, CollectionMode::Interlacing};
  CHECK_THROWS_AS(reroute_if_interlacing(f.sp, two), EngineError);
}

namespace {

Fixture with_lengths(const std::vector<std::uint32_t>& lengths) {
  std::vector<PairChord> pcs;
  std::uint32_t side = 0;
  for (std::uint32_t q = 0; q < lengths.size(); ++q) {
    REQUIRE(lengths[q] >= q);
    pcs.push_back({q, lengths[q] - q});
    side = std::max(side, lengths[q] - q + 1);
  }
  side = std::max<std::uint32_t>(side, static_cast<std::uint32_t>(lengths.size()));
  return block_pair(side, side, pcs, true);
}

}  // namespace

TEST_CASE("dichotomy on equal lengths is dense") {
  auto f = with_lengths(std::vector<std::uint32_t>(8, 10));
  auto d = dichotomy_step(f.sp, 8, 1, 0.5);
  CHECK_FALSE(d.spaced);
  CHECK(d.count == 8);
  CHECK(d.interval.contains(10));
  CHECK_THROWS_AS(dichotomy_step(f.sp, 0, 1, 0.5), EngineError);
  CHECK_THROWS_AS(dichotomy_step(f.sp, 7, 1, 0.5), EngineError);
}

TEST_CASE("dichotomy on spread lengths is spaced") {
  std::vector<std::uint32_t> lengths;
  for (std::uint32_t q = 0; q < 6; ++q) lengths.push_back(3 * q);
  auto f = with_lengths(lengths);
  auto d = dichotomy_step(f.sp, 6, 1, 0.5);
  REQUIRE(d.spaced);
  CHECK(d.width == 2);
  CHECK(d.lengths.lengths() == std::vector<std::uint64_t>{1, 7, 13});
  for (const auto& e : d.lengths.entries) check_path(f.g, f.sp, e.witness);
}

TEST_CASE("dichotomy against an exhaustive cover") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 300; ++rep) {
    std::size_t k = 1 + rng() % 50;
    std::uint32_t spread = 1 + static_cast<std::uint32_t>(rng() % 200);
    std::vector<std::uint32_t> lengths;
    for (std::uint32_t q = 0; q < k; ++q) lengths.push_back(q + static_cast<std::uint32_t>(rng() % spread));
    std::size_t i = 1 + rng() % 2;
    double eps = 0.2 + 0.1 * static_cast<double>(rng() % 4);
    auto f = with_lengths(lengths);
    auto d = dichotomy_step(f.sp, k, i, eps);
    const std::uint64_t w =
        std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(std::pow(k, i * eps))));
    const double floor_dense = std::pow(k, (i + 1) * eps) / 4;
    CHECK(d.width == w);
    std::vector<std::uint64_t> v(lengths.begin(), lengths.end());
    std::sort(v.begin(), v.end());
    // best[j]: fewest intervals of size w covering v[0..j).
    std::vector<std::size_t> best(k + 1, SIZE_MAX);
    best[0] = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      for (std::size_t a = 0; a < j; ++a) {
        if (v[j - 1] - v[a] < w && best[a] != SIZE_MAX) best[j] = std::min(best[j], best[a] + 1);
      }
    }
    std::size_t widest = 0;
    for (std::uint64_t lo = v.front(); lo <= v.back(); ++lo) {
      widest = std::max<std::size_t>(
          widest, std::count_if(v.begin(), v.end(), [&](auto x) { return x >= lo && x < lo + w; }));
    }
    if (d.spaced) {
      CHECK(d.lengths.size() == (best[k] + 1) / 2);
      auto got = d.lengths.lengths();
      for (std::size_t a = 1; a < got.size(); ++a) CHECK(got[a] - got[a - 1] >= w);
    } else {
      CHECK(d.interval.size() == w);
      auto inside = std::count_if(v.begin(), v.end(), [&](auto x) { return d.interval.contains(x); });
      CHECK(static_cast<std::size_t>(inside) == d.count);
      CHECK(static_cast<double>(d.count) >= floor_dense);
    }
    // A spaced answer is only allowed when no window of the cover is heavy;
    // any heavy window of the cover is at most the widest window overall.
    if (static_cast<double>(widest) < floor_dense) CHECK(d.spaced);
  }
}

namespace {

struct Stack {
  Fixture f;
  PairCollection coll;
};

// t pairs of w x w, listed bottom-to-top, one spare vertex between
// neighbours; `local(i)` gives the chords of pair i in its own indices.
template <class Local>
Stack parallel_stack(std::uint32_t t, std::uint32_t w, Local local) {
  const std::uint32_t side = t * (w + 1);
  std::vector<PairChord> pcs;
  PairCollection coll;
  coll.mode = CollectionMode::Parallel;
  for (std::uint32_t i = 0; i < t; ++i) {
    const std::uint32_t lo = (t - 1 - i) * (w + 1) + 1;
    coll.pairs.push_back({{lo, lo + w - 1}, {lo, lo + w - 1}});
    for (const auto& c : local(i)) pcs.push_back({lo + c.xi, lo + c.yi});
  }
  Stack s{block_pair(side, side, pcs, true), coll};
  check_collection(s.f.sp, s.coll);
  return s;
}

void check_family(const Stack& s, const PathFamily& fam) {
  REQUIRE_FALSE(fam.paths.empty());
  fam.paths.check();
  for (const auto& e : fam.paths.entries) {
    REQUIRE(e.witness);
    check_path(s.f.g, s.f.sp, e.witness);
  }
}

}  // namespace

TEST_CASE("many lengths: stars are harvested") {
  const std::uint32_t w = 12;
  auto s = parallel_stack(3, w, [&](std::uint32_t) {
    std::vector<PairChord> c;
    for (std::uint32_t a = 0; a < w; ++a) c.push_back({a, 5});
    return c;
  });
  std::vector<std::string> trace;
  auto fam = many_lengths_over_parallel(s.f.sp, s.coll, cfg_with("const:0.5"), &trace);
  check_family(s, fam);
  CHECK(fam.paths.size() >= w);
  CHECK(fam.diagnostic.find("star") != std::string::npos);
}

TEST_CASE("many lengths: equal-length chords give a ladder") {
  const std::uint32_t w = 30;
  auto s = parallel_stack(3, w, [&](std::uint32_t) {
    std::vector<PairChord> c;
    for (std::uint32_t a = 0; a < w; ++a) c.push_back({a, w - 1 - a});
    return c;
  });
  EngineConfig cfg;
  auto fam = many_lengths_over_parallel(s.f.sp, s.coll, cfg);
  check_family(s, fam);
  const double eps = cfg.eps_for(w);
  CHECK(static_cast<double>(fam.paths.size()) >= std::pow(w, eps) / 6);
  auto [lo, hi] = fam.paths.measured_gaps();
  CHECK(lo >= 1);
  CHECK(hi <= 2);
}

TEST_CASE("many lengths: below the floor falls back") {
  auto s = parallel_stack(2, 4, [&](std::uint32_t) {
    return std::vector<PairChord>{{0, 1}, {1, 3}, {2, 0}};
  });
  auto fam = many_lengths_over_parallel(s.f.sp, s.coll, EngineConfig{});
  check_family(s, fam);
  CHECK(fam.paths.size() == 3);
  PairCollection inter = s.coll;
  inter.mode = CollectionMode::Interlacing;
  CHECK_THROWS(many_lengths_over_parallel(s.f.sp, inter, EngineConfig{}));
}

TEST_CASE("many lengths: random stacks inside the section oracle") {
  std::mt19937_64 rng(23);
  OracleLimits lim;
  lim.max_vertices = 24;
  std::size_t steps = 0, runs = 0;
  for (int rep = 0; rep < 60; ++rep) {
    const std::uint32_t w = 5;
    auto s = parallel_stack(2, w, [&](std::uint32_t) {
      std::vector<PairChord> c;
      for (std::uint32_t a = 0; a < w; ++a) c.push_back({a, static_cast<std::uint32_t>(rng() % w)});
      return c;
    });
    std::vector<std::string> trace;
    auto fam = many_lengths_over_parallel(s.f.sp, s.coll, cfg_with("const:0.5", 4), &trace);
    check_family(s, fam);
    auto oracle = oracle_section_paths(s.f.sp, Endpoint::XTop, Endpoint::YTop, lim);
    for (auto l : fam.paths.lengths()) CHECK(oracle.count(l) == 1);
    ++runs;
    for (const auto& line : trace) steps += line.rfind("level 2", 0) == 0;
  }
  CHECK(runs == 60);
  CHECK(steps > 0);
}

TEST_CASE("many lengths: m=64, t=3") {
  std::mt19937_64 rng(29);
  const std::uint32_t w = 64;
  auto s = parallel_stack(3, w, [&](std::uint32_t) {
    std::vector<std::uint32_t> perm(w);
    for (std::uint32_t a = 0; a < w; ++a) perm[a] = a;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<PairChord> c;
    for (std::uint32_t a = 0; a < w; ++a) c.push_back({a, perm[a]});
    return c;
  });
  // The default epsilon leaves a single level at this size.
  auto base = many_lengths_over_parallel(s.f.sp, s.coll, EngineConfig{});
  check_family(s, base);
  CHECK(base.diagnostic == "base ladder");
  std::vector<std::string> trace;
  auto fam = many_lengths_over_parallel(s.f.sp, s.coll, cfg_with("const:0.5"), &trace);
  check_family(s, fam);
  CHECK(fam.paths.size() >= 4);
  for (const char* eps : {"const:0.34", "const:0.25"}) {
    check_family(s, many_lengths_over_parallel(s.f.sp, s.coll, cfg_with(eps)));
  }
}

TEST_CASE("many lengths: every branch yields real paths") {
  std::map<std::string, int> seen;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    std::mt19937_64 rng(seed);
    const std::uint32_t w = 40 + static_cast<std::uint32_t>(rng() % 40);
    auto s = parallel_stack(4, w, [&](std::uint32_t) {
      std::vector<std::uint32_t> perm(w);
      for (std::uint32_t a = 0; a < w; ++a) perm[a] = a;
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<PairChord> c;
      for (std::uint32_t a = 0; a < w; ++a) {
        if (rng() % 4) c.push_back({a, perm[a]});
      }
      return c;
    });
    for (const char* eps : {"const:0.5", "const:0.34", "const:0.25"}) {
      std::vector<std::string> trace;
      auto fam = many_lengths_over_parallel(s.f.sp, s.coll, cfg_with(eps), &trace);
      check_family(s, fam);
      for (const auto& line : trace) {
        for (const char* key : {"spaced branch gives", "dense branch gives", "star"}) {
          if (line.find(key) != std::string::npos) ++seen[key];
        }
      }
    }
  }
  CHECK(seen["spaced branch gives"] > 0);
  CHECK(seen["dense branch gives"] > 0);
}

namespace {

const std::set<std::uint64_t> kChain243{4, 6, 16, 18, 20, 22, 24};

bool chain_member(std::size_t n, std::size_t k, std::uint64_t len) {
  if (len % 2) return false;
  return (len >= 4 && len <= 2 * k) || (len >= 2 * n / k && len <= n);
}

void check_report(const HamGraph& g, const SpectrumReport& rep) {
  rep.lengths.check();
  for (const auto& e : rep.lengths.entries) {
    REQUIRE(e.witness);
    auto w = realize_route(g, to_descriptor(e.witness, true));
    CHECK(w.length == e.length);
  }
}

}  // namespace

TEST_CASE("full spectrum on small named graphs") {
  EngineConfig cfg;
  cfg.min_n = 4;
  auto k4 = HamGraph::from_order({0, 1, 2, 3}, {{0, 2}, {1, 3}});
  auto rep = full_spectrum(k4, cfg);
  check_report(k4, rep);
  CHECK(rep.lengths.lengths() == std::vector<std::uint64_t>{3, 4});

  // Q3 along a Gray code.
  std::vector<Vertex> gray{0, 1, 3, 2, 6, 7, 5, 4};
  std::vector<std::pair<Vertex, Vertex>> chords;
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = i + 2; j < 8; ++j) {
      if (i == 0 && j == 7) continue;
      if (std::popcount(gray[i] ^ gray[j]) == 1) chords.emplace_back(gray[i], gray[j]);
    }
  }
  auto q3 = HamGraph::from_order(gray, chords);
  auto rq = full_spectrum(q3, cfg);
  check_report(q3, rq);
  for (auto l : rq.lengths.lengths()) CHECK(std::set<std::uint64_t>{4, 6, 8}.count(l) == 1);
}

TEST_CASE("full spectrum on the chain") {
  auto g = gen_chain_extremal(24, 3);
  auto rep = full_spectrum(g, EngineConfig{});
  check_report(g, rep);
  for (auto l : rep.lengths.lengths()) CHECK(kChain243.count(l) == 1);
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{48, 3}, {64, 4}, {96, 4}}) {
    auto h = gen_chain_extremal(n, k);
    auto r = full_spectrum(h, EngineConfig{});
    check_report(h, r);
    for (auto l : r.lengths.lengths()) CHECK(chain_member(n, k, l));
  }
}

TEST_CASE("full spectrum stays inside the oracle") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 40; ++rep) {
    std::size_t n = 8 + rng() % 9;
    GenSpec spec{RandomMinDeg3{n, rng() % 4}, rng()};
    if (rep % 2 && n % 2 == 0) spec.family = RandomRegularHam{n, 3};
    auto g = gen_random_ham3(spec);
    auto oracle = oracle_cycle_spectrum(g);
    try {
      auto r = full_spectrum(g, EngineConfig{});
      check_report(g, r);
      for (auto l : r.lengths.lengths()) CHECK(oracle.count(l) == 1);
      CHECK(r.lengths.size() >= 1);
    } catch (const InstanceTooSmall&) {
    }
  }
}

TEST_CASE("full spectrum is the same with several workers") {
  auto g = gen_random_ham3({RandomRegularHam{2000, 3}, 9});
  EngineConfig one, many;
  many.jobs = 4;
  auto a = full_spectrum(g, one);
  auto b = full_spectrum(g, many);
  CHECK(a.lengths.lengths() == b.lengths.lengths());
  CHECK(a.stats == b.stats);
  CHECK(a.lengths.size() > 100);
}

TEST_CASE("config text round-trips") {
  auto cfg = parse_config("# engine\nc_split = 1/200\ntheta_hi = 6\nk_fn = const:3\njobs = 2\n");
  CHECK(cfg.c_split == doctest::Approx(0.005));
  CHECK(cfg.k_for(1000) == 3);
  CHECK(cfg.jobs == 2);
  auto again = parse_config(format_config(cfg));
  CHECK(format_config(again) == format_config(cfg));
  CHECK(EngineConfig{}.k_for(1024) == 4);
  CHECK_THROWS_AS(parse_config("bogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("theta_lo = 8\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("c_close = x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("eps_fn = cube\n"), ConfigError);
}
