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


// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cyclespec/decomposition.hpp"
#include "cyclespec/engine.hpp"
#include "cyclespec/graph.hpp"
#include "cyclespec/path_forge.hpp"
#include "cyclespec/report.hpp"
#include "cyclespec/sumset.hpp"
#include "cyclespec/testbed.hpp"

using namespace cyclespec;

namespace {

const std::string kData = CYCLESPEC_DATA_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join(const std::set<std::uint64_t>& s) {
  std::string out;
  for (auto v : s) out += (out.empty() ? "" : " ") + std::to_string(v);
  return out;
}

struct CorpusEntry {
  std::string file;
  GenSpec spec;
  HamGraph g;
};

GenSpec spec_from(const std::string& family, std::uint64_t seed) {
  std::stringstream ss(family);
  std::string name, a, b;
  std::getline(ss, name, ':');
  std::getline(ss, a, ':');
  std::getline(ss, b, ':');
  GenSpec s;
  s.seed = seed;
  if (name == "mindeg3") {
    s.family = RandomMinDeg3{std::stoul(a), std::stoul(b)};
  } else if (name == "regular") {
    s.family = RandomRegularHam{std::stoul(a), std::stoul(b)};
  } else {
    throw std::runtime_error("unknown corpus family " + family);
  }
  return s;
}

std::vector<CorpusEntry> load_corpus() {
  std::vector<CorpusEntry> out;
  std::istringstream man(read_file(kData + "/corpus/manifest.txt"));
  std::string file, family;
  std::uint64_t seed = 0;
  while (man >> file >> family >> seed) {
    out.push_back({file, spec_from(family, seed), parse_instance(read_file(kData + "/corpus/" + file))});
  }
  return out;
}

// 1: every emitted length is in the exact spectrum; every witness verifies.
Outcome oracle_soundness(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  std::size_t lengths = 0, regenerated = 0;
  for (const auto& c : corpus) {
    if (gen_random_ham3(c.spec) == c.g) ++regenerated;
    auto oracle = oracle_cycle_spectrum(c.g);
    SpectrumReport rep;
    try {
      rep = full_spectrum(c.g, EngineConfig{});
    } catch (const std::exception& e) {
      o.fail(c.file + ": " + e.what());
      continue;
    }
    for (auto l : rep.lengths.lengths()) {
      ++lengths;
      if (!oracle.count(l)) o.fail(c.file + ": length " + std::to_string(l) + " not a cycle length");
    }
    auto v = verify_report(c.g, parse_report(format_report(rep)));
    if (!v.ok()) o.fail(c.file + ": " + v.failures.front());
    if (v.checked != rep.lengths.size()) o.fail(c.file + ": witness count mismatch");
  }
  if (corpus.size() < 200) o.fail("corpus has only " + std::to_string(corpus.size()) + " instances");
  if (regenerated != corpus.size()) o.fail("corpus files differ from their generator seeds");
  if (o.pass) {
    o.detail = std::to_string(corpus.size()) + " instances, " + std::to_string(lengths) +
               " witnessed lengths, all inside the oracle spectrum";
  }
  return o;
}

// 2: the chain family.
Outcome extremal() {
  Outcome o;
  OracleLimits lim;
  lim.max_vertices = 24;
  auto exact = oracle_cycle_spectrum(gen_chain_extremal(24, 3), lim);
  const std::set<std::uint64_t> want{4, 6, 16, 18, 20, 22, 24};
  if (exact != want) o.fail("oracle spectrum of (24,3) is {" + join(exact) + "}");
  if (chain_spectrum_formula(24, 3) != 7) o.fail("size formula for (24,3) is not 7");
  std::size_t checked = 0;
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{24, 3}, {48, 3}, {64, 4}}) {
    auto g = gen_chain_extremal(n, k);
    auto rep = full_spectrum(g, EngineConfig{});
    auto allowed = chain_spectrum(n, k);
    for (auto l : rep.lengths.lengths()) {
      ++checked;
      if (!allowed.count(l)) {
        o.fail("(" + std::to_string(n) + "," + std::to_string(k) + ") reports length " + std::to_string(l));
      }
    }
    auto v = verify_report(g, parse_report(format_report(rep)));
    if (!v.ok()) o.fail(v.failures.front());
  }
  if (o.pass) {
    o.detail = "(24,3) oracle = {" + join(exact) + "}; " + std::to_string(checked) +
               " engine lengths on (24,3), (48,3), (64,4) all allowed";
  }
  return o;
}

struct PairFixture {
  HamGraph g;
  SectionPair sp;
};

// X = 0..nx-1 forward and Y running backward from nx+ny, separated by one
// vertex at each end.
PairFixture fixture(std::uint32_t nx, std::uint32_t ny, const std::vector<PairChord>& pcs) {
  std::vector<Chord> chords;
  for (const auto& c : pcs) chords.push_back({c.xi, static_cast<Pos>(nx + ny - c.yi)});
  auto g = HamGraph::from_positions(nx + ny + 2, chords);
  auto sp = make_section_pair(g, {0, nx, Direction::Forward},
                              {static_cast<Pos>(nx + ny), ny, Direction::Backward});
  return {std::move(g), std::move(sp)};
}

std::uint64_t plen(const PairChord& c) { return std::uint64_t{c.xi} + c.yi; }

struct LemmaTally {
  std::size_t pairs = 0, ladders = 0, stitched = 0, distant = 0, close = 0, close_multi = 0;
};

// Route realizes, runs between the requested ends inside the pair, and its
// length is one the oracle found.
void check_path(Outcome& o, const PairFixture& f, const RouteRef& r, Anchor a,
                const std::set<std::uint64_t>& oracle, const std::string& what) {
  try {
    auto desc = to_descriptor(r, false);
    auto w = realize_route(f.g, desc);
    if (w.length != r->length()) o.fail(what + ": recorded length differs from the route");
    auto vs = route_vertices(f.g.n(), desc);
    Pos from = a == Anchor::Top ? f.sp.x.front() : f.sp.x.back();
    Pos to = a == Anchor::Top ? f.sp.y.front() : f.sp.y.back();
    if (vs.empty() || vs.front() != from || vs.back() != to) o.fail(what + ": wrong endpoints");
    std::set<Pos> inside(f.sp.x.begin(), f.sp.x.end());
    inside.insert(f.sp.y.begin(), f.sp.y.end());
    for (Pos v : vs) {
      if (!inside.count(v)) o.fail(what + ": leaves the pair");
    }
  } catch (const std::exception& e) {
    o.fail(what + ": " + e.what());
  }
  if (!oracle.count(r->length())) o.fail(what + ": length " + std::to_string(r->length()) + " not in oracle");
}

void check_gaps(Outcome& o, const LengthSet& l, std::uint64_t lo, std::uint64_t hi, const std::string& what) {
  if (l.size() < 2) return;
  auto [glo, ghi] = l.measured_gaps();
  if (glo < lo || ghi > hi) {
    o.fail(what + ": gaps [" + std::to_string(glo) + "," + std::to_string(ghi) + "] outside [" +
           std::to_string(lo) + "," + std::to_string(hi) + "]");
  }
}

// Stitched family from the extracted pairs, built the way the distant-path
// construction does; false when extraction ends in the residue branch.
bool stitch_extracted(Outcome& o, const PairFixture& f, const std::set<std::uint64_t>& oracle) {
  const SectionPair& sp = f.sp;
  Extraction ex = interlacing_pair_extraction(sp);
  if (ex.residue || ex.pairs.empty()) return false;
  auto pairs = ex.pairs;
  std::sort(pairs.begin(), pairs.end(),
            [](const ExtractedPair& a, const ExtractedPair& b) { return a.upper.xi < b.upper.xi; });
  if (pairs.size() % 2 == 0) pairs.pop_back();
  PairCollection coll;
  coll.mode = CollectionMode::Interlacing;
  std::vector<Gadget> gadgets;
  std::uint64_t D = 0, sum_d = 0;
  for (std::size_t q = pairs.size(); q-- > 0;) {
    const auto &up = pairs[q].upper, &lo = pairs[q].lower;
    SubPair p{{up.xi, lo.xi}, {up.yi, lo.yi}};
    coll.pairs.push_back(p);
    D = std::max<std::uint64_t>(D, std::uint64_t{p.x.size()} + p.y.size());
    sum_d += pairs[q].d;
    Gadget g;
    g.d = pairs[q].d;
    if (q % 2 == 0) {
      g.blue = chord_hop(sp, up);
      g.red = RouteNode::concat({side_run(sp, Side::X, up.xi, lo.xi), chord_hop(sp, lo),
                                 side_run(sp, Side::Y, lo.yi, up.yi)});
    } else {
      g.blue = chord_hop(sp, lo);
      g.red = RouteNode::concat({side_run(sp, Side::X, lo.xi, up.xi), chord_hop(sp, up),
                                 side_run(sp, Side::Y, up.yi, lo.yi)});
    }
    gadgets.push_back(std::move(g));
  }
  auto fam = stitched_paths(sp, coll, gadgets, D);
  for (const auto& e : fam.paths.entries) check_path(o, f, e.witness, Anchor::Top, oracle, "stitched");
  check_gaps(o, fam.paths, 1, 2 * D, "stitched");
  if (fam.paths.span() < sum_d) {
    o.fail("stitched spread " + std::to_string(fam.paths.span()) + " below sum of d " + std::to_string(sum_d));
  }
  return true;
}

// 3: the four path lemmas against the section-path oracle.
Outcome lemma_suites(LemmaTally& t) {
  Outcome o;
  const ForgeParams params;
  OracleLimits lim;
  lim.max_vertices = 24;
  std::mt19937_64 rng(20240611);
  for (int rep = 0; rep < 500; ++rep) {
    const int kind = rep % 3;
    std::uint32_t nx = kind == 1 ? 12 : 6 + static_cast<std::uint32_t>(rng() % 7);
    std::uint32_t ny = kind == 1 ? 12 : 6 + static_cast<std::uint32_t>(rng() % 7);
    std::vector<PairChord> pcs;
    if (kind == 0) {
      const unsigned p = 30 + rng() % 70;
      for (std::uint32_t x = 0; x < nx; ++x) {
        if (rng() % 100 < p) pcs.push_back({x, static_cast<std::uint32_t>(rng() % ny)});
      }
    } else if (kind == 1) {
      for (std::uint32_t x = 0; x < nx; ++x) pcs.push_back({x, static_cast<std::uint32_t>(rng() % ny)});
    } else if (rep % 6 == 5) {
      // Every X vertex on one length: the largest close-length family that fits.
      nx = ny = 12;
      for (std::uint32_t x = 0; x < nx; ++x) pcs.push_back({x, 11 - x});
    } else {
      // Most chords near one length.
      const std::uint32_t L = nx / 2 + static_cast<std::uint32_t>(rng() % nx), w = 1 + rng() % 3;
      for (std::uint32_t x = 0; x < nx; ++x) {
        std::int64_t y = std::int64_t{L} - x + static_cast<std::int64_t>(rng() % w);
        if (y >= 0 && y < ny && rng() % 10) pcs.push_back({x, static_cast<std::uint32_t>(y)});
      }
    }
    if (pcs.empty()) pcs.push_back({0, 1});
    auto f = fixture(nx, ny, pcs);
    ++t.pairs;
    const auto oracle = oracle_section_paths(f.sp, Endpoint::XTop, Endpoint::YTop, lim);
    const std::string tag = "pair " + std::to_string(rep) + " ";
    try {
      // Ladder on the longest interlacing chain.
      std::vector<PairChord> ymatch;
      std::set<std::uint32_t> ys;
      for (const auto& c : f.sp.chords) {
        if (ys.insert(c.yi).second) ymatch.push_back(c);
      }
      auto chain = longest_monotone(ymatch, Monotone::AllInterlacing);
      if (chain.size() >= 3) {
        std::uint64_t lo = UINT64_MAX, hi = 0;
        for (const auto& c : chain) lo = std::min(lo, plen(c)), hi = std::max(hi, plen(c));
        const std::uint64_t D = hi - lo + 1;
        auto fam = rung_ladder_paths(f.sp, chain, D);
        for (const auto& e : fam.paths.entries) check_path(o, f, e.witness, Anchor::Top, oracle, tag + "ladder");
        check_gaps(o, fam.paths, 1, 2 * D, tag + "ladder");
        ++t.ladders;
      }
      if (stitch_extracted(o, f, oracle)) ++t.stitched;
      if (f.sp.m() >= 12) {
        const auto bottom = oracle_section_paths(f.sp, Endpoint::XBottom, Endpoint::YBottom, lim);
        for (Anchor a : {Anchor::Top, Anchor::Bottom}) {
          auto dp = distant_paths(f.sp, a);
          const auto& orc = a == Anchor::Top ? oracle : bottom;
          check_path(o, f, dp.shorter, a, orc, tag + "distant");
          check_path(o, f, dp.longer, a, orc, tag + "distant");
          if (static_cast<double>(dp.gap()) < params.c_distant * static_cast<double>(f.sp.m())) {
            o.fail(tag + "distant gap " + std::to_string(dp.gap()) + " below c_distant*m");
          }
        }
        ++t.distant;
      }
      // Densest window of a random width.
      const std::uint64_t jw = rep % 6 == 5 ? 1 : 1 + rng() % 3;
      std::uint64_t jlo = 0;
      std::size_t best = 0;
      for (std::uint64_t lo = 0; lo < nx + ny; ++lo) {
        std::size_t cnt = 0;
        for (const auto& c : f.sp.chords) cnt += plen(c) >= lo && plen(c) < lo + jw;
        if (cnt > best) best = cnt, jlo = lo;
      }
      IndexRange J{static_cast<std::uint32_t>(jlo), static_cast<std::uint32_t>(jlo + jw - 1)};
      std::vector<PairChord> E;
      for (const auto& c : f.sp.chords) {
        if (J.contains(static_cast<std::uint32_t>(plen(c)))) E.push_back(c);
      }
      auto fam = close_length_paths(f.sp, E, J, params);
      for (const auto& e : fam.paths.entries) check_path(o, f, e.witness, Anchor::Top, oracle, tag + "close");
      check_gaps(o, fam.paths, static_cast<std::uint64_t>(std::ceil(params.theta_lo * jw)),
                 static_cast<std::uint64_t>(std::floor(params.theta_hi * jw)), tag + "close");
      ++t.close;
      t.close_multi += fam.paths.size() >= 2;
    } catch (const std::exception& e) {
      o.fail(tag + e.what());
    }
  }
  if (o.pass) {
    o.detail = std::to_string(t.pairs) + " pairs: " + std::to_string(t.ladders) + " ladders, " +
               std::to_string(t.stitched) + " stitched, " + std::to_string(t.distant) + " distant, " +
               std::to_string(t.close) + " close-length (" + std::to_string(t.close_multi) +
               " with two or more paths)";
  }
  return o;
}

std::set<std::uint64_t> brute_sumset(const std::vector<LengthSet>& sets) {
  std::set<std::uint64_t> acc{0};
  for (const auto& s : sets) {
    std::set<std::uint64_t> next;
    for (auto a : acc) {
      for (auto b : s.lengths()) next.insert(a + b);
    }
    acc = std::move(next);
  }
  return acc;
}

LengthSet random_gapped(std::mt19937_64& rng, std::size_t size, std::uint64_t a, std::uint64_t b) {
  std::vector<std::uint64_t> v{rng() % 20};
  for (std::size_t i = 1; i < size; ++i) v.push_back(v.back() + a + rng() % (b - a + 1));
  return LengthSet::from_lengths(v);
}

// 4: sum-set operations against brute force.
Outcome sumset_exactness() {
  Outcome o;
  std::mt19937_64 rng(4242);
  std::size_t combine = 0, product = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const std::string tag = "input " + std::to_string(rep) + ": ";
    try {
      if (rep % 2 == 0) {
        std::uint64_t a = 1 + rng() % 4, b = a + rng() % 4;
        std::vector<LengthSet> sets;
        std::size_t total = 0;
        while (true) {
          std::size_t sz = 1 + rng() % 6;
          if (total + sz > 30) break;
          total += sz;
          sets.push_back(random_gapped(rng, sz, a, b));
        }
        auto out = combine_gapped(sets, a, b);
        std::size_t want = 1;
        for (const auto& s : sets) want += s.size() - 1;
        if (out.size() != want) o.fail(tag + "combine size " + std::to_string(out.size()));
        auto brute = brute_sumset(sets);
        for (auto x : out.lengths()) {
          if (!brute.count(x)) o.fail(tag + "combine emits a non-sum " + std::to_string(x));
        }
        check_gaps(o, out, a, b, tag + "combine");
        out.check();
        ++combine;
      } else {
        std::uint64_t l2 = 2 + rng() % 8;
        LengthSet s2;
        do {
          s2 = random_gapped(rng, 1 + rng() % 5, 1, 2);
        } while (s2.span() >= l2);
        auto s1 = random_gapped(rng, 1 + rng() % 5, l2, l2 + 5);
        std::uint64_t l1 = s1.span() + 1 + rng() % 3;
        auto p = spread_close_product(s1, s2, l1, l2);
        auto brute = brute_sumset({s1, s2});
        if (p.size() != s1.size() * s2.size() || brute.size() != p.size()) {
          o.fail(tag + "product size " + std::to_string(p.size()));
        }
        auto lens = p.lengths();
        if (std::set<std::uint64_t>(lens.begin(), lens.end()) != brute) o.fail(tag + "product differs from the sum-set");
        if (p.span() >= l1 + l2) o.fail(tag + "product leaves its interval");
        p.check();
        ++product;
      }
    } catch (const std::exception& e) {
      o.fail(tag + e.what());
    }
  }
  if (o.pass) {
    o.detail = std::to_string(combine) + " combine_gapped and " + std::to_string(product) +
               " spread_close_product inputs match brute force";
  }
  return o;
}

// 5: good-vertex count at the chosen offset.
Outcome derandomization(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  std::size_t ran = 0, too_small = 0;
  auto check = [&](const std::string& name, const HamGraph& g) {
    ScaleSelection sel;
    try {
      sel = select_scale_and_blocks(g, EngineConfig{});
    } catch (const InstanceTooSmall&) {
      ++too_small;
      return;
    }
    ++ran;
    const double n = static_cast<double>(g.n());
    const auto floor = static_cast<std::size_t>(std::ceil(n / (8 * std::log2(n))));
    if (sel.good_total < floor) {
      o.fail(name + ": " + std::to_string(sel.good_total) + " good vertices, need " + std::to_string(floor));
    }
  };
  for (const auto& c : corpus) check(c.file, c.g);
  for (std::size_t n : {512, 2048, 8192}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      check("regular:" + std::to_string(n) + ":3 seed " + std::to_string(seed),
            gen_random_ham3({RandomRegularHam{n, 3}, seed}));
      check("mindeg3:" + std::to_string(n) + ":" + std::to_string(n / 8) + " seed " + std::to_string(seed),
            gen_random_ham3({RandomMinDeg3{n, n / 8}, seed}));
    }
  }
  if (o.pass) {
    o.detail = std::to_string(ran) + " selections meet the bound (" + std::to_string(too_small) +
               " instances below the size floor)";
  }
  return o;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : (v[h - 1] + v[h]) / 2;
}

// 6: growth of the spectrum on random cubic graphs, recomputed and compared
// with the committed bench table.
Outcome growth() {
  Outcome o;
  std::map<std::pair<std::size_t, std::uint64_t>, std::size_t> committed;
  {
    std::istringstream in(read_file(kData + "/bench_regular3.csv"));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      std::vector<std::string> f;
      std::stringstream ss(line);
      for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
      if (f.size() < 4) continue;
      committed[{std::stoul(f[1]), std::stoull(f[2])}] = std::stoul(f[3]);
    }
  }
  std::string trend;
  double prev_med = 0, best_ratio = 0;
  for (std::size_t n = 512; n <= 16384; n *= 2) {
    std::vector<double> sizes;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto rep = full_spectrum(gen_random_ham3({RandomRegularHam{n, 3}, seed}), EngineConfig{});
      sizes.push_back(static_cast<double>(rep.lengths.size()));
      auto it = committed.find({n, seed});
      if (it == committed.end() || it->second != rep.lengths.size()) {
        o.fail("n=" + std::to_string(n) + " seed " + std::to_string(seed) + " differs from the committed table");
      }
    }
    const double med = median(sizes), ratio = med / std::sqrt(static_cast<double>(n));
    if (med <= prev_med) o.fail("median not increasing at n=" + std::to_string(n));
    if (ratio < 0.9 * best_ratio) o.fail("median/sqrt(n) dropped more than 10% at n=" + std::to_string(n));
    best_ratio = std::max(best_ratio, ratio);
    prev_med = med;
    std::ostringstream part;
    part.precision(3);
    part << n << ":" << med << "(" << ratio << ")";
    trend += (trend.empty() ? "" : " ") + part.str();
  }
  o.detail = "median(ratio to sqrt n) " + trend + (o.pass ? "" : "; " + o.detail);
  return o;
}

}  // namespace

int main() {
  bool all = true;
  auto report = [&](int id, const Outcome& o) {
    all = all && o.pass;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " " << o.detail << std::endl;
  };
  std::vector<CorpusEntry> corpus;
  try {
    corpus = load_corpus();
  } catch (const std::exception& e) {
    std::cout << "corpus: " << e.what() << std::endl;
  }
  auto guarded = [&](int id, auto fn) {
    try {
      report(id, fn());
    } catch (const std::exception& e) {
      Outcome o;
      o.fail(std::string("uncaught: ") + e.what());
      report(id, o);
    }
  };
  guarded(1, [&] { return oracle_soundness(corpus); });
  guarded(2, [] { return extremal(); });
  LemmaTally tally;
  guarded(3, [&] { return lemma_suites(tally); });
  guarded(4, [] { return sumset_exactness(); });
  guarded(5, [&] { return derandomization(corpus); });
  guarded(6, [] { return growth(); });
  return all ? 0 : 1;
}
