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


#include "cyclespec/path_forge.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <unordered_map>

namespace cyclespec {

namespace {

RouteRef xrun(const SectionPair& sp, std::uint32_t a, std::uint32_t b) {
  return side_run(sp, Side::X, a, b);
}
RouteRef yrun(const SectionPair& sp, std::uint32_t a, std::uint32_t b) {
  return side_run(sp, Side::Y, a, b);
}
RouteRef hop(const SectionPair& sp, const PairChord& c) { return chord_hop(sp, c); }
RouteRef hop_back(const SectionPair& sp, const PairChord& c) {
  return RouteNode::reverse(chord_hop(sp, c));
}
RouteRef cat(std::vector<RouteRef> parts) { return RouteNode::concat(std::move(parts)); }

std::uint64_t plen(const PairChord& c) { return std::uint64_t{c.xi} + c.yi; }

// Paths P_1..P_count where P_j takes `blue` at levels below r(j) and `red`
// from r(j) on; r(1) = levels (all blue), r(j) = levels + 1 - j otherwise.
// The last level is the base, which also has both colours.
std::vector<RouteRef> staircase(const std::vector<RouteRef>& blue, const std::vector<RouteRef>& red) {
  const std::size_t levels = blue.size();
  std::vector<RouteRef> pre(levels + 1), suf(levels + 1);
  pre[0] = RouteNode::empty();
  for (std::size_t s = 0; s < levels; ++s) pre[s + 1] = cat({pre[s], blue[s]});
  suf[levels] = RouteNode::empty();
  for (std::size_t s = levels; s-- > 0;) suf[s] = cat({red[s], suf[s + 1]});
  std::vector<RouteRef> out;
  out.reserve(levels + 1);
  for (std::size_t j = 1; j <= levels + 1; ++j) {
    std::size_t r = j == 1 ? levels : levels + 1 - j;
    out.push_back(cat({pre[r], suf[r]}));
  }
  return out;
}

LengthSet increasing_set(const std::vector<RouteRef>& routes) {
  LengthSet out;
  for (const auto& r : routes) {
    if (!out.empty() && r->length() <= out.max()) {
      throw ForgeError("path family lengths are not strictly increasing");
    }
    out.entries.push_back({r->length(), r});
  }
  return out;
}

}  // namespace

std::vector<Pos> route_positions(std::size_t host_n, const RouteRef& r) {
  if (r->length() == 0) return {};
  return route_vertices(host_n, to_descriptor(r, false));
}

std::array<std::uint64_t, 4> ladder_candidates(std::uint64_t a1, std::uint64_t b1,
                                               std::uint64_t a2, std::uint64_t b2) {
  return {a1 + a2, a1 + b2 + 2, a2 + b1 + 2, b1 + b2 + 2};
}

PathFamily rung_ladder_paths(const SectionPair& sp, const std::vector<PairChord>& chords,
                             std::uint64_t D) {
  if (chords.size() < 3) throw ForgeError("ladder needs at least 3 chords");
  std::vector<PairChord> cs = chords;
  std::sort(cs.begin(), cs.end());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!sp.contains(cs[i])) throw ForgeError("ladder chord not in the section pair");
    if (i > 0 && !(cs[i].xi > cs[i - 1].xi && cs[i].yi < cs[i - 1].yi)) {
      throw ForgeError("ladder chords are not pairwise interlacing");
    }
  }
  const std::uint64_t Dv = std::max<std::uint64_t>(D, 1);
  std::uint64_t lo = UINT64_MAX, hi = 0;
  for (const auto& c : cs) lo = std::min(lo, plen(c)), hi = std::max(hi, plen(c));
  if (hi - lo >= Dv) {
    throw ForgeError("chord lengths span " + std::to_string(hi - lo) +
                     ", not inside an interval of size " + std::to_string(Dv));
  }
  const std::size_t t = cs.size() / 3;
  // Level L uses chords 3L..3L+2; the connector runs down X to chord 3L+3.
  std::vector<RouteRef> q1(t), q2(t);
  for (std::size_t L = 0; L + 1 < t; ++L) {
    const auto &c1 = cs[3 * L], &c2 = cs[3 * L + 1], &c3 = cs[3 * L + 2], &c4 = cs[3 * L + 3];
    auto cand = ladder_candidates(c2.xi - c1.xi, c1.yi - c2.yi, c3.xi - c2.xi, c2.yi - c3.yi);
    std::size_t ia = 0, ib = 0;
    bool found = false;
    for (std::size_t a = 0; a < 4 && !found; ++a) {
      for (std::size_t b = a + 1; b < 4 && !found; ++b) {
        if (cand[a] != cand[b]) ia = a, ib = b, found = true;
      }
    }
    if (!found) throw ForgeError("ladder candidates all equal");
    auto build = [&](std::size_t which) -> RouteRef {
      switch (which) {
        case 0:
          return xrun(sp, c1.xi, c3.xi);
        case 1:
          return cat({xrun(sp, c1.xi, c2.xi), hop(sp, c2), yrun(sp, c2.yi, c3.yi), hop_back(sp, c3)});
        case 2:
          return cat({hop(sp, c1), yrun(sp, c1.yi, c2.yi), hop_back(sp, c2), xrun(sp, c2.xi, c3.xi)});
        default:
          return cat({hop(sp, c1), yrun(sp, c1.yi, c3.yi), hop_back(sp, c3)});
      }
    };
    if (cand[ia] > cand[ib]) std::swap(ia, ib);
    auto conn = xrun(sp, c3.xi, c4.xi);
    q1[L] = cat({build(ia), conn});
    q2[L] = cat({build(ib), conn});
  }
  // Base level: the trivial path from the last triple's first chord; it
  // has a single colour, so reuse it for both.
  const auto& cb = cs[3 * (t - 1)];
  auto base = cat({hop(sp, cb), yrun(sp, cb.yi, 0)});
  std::vector<RouteRef> pre(t), suf(t);
  pre[0] = xrun(sp, 0, cs[0].xi);
  for (std::size_t L = 0; L + 1 < t; ++L) pre[L + 1] = cat({pre[L], q1[L]});
  suf[t - 1] = base;
  for (std::size_t L = t - 1; L-- > 0;) suf[L] = cat({q2[L], suf[L + 1]});
  std::vector<RouteRef> paths;
  for (std::size_t j = 1; j <= t; ++j) paths.push_back(cat({pre[t - j], suf[t - j]}));
  PathFamily fam;
  fam.paths = increasing_set(paths);
  if (fam.paths.size() >= 2) {
    fam.paths.gap_lo = 1;
    fam.paths.gap_hi = 2 * Dv;
  }
  fam.D = Dv;
  fam.spread_floor = t - 1;
  return fam;
}

PathFamily stitched_paths(const SectionPair& sp, const PairCollection& coll,
                          const std::vector<Gadget>& gadgets, std::uint64_t D) {
  const std::size_t t = coll.pairs.size();
  if (t == 0 || t % 2 == 0) throw ForgeError("stitching needs an odd number of pairs");
  if (gadgets.size() != t) throw ForgeError("one gadget per pair required");
  if (coll.mode != CollectionMode::Interlacing) throw ForgeError("collection must be interlacing");
  check_collection(sp, coll);
  std::unordered_map<Pos, std::pair<Side, std::uint32_t>> where;
  where.reserve(2 * (sp.x.size() + sp.y.size()));
  for (std::uint32_t i = 0; i < sp.x.size(); ++i) where.emplace(sp.x[i], std::pair{Side::X, i});
  for (std::uint32_t i = 0; i < sp.y.size(); ++i) where.emplace(sp.y[i], std::pair{Side::Y, i});

  // Top-first order.
  std::vector<SubPair> p(coll.pairs.rbegin(), coll.pairs.rend());
  std::vector<Gadget> g(gadgets.rbegin(), gadgets.rend());
  std::uint64_t dsum = 0;
  for (std::size_t q = 0; q < t; ++q) {
    const bool top = q % 2 == 0;
    const auto& pr = p[q];
    if (std::uint64_t{pr.x.size()} + pr.y.size() > D) {
      throw ForgeError("D is smaller than |X_i|+|Y_i| for pair " + std::to_string(q));
    }
    Pos want_from = sp.x[top ? pr.x.lo : pr.x.hi];
    Pos want_to = sp.y[top ? pr.y.lo : pr.y.hi];
    for (const auto* r : {&g[q].blue, &g[q].red}) {
      if (!*r) throw ForgeError("missing gadget route");
      auto vs = route_positions(sp.host_n, *r);
      if (vs.empty() || vs.front() != want_from || vs.back() != want_to) {
        throw ForgeError("gadget " + std::to_string(q) + " has wrong endpoints");
      }
      for (Pos v : vs) {
        auto it = where.find(v);
        bool inside = it != where.end() &&
                      (it->second.first == Side::X ? pr.x.contains(it->second.second)
                                                   : pr.y.contains(it->second.second));
        if (!inside) throw ForgeError("gadget " + std::to_string(q) + " leaves its pair");
      }
    }
    if (g[q].d < 1 || g[q].red->length() < g[q].blue->length() + g[q].d) {
      throw ForgeError("gadget " + std::to_string(q) + " does not realize its gap");
    }
    dsum += g[q].d;
  }

  const std::size_t L = (t - 1) / 2;
  std::vector<RouteRef> blue(L + 1), red(L + 1);
  for (std::size_t s = 0; s < L; ++s) {
    const auto &a = p[2 * s], &b = p[2 * s + 1];
    std::uint32_t sx = s == 0 ? 0 : p[2 * s - 1].x.hi;
    auto lead = xrun(sp, sx, a.x.lo);
    auto mid = yrun(sp, a.y.lo, b.y.hi);
    blue[s] = cat({lead, g[2 * s].blue, mid, RouteNode::reverse(g[2 * s + 1].blue)});
    red[s] = cat({lead, g[2 * s].red, mid, RouteNode::reverse(g[2 * s + 1].red)});
  }
  {
    const auto& a = p[t - 1];
    std::uint32_t sx = L == 0 ? 0 : p[t - 2].x.hi;
    auto lead = xrun(sp, sx, a.x.lo);
    auto tail = yrun(sp, a.y.lo, 0);
    blue[L] = cat({lead, g[t - 1].blue, tail});
    red[L] = cat({lead, g[t - 1].red, tail});
  }
  PathFamily fam;
  fam.paths = increasing_set(staircase(blue, red));
  fam.paths.gap_lo = 1;
  fam.paths.gap_hi = 2 * D;
  fam.D = D;
  fam.spread_floor = dsum;
  return fam;
}

DistantPair distant_paths(const SectionPair& sp, Anchor anchor) {
  if (anchor == Anchor::Bottom) return distant_paths(flipped(sp, true, true), Anchor::Top);
  if (sp.m() < 12) {
    throw ForgeError("distant paths need at least 12 chords, got " + std::to_string(sp.m()));
  }
  if (!is_x_matching(sp)) throw ForgeError("an X vertex carries more than one chord");

  std::vector<RouteRef> cands;
  // Shortest and longest trivial paths are always available.
  auto by_len = [&](const PairChord& a, const PairChord& b) { return plen(a) < plen(b); };
  auto [cmin, cmax] = std::minmax_element(sp.chords.begin(), sp.chords.end(), by_len);
  cands.push_back(trivial_path(sp, *cmin));
  cands.push_back(trivial_path(sp, *cmax));

  Extraction ex = interlacing_pair_extraction(sp);
  if (ex.residue) {
    const auto& fam = ex.family.chords;
    if (fam.size() >= 3) {
      std::uint64_t lo = UINT64_MAX, hi = 0;
      for (const auto& c : fam) lo = std::min(lo, plen(c)), hi = std::max(hi, plen(c));
      auto lad = rung_ladder_paths(sp, fam, hi - lo + 1);
      cands.push_back(lad.paths.entries.front().witness);
      cands.push_back(lad.paths.entries.back().witness);
    }
  } else {
    std::vector<ExtractedPair> pairs = ex.pairs;
    std::sort(pairs.begin(), pairs.end(), [](const ExtractedPair& a, const ExtractedPair& b) {
      return a.upper.xi < b.upper.xi;
    });
    if (pairs.size() % 2 == 0) {
      auto it = std::min_element(pairs.begin(), pairs.end(),
                                 [](const ExtractedPair& a, const ExtractedPair& b) { return a.d < b.d; });
      pairs.erase(it);
    }
    // pairs is top-first; the collection wants bottom-to-top.
    PairCollection coll;
    coll.mode = CollectionMode::Interlacing;
    std::vector<Gadget> gadgets;
    std::uint64_t D = 0;
    for (std::size_t q = pairs.size(); q-- > 0;) {
      const auto& e = pairs[q];
      const auto &up = e.upper, &lo = e.lower;
      SubPair p{{up.xi, lo.xi}, {up.yi, lo.yi}};
      coll.pairs.push_back(p);
      D = std::max<std::uint64_t>(D, std::uint64_t{p.x.size()} + p.y.size());
      Gadget g;
      g.d = e.d;
      if (q % 2 == 0) {
        g.blue = hop(sp, up);
        g.red = cat({xrun(sp, up.xi, lo.xi), hop(sp, lo), yrun(sp, lo.yi, up.yi)});
      } else {
        g.blue = hop(sp, lo);
        g.red = cat({xrun(sp, lo.xi, up.xi), hop(sp, up), yrun(sp, up.yi, lo.yi)});
      }
      gadgets.push_back(std::move(g));
    }
    auto fam = stitched_paths(sp, coll, gadgets, D);
    cands.push_back(fam.paths.entries.front().witness);
    cands.push_back(fam.paths.entries.back().witness);
  }
  auto shortest = *std::min_element(cands.begin(), cands.end(), [](const RouteRef& a, const RouteRef& b) {
    return a->length() < b->length();
  });
  auto longest = *std::max_element(cands.begin(), cands.end(), [](const RouteRef& a, const RouteRef& b) {
    return a->length() < b->length();
  });
  return {shortest, longest};
}

PathFamily close_length_paths(const SectionPair& sp, const std::vector<PairChord>& E,
                              IndexRange J, const ForgeParams& params) {
  if (J.lo > J.hi) throw ForgeError("empty length interval");
  if (!is_x_matching(sp)) throw ForgeError("an X vertex carries more than one chord");
  SectionPair se = sp;
  se.chords = E;
  std::sort(se.chords.begin(), se.chords.end());
  se.chords.erase(std::unique(se.chords.begin(), se.chords.end()), se.chords.end());
  for (const auto& c : se.chords) {
    if (!sp.contains(c)) throw ForgeError("chord of E not in the section pair");
    if (plen(c) < J.lo || plen(c) > J.hi) {
      throw ForgeError("chord length " + std::to_string(plen(c)) + " outside J");
    }
  }
  const std::uint64_t jw = J.size();
  const std::size_t e = se.chords.size();
  PathFamily out;
  if (e == 0) {
    out.diagnostic = "no chords";
    return out;
  }
  if (e <= jw) {
    auto r = trivial_path(se, se.chords.front());
    out.paths = LengthSet::singleton(r->length(), r);
    out.diagnostic = "|E| <= |J|, single path";
    return out;
  }

  // Blocks of |J| vertices counted from the bottom of X, starting at 1.
  const std::uint32_t nx = static_cast<std::uint32_t>(se.x.size());
  const std::uint32_t nblocks = static_cast<std::uint32_t>((nx + jw - 1) / jw);
  std::vector<std::vector<PairChord>> in_block(nblocks + 1);
  for (const auto& c : se.chords) in_block[(nx - 1 - c.xi) / jw + 1].push_back(c);
  std::size_t even = 0, odd = 0;
  for (std::uint32_t b = 1; b <= nblocks; ++b) (b % 2 == 0 ? even : odd) += in_block[b].size();
  const std::uint32_t parity = even >= odd ? 0 : 1;
  auto block_x = [&](std::uint32_t b) {
    std::uint32_t hi = nx - 1 - (b - 1) * static_cast<std::uint32_t>(jw);
    std::uint32_t lo = hi + 1 >= jw ? hi + 1 - static_cast<std::uint32_t>(jw) : 0;
    return IndexRange{lo, hi};
  };

  const std::uint64_t target =
      std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(params.theta_lo * jw)));
  std::optional<PathFamily> sparse, dense;

  // Sparse blocks: one chord each, then the ladder.
  {
    std::vector<PairChord> picks;
    std::size_t sum = 0;
    for (std::uint32_t b = 1; b <= nblocks; ++b) {
      if (b % 2 != parity) continue;
      const auto& v = in_block[b];
      if (!v.empty() && v.size() < 12) picks.push_back(v.front()), sum += v.size();
    }
    if (4 * sum >= e && picks.size() >= 3) {
      try {
        sparse = rung_ladder_paths(se, picks, jw);
      } catch (const ForgeError&) {
        sparse.reset();
      }
    }
  }

  // Dense blocks: distant-path gadgets, then stitching.
  {
    struct Dense {
      std::uint32_t block;
      SubPair p;
      SectionPair sub;
    };
    std::vector<Dense> ds;
    std::size_t sum = 0;
    for (std::uint32_t b = 1; b <= nblocks; ++b) {
      if (b % 2 != parity || in_block[b].size() < 12) continue;
      sum += in_block[b].size();
      std::uint32_t ylo = UINT32_MAX, yhi = 0;
      for (const auto& c : in_block[b]) ylo = std::min(ylo, c.yi), yhi = std::max(yhi, c.yi);
      SubPair p{block_x(b), {ylo, yhi}};
      ds.push_back({b, p, subpair(se, p.x, p.y)});
    }
    if (4 * sum >= e && !ds.empty()) {
      // ds is bottom-to-top. Gadget pairs need a positive gap.
      std::vector<std::pair<DistantPair, DistantPair>> dp;
      std::vector<Dense> kept;
      for (auto& d : ds) {
        auto top = distant_paths(d.sub, Anchor::Top);
        auto bot = distant_paths(d.sub, Anchor::Bottom);
        if (top.gap() >= 1 && bot.gap() >= 1) {
          dp.emplace_back(top, bot);
          kept.push_back(std::move(d));
        }
      }
      if (kept.size() % 2 == 0 && !kept.empty()) {
        kept.pop_back();
        dp.pop_back();
      }
      if (!kept.empty()) {
        PairCollection coll;
        coll.mode = CollectionMode::Interlacing;
        std::vector<Gadget> gadgets;
        std::uint64_t D = 0;
        const std::size_t t = kept.size();
        for (std::size_t i = 0; i < t; ++i) {
          const std::size_t q = t - 1 - i;  // position from the top
          coll.pairs.push_back(kept[i].p);
          D = std::max<std::uint64_t>(D, std::uint64_t{kept[i].p.x.size()} + kept[i].p.y.size());
          const auto& use = q % 2 == 0 ? dp[i].first : dp[i].second;
          gadgets.push_back({use.shorter, use.longer, use.gap()});
        }
        dense = stitched_paths(se, coll, gadgets, D);
      }
    }
  }

  auto finish = [&](PathFamily f) {
    std::uint64_t D = f.D;
    f.paths = thin_to_spacing(f.paths, target);
    if (f.paths.size() >= 2) {
      f.paths.gap_lo = target;
      f.paths.gap_hi = target + 2 * D - 1;
    }
    return f;
  };
  if (sparse) sparse = finish(*sparse);
  if (dense) dense = finish(*dense);
  if (sparse && (!dense || sparse->paths.size() >= dense->paths.size())) {
    out = *sparse;
    out.diagnostic = "sparse blocks";
  } else if (dense) {
    out = *dense;
    out.diagnostic = "dense blocks";
  } else {
    auto r = trivial_path(se, se.chords.front());
    out.paths = LengthSet::singleton(r->length(), r);
    out.diagnostic = "neither block class carries a quarter of E";
  }
  out.anchor = Anchor::Top;
  return out;
}

}  // namespace cyclespec
