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

#include "cyclespec/section.hpp"

#include <algorithm>
#include <unordered_map>

namespace cyclespec {

bool SectionPair::contains(const PairChord& c) const {
  return std::binary_search(chords.begin(), chords.end(), c);
}

namespace {

std::vector<Pos> arc_positions(std::size_t n, const ArcSpec& a) {
  if (a.count == 0) throw SectionError("empty arc");
  if (a.count > n) throw SectionError("arc longer than the cycle");
  if (a.start >= n) throw SectionError("arc start out of range");
  std::vector<Pos> out(a.count);
  Pos p = a.start;
  for (std::uint32_t i = 0; i < a.count; ++i) {
    out[i] = p;
    if (a.dir == Direction::Forward) {
      p = p + 1 == n ? 0 : p + 1;
    } else {
      p = p == 0 ? static_cast<Pos>(n - 1) : p - 1;
    }
  }
  return out;
}

}  // namespace

SectionPair make_section_pair(const HamGraph& g, ArcSpec x_arc, ArcSpec y_arc,
                              const ChordFilter& filter) {
  SectionPair sp;
  sp.host_n = g.n();
  sp.x = arc_positions(g.n(), x_arc);
  sp.y = arc_positions(g.n(), y_arc);
  std::unordered_map<Pos, std::uint32_t> yidx;
  yidx.reserve(sp.y.size() * 2);
  for (std::uint32_t i = 0; i < sp.y.size(); ++i) yidx.emplace(sp.y[i], i);
  for (Pos p : sp.x) {
    if (yidx.count(p)) throw SectionError("section arcs share vertex " + std::to_string(g.id(p)));
  }
  for (std::uint32_t i = 0; i < sp.x.size(); ++i) {
    for (Pos q : g.chord_neighbors(sp.x[i])) {
      auto it = yidx.find(q);
      if (it == yidx.end()) continue;
      if (filter && !filter(sp.x[i], q)) continue;
      sp.chords.push_back({i, it->second});
    }
  }
  std::sort(sp.chords.begin(), sp.chords.end());
  return sp;
}

std::uint64_t pair_chord_length(const SectionPair& sp, const PairChord& c) {
  if (!sp.contains(c)) {
    throw SectionError("unknown chord (" + std::to_string(c.xi) + "," + std::to_string(c.yi) +
                       ")");
  }
  return std::uint64_t{c.xi} + c.yi;
}

ChordRelation classify_chords(const PairChord& c1, const PairChord& c2) {
  if (c1.xi == c2.xi || c1.yi == c2.yi) return ChordRelation::SharesVertex;
  if ((c1.xi < c2.xi) != (c1.yi < c2.yi)) return ChordRelation::Interlacing;
  return ChordRelation::Parallel;
}

RouteRef side_run(const SectionPair& sp, Side side, std::uint32_t from, std::uint32_t to) {
  const auto& v = side == Side::X ? sp.x : sp.y;
  if (from >= v.size() || to >= v.size()) throw SectionError("side index out of range");
  if (from == to) return RouteNode::empty();
  const std::size_t n = sp.host_n;
  std::vector<Step> steps;
  const int inc = from < to ? 1 : -1;
  for (std::uint32_t i = from; i != to; i = static_cast<std::uint32_t>(i + inc)) {
    Pos p = v[i];
    Pos q = v[static_cast<std::uint32_t>(i + inc)];
    Direction d;
    if (q == (p + 1) % n) {
      d = Direction::Forward;
    } else if (p == (q + 1) % n) {
      d = Direction::Backward;
    } else {
      steps.push_back(ChordStep{p, q});
      continue;
    }
    if (!steps.empty()) {
      if (auto* a = std::get_if<Arc>(&steps.back()); a && a->dir == d && a->end == p) {
        a->end = q;
        continue;
      }
    }
    steps.push_back(Arc{p, q, d});
  }
  return RouteNode::leaf(n, std::move(steps));
}

RouteRef chord_hop(const SectionPair& sp, const PairChord& c) {
  if (c.xi >= sp.x.size() || c.yi >= sp.y.size()) throw SectionError("chord out of range");
  return RouteNode::leaf(sp.host_n, {ChordStep{sp.x[c.xi], sp.y[c.yi]}});
}

RouteRef trivial_path(const SectionPair& sp, const PairChord& c) {
  return RouteNode::concat({side_run(sp, Side::X, 0, c.xi), chord_hop(sp, c),
                            side_run(sp, Side::Y, c.yi, 0)});
}

SectionPair subpair(const SectionPair& sp, IndexRange xr, IndexRange yr, bool flip_y) {
  if (xr.lo > xr.hi || yr.lo > yr.hi) throw SectionError("empty subsection range");
  if (xr.hi >= sp.x.size() || yr.hi >= sp.y.size()) {
    throw SectionError("subsection range out of bounds");
  }
  SectionPair out;
  out.host_n = sp.host_n;
  out.x.assign(sp.x.begin() + xr.lo, sp.x.begin() + xr.hi + 1);
  out.y.assign(sp.y.begin() + yr.lo, sp.y.begin() + yr.hi + 1);
  if (flip_y) std::reverse(out.y.begin(), out.y.end());
  auto [b, e] = chords_in_x(sp, xr.lo, xr.hi);
  for (std::size_t i = b; i < e; ++i) {
    const auto& c = sp.chords[i];
    if (!yr.contains(c.yi)) continue;
    out.chords.push_back({c.xi - xr.lo, flip_y ? yr.hi - c.yi : c.yi - yr.lo});
  }
  if (flip_y) std::sort(out.chords.begin(), out.chords.end());
  return out;
}

SectionPair flipped(const SectionPair& sp, bool flip_x, bool flip_y) {
  SectionPair out = sp;
  const auto nx = static_cast<std::uint32_t>(sp.x.size());
  const auto ny = static_cast<std::uint32_t>(sp.y.size());
  if (flip_x) std::reverse(out.x.begin(), out.x.end());
  if (flip_y) std::reverse(out.y.begin(), out.y.end());
  for (auto& c : out.chords) {
    if (flip_x) c.xi = nx - 1 - c.xi;
    if (flip_y) c.yi = ny - 1 - c.yi;
  }
  std::sort(out.chords.begin(), out.chords.end());
  return out;
}

SectionPair prune_matching_x(const SectionPair& sp, const ChordPriority& priority) {
  auto better = [&](const PairChord& a, const PairChord& b) {
    if (priority) return priority(a, b);
    auto la = std::uint64_t{a.xi} + a.yi, lb = std::uint64_t{b.xi} + b.yi;
    if (la != lb) return la < lb;
    return a < b;
  };
  SectionPair out;
  out.host_n = sp.host_n;
  out.x = sp.x;
  out.y = sp.y;
  for (std::size_t i = 0; i < sp.chords.size();) {
    std::size_t j = i;
    PairChord best = sp.chords[i];
    while (j < sp.chords.size() && sp.chords[j].xi == sp.chords[i].xi) {
      if (better(sp.chords[j], best)) best = sp.chords[j];
      ++j;
    }
    out.chords.push_back(best);
    i = j;
  }
  return out;
}

bool is_x_matching(const SectionPair& sp) {
  for (std::size_t i = 1; i < sp.chords.size(); ++i) {
    if (sp.chords[i].xi == sp.chords[i - 1].xi) return false;
  }
  return true;
}

void check_collection(const SectionPair& sp, const PairCollection& coll) {
  for (std::size_t i = 0; i < coll.pairs.size(); ++i) {
    const auto& p = coll.pairs[i];
    if (p.x.lo > p.x.hi || p.y.lo > p.y.hi) {
      throw SectionError("pair " + std::to_string(i) + " has an empty range");
    }
    if (p.x.hi >= sp.x.size() || p.y.hi >= sp.y.size()) {
      throw SectionError("pair " + std::to_string(i) + " out of bounds");
    }
    if (i == 0) continue;
    const auto& q = coll.pairs[i - 1];
    if (!(q.x.lo > p.x.hi)) {
      throw SectionError("x-ranges of pairs " + std::to_string(i - 1) + " and " +
                         std::to_string(i) + " overlap or are not bottom-to-top");
    }
    bool ok = coll.mode == CollectionMode::Parallel ? q.y.lo > p.y.hi : q.y.hi < p.y.lo;
    if (!ok) {
      throw SectionError("y-ranges of pairs " + std::to_string(i - 1) + " and " +
                         std::to_string(i) + " violate the collection order");
    }
  }
}

std::pair<std::size_t, std::size_t> chords_in_x(const SectionPair& sp, std::uint32_t xlo,
                                                std::uint32_t xhi) {
  auto b = std::lower_bound(sp.chords.begin(), sp.chords.end(), PairChord{xlo, 0});
  auto e = std::lower_bound(b, sp.chords.end(), PairChord{xhi + 1, 0});
  return {static_cast<std::size_t>(b - sp.chords.begin()),
          static_cast<std::size_t>(e - sp.chords.begin())};
}

std::size_t count_chords(const SectionPair& sp, const SubPair& p) {
  auto [b, e] = chords_in_x(sp, p.x.lo, p.x.hi);
  std::size_t c = 0;
  for (std::size_t i = b; i < e; ++i) c += p.y.contains(sp.chords[i].yi);
  return c;
}

}  // namespace cyclespec
