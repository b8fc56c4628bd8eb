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


#include "cyclespec/engine.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "cyclespec/decomposition.hpp"

namespace cyclespec {

namespace {

std::uint64_t fwd_dist(std::size_t n, Pos a, Pos b) { return (b + n - a) % n; }

double log2n(std::size_t n) { return std::log2(std::max<double>(n, 2)); }

}  // namespace

std::vector<std::size_t> good_counts_by_offset(const std::vector<Pos>& chosen, std::uint64_t ell) {
  const std::size_t n = chosen.size();
  const std::uint64_t B = 4 * ell, H = 2 * ell;
  if (ell == 0 || B > n) throw EngineError("block size does not fit the cycle");
  const std::size_t s = n / B;
  // diff over offsets, circular.
  std::vector<std::int64_t> diff(n + 1, 0);
  auto add = [&](std::int64_t lo, std::uint64_t count) {
    lo = ((lo % static_cast<std::int64_t>(n)) + static_cast<std::int64_t>(n)) % static_cast<std::int64_t>(n);
    std::uint64_t end = static_cast<std::uint64_t>(lo) + count;
    if (end <= n) {
      diff[lo] += 1;
      diff[end] -= 1;
    } else {
      diff[lo] += 1;
      diff[n] -= 1;
      diff[0] += 1;
      diff[end - n] -= 1;
    }
  };
  for (Pos v = 0; v < n; ++v) {
    const Pos w = chosen[v];
    // The block holds v and w along one of the two forward arcs between them.
    for (auto [p, L] : {std::pair<Pos, std::uint64_t>{v, fwd_dist(n, v, w)},
                        std::pair<Pos, std::uint64_t>{w, fwd_dist(n, w, v)}}) {
      if (L == 0 || L >= B) continue;
      // Start p at offset u inside its block: first half, end in second half.
      std::uint64_t ulo = L >= H ? 0 : H - L;
      std::uint64_t uhi = std::min<std::uint64_t>(H - 1, B - 1 - L);
      if (ulo > uhi) continue;
      for (std::size_t j = 0; j < s; ++j) {
        // r_p = (p - o) mod n in [jB + ulo, jB + uhi]  <=>  o in [p - jB - uhi, p - jB - ulo].
        add(static_cast<std::int64_t>(p) - static_cast<std::int64_t>(j * B + uhi), uhi - ulo + 1);
      }
    }
  }
  std::vector<std::size_t> out(n);
  std::int64_t acc = 0;
  for (std::size_t o = 0; o < n; ++o) out[o] = static_cast<std::size_t>(acc += diff[o]);
  return out;
}

ScaleSelection select_scale_and_blocks(const HamGraph& g, const EngineConfig& cfg) {
  const std::size_t n = g.n();
  if (n < cfg.min_n || n < 4) {
    throw InstanceTooSmall("n = " + std::to_string(n) + " is below the floor " +
                           std::to_string(std::max<std::size_t>(cfg.min_n, 4)));
  }
  ScaleSelection sel;
  sel.n = n;
  sel.chosen.resize(n);
  std::vector<std::uint64_t> clen(n, 0);
  for (Pos v = 0; v < n; ++v) {
    sel.chosen[v] = v;  // no chord
    for (Pos w : g.chord_neighbors(v)) {
      std::uint64_t len = cycle_span(n, v, w);
      if (sel.chosen[v] == v || len < clen[v] || (len == clen[v] && w < sel.chosen[v])) {
        sel.chosen[v] = w;
        clen[v] = len;
      }
    }
  }
  // Dyadic classes [2^i, 2^{i+1}] with 2^i <= n/4, plus [n/4, n/2].
  std::vector<std::pair<std::uint64_t, std::uint64_t>> classes;
  for (std::uint64_t lo = 1; 4 * lo <= n; lo *= 2) classes.emplace_back(lo, 2 * lo);
  classes.emplace_back(n / 4, n / 2);
  std::size_t best = 0, best_count = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::size_t count = 0;
    for (Pos v = 0; v < n; ++v) {
      if (sel.chosen[v] != v && clen[v] >= classes[c].first && clen[v] <= classes[c].second) ++count;
    }
    if (count >= best_count) {
      best = c;
      best_count = count;
    }
  }
  if (static_cast<double>(best_count) < static_cast<double>(n) / log2n(n)) {
    throw InstanceTooSmall("no length class reaches n/log2 n (best holds " +
                           std::to_string(best_count) + ")");
  }
  sel.ell = classes[best].first;
  sel.heavy_hi = classes[best].second;
  for (Pos v = 0; v < n; ++v) {
    if (sel.chosen[v] != v && clen[v] >= sel.ell && clen[v] <= sel.heavy_hi) sel.heavy.push_back(v);
  }
  const std::uint64_t B = 4 * sel.ell, H = 2 * sel.ell;
  auto counts = good_counts_by_offset(sel.chosen, sel.ell);
  sel.offset = static_cast<Pos>(std::max_element(counts.begin(), counts.end()) - counts.begin());
  sel.s = n / B;
  sel.good.assign(sel.s, {});
  for (Pos v = 0; v < n; ++v) {
    const Pos w = sel.chosen[v];
    if (w == v) continue;
    std::uint64_t rv = fwd_dist(n, sel.offset, v), rw = fwd_dist(n, sel.offset, w);
    if (rv / B != rw / B || rv / B >= sel.s) continue;
    if ((rv % B < H) == (rw % B < H)) continue;
    sel.good[rv / B].push_back(v);
  }
  const double floor_i = static_cast<double>(sel.ell) / (4 * log2n(n));
  for (std::size_t j = 0; j < sel.s; ++j) {
    sel.good_total += sel.good[j].size();
    if (!sel.good[j].empty() && static_cast<double>(sel.good[j].size()) >= floor_i) sel.I.push_back(j);
  }
  if (sel.good_total != counts[sel.offset]) {
    throw EngineError("good-vertex count disagrees with the offset scan");
  }
  return sel;
}

Rerouted reroute_if_interlacing(const SectionPair& sp, const PairCollection& coll) {
  if (coll.mode == CollectionMode::Parallel) return {sp, coll};
  if (coll.pairs.size() < 3) {
    throw EngineError("rerouting needs at least 3 interlacing pairs, got " +
                      std::to_string(coll.pairs.size()));
  }
  check_collection(sp, coll);
  const std::size_t nx = sp.x.size(), ny = sp.y.size();
  const std::size_t n = sp.host_n;
  if (fwd_dist(n, sp.x.back(), sp.y.back()) != 1 && fwd_dist(n, sp.y.back(), sp.x.back()) != 1) {
    throw EngineError("rerouting needs the two bottoms to be cycle neighbours");
  }
  auto first_chord = [&](const SubPair& p) {
    auto [b, e] = chords_in_x(sp, p.x.lo, p.x.hi);
    for (std::size_t i = b; i < e; ++i) {
      if (p.y.contains(sp.chords[i].yi)) return sp.chords[i];
    }
    throw EngineError("interlacing pair without a chord");
  };
  const PairChord c1 = first_chord(coll.pairs[0]);
  const PairChord c2 = first_chord(coll.pairs[1]);
  // Y' top to bottom: Y[0..y1], X[x1..bottom], Y[bottom..y2].
  const std::uint32_t base = c1.yi + 1 + static_cast<std::uint32_t>(nx - c1.xi);
  auto map_y = [&](std::uint32_t u) { return base + static_cast<std::uint32_t>(ny - 1 - u); };
  Rerouted out;
  SectionPair& r = out.sp;
  r.host_n = n;
  r.x.assign(sp.x.begin(), sp.x.begin() + c2.xi + 1);
  r.y.assign(sp.y.begin(), sp.y.begin() + c1.yi + 1);
  r.y.insert(r.y.end(), sp.x.begin() + c1.xi, sp.x.end());
  for (std::size_t u = ny; u-- > c2.yi;) r.y.push_back(sp.y[u]);
  for (const auto& c : sp.chords) {
    if (c.xi > c2.xi) continue;
    if (c.yi <= c1.yi) {
      r.chords.push_back(c);
    } else if (c.yi >= c2.yi) {
      r.chords.push_back({c.xi, map_y(c.yi)});
    }
  }
  std::sort(r.chords.begin(), r.chords.end());
  out.coll.mode = CollectionMode::Parallel;
  for (std::size_t i = 2; i < coll.pairs.size(); ++i) {
    const auto& p = coll.pairs[i];
    if (p.y.lo < c2.yi) throw EngineError("pair " + std::to_string(i) + " reaches above y2");
    out.coll.pairs.push_back({p.x, IndexRange{map_y(p.y.hi), map_y(p.y.lo)}});
  }
  check_collection(r, out.coll);
  return out;
}

Dichotomy dichotomy_step(const SectionPair& sub, std::size_t k, std::size_t i, double eps) {
  if (k == 0) throw EngineError("dichotomy needs k > 0");
  if (sub.m() != k) {
    throw EngineError("dichotomy expects exactly " + std::to_string(k) + " chords, got " +
                      std::to_string(sub.m()));
  }
  const double kd = static_cast<double>(k);
  Dichotomy out;
  out.width = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(
                                             std::floor(std::pow(kd, static_cast<double>(i) * eps))));
  const double dense_floor = std::pow(kd, static_cast<double>(i + 1) * eps) / 4;
  std::vector<std::pair<std::uint64_t, PairChord>> by_len;
  for (const auto& c : sub.chords) by_len.emplace_back(pair_chord_length(sub, c), c);
  std::sort(by_len.begin(), by_len.end());
  // Greedy cover: each interval starts at the smallest uncovered length.
  struct Cover {
    std::uint64_t lo;
    std::size_t first, count;
  };
  std::vector<Cover> cover;
  for (std::size_t a = 0; a < by_len.size();) {
    std::size_t b = a;
    while (b < by_len.size() && by_len[b].first < by_len[a].first + out.width) ++b;
    cover.push_back({by_len[a].first, a, b - a});
    a = b;
  }
  std::size_t top = 0;
  for (std::size_t c = 1; c < cover.size(); ++c) {
    if (cover[c].count > cover[top].count) top = c;
  }
  if (static_cast<double>(cover[top].count) >= dense_floor) {
    out.spaced = false;
    out.interval = {static_cast<std::uint32_t>(cover[top].lo),
                    static_cast<std::uint32_t>(cover[top].lo + out.width - 1)};
    out.count = cover[top].count;
    return out;
  }
  out.spaced = true;
  std::vector<RouteRef> routes;
  for (std::size_t c = 0; c < cover.size(); c += 2) {
    routes.push_back(trivial_path(sub, by_len[cover[c].first].second));
  }
  out.lengths = LengthSet::from_routes(routes);
  if (out.lengths.size() >= 2) out.lengths.gap_lo = out.width;
  out.count = routes.size();
  return out;
}

namespace {

RouteRef cat(std::vector<RouteRef> parts) { return RouteNode::concat(std::move(parts)); }

LengthSet strip(const LengthSet& l) {
  LengthSet out = l;
  for (auto& e : out.entries) e.witness = nullptr;
  return out;
}

std::pair<std::uint64_t, std::uint64_t> gap_hull(const std::vector<LengthSet>& sets) {
  std::uint64_t lo = UINT64_MAX, hi = 0;
  for (const auto& s : sets) {
    if (s.size() < 2) continue;
    auto [a, b] = s.measured_gaps();
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  if (hi == 0) return {1, 1};
  return {lo, hi};
}

/// Densest window of `l` whose span stays below `size`.
LengthSet densest_window(const LengthSet& l, std::uint64_t size) {
  if (l.empty() || l.span() < size) return l;
  std::size_t best_a = 0, best_len = 0;
  for (std::size_t a = 0, b = 0; a < l.size(); ++a) {
    if (b < a) b = a;
    while (b + 1 < l.size() && l.entries[b + 1].length - l.entries[a].length < size) ++b;
    if (b - a + 1 > best_len) {
      best_len = b - a + 1;
      best_a = a;
    }
  }
  LengthSet out;
  out.entries.assign(l.entries.begin() + best_a, l.entries.begin() + best_a + best_len);
  out.certify_gaps();
  out.interval_size = size;
  return out;
}

// A sub-pair of the split taking part in one induction step, in the
// coordinates of the pair being split.
struct Used {
  SubPair u;
  bool type_a = true;
  PairChord fixed;
  IndexRange xh, yh;
  LengthSet v;  // paths across the flipped X'', Y''
};

class Zigzag {
 public:
  Zigzag(const SectionPair& psub, std::vector<Used> used) : p_(psub), used_(std::move(used)) {}

  const std::vector<Used>& used() const { return used_; }

  // Route from the top of X to the top of Y of the split pair; `w` joins
  // its X bottom to its Y bottom.
  RouteRef assemble(const std::vector<std::size_t>& pick, const RouteRef& w) const {
    const std::uint32_t nx = static_cast<std::uint32_t>(p_.x.size());
    const std::uint32_t ny = static_cast<std::uint32_t>(p_.y.size());
    const std::size_t r = used_.size();
    std::vector<RouteRef> parts;
    bool on_x = true;
    std::uint32_t cur = 0;
    for (std::size_t q = 0; q < r; ++q) {
      const auto& u = used_[q].u;
      if (q % 2 == 0) {
        parts.push_back(side_run(p_, Side::X, cur, u.x.lo));
        parts.push_back(piece_a(q, pick[q]));
        cur = u.y.hi;
      } else {
        parts.push_back(side_run(p_, Side::Y, cur, u.y.lo));
        parts.push_back(RouteNode::reverse(piece_b(q, pick[q])));
        cur = u.x.hi;
      }
      on_x = !on_x;
    }
    if (on_x) {
      parts.push_back(side_run(p_, Side::X, cur, nx - 1));
      parts.push_back(w);
      cur = ny - 1;
    } else {
      parts.push_back(side_run(p_, Side::Y, cur, ny - 1));
      parts.push_back(RouteNode::reverse(w));
      cur = nx - 1;
    }
    for (std::size_t q = r; q-- > 0;) {
      const auto& u = used_[q].u;
      if (q % 2 == 0) {
        parts.push_back(side_run(p_, Side::X, cur, u.x.hi));
        parts.push_back(piece_b(q, pick[q]));
        cur = u.y.lo;
      } else {
        parts.push_back(side_run(p_, Side::Y, cur, u.y.hi));
        parts.push_back(RouteNode::reverse(piece_a(q, pick[q])));
        cur = u.x.lo;
      }
    }
    parts.push_back(side_run(p_, Side::Y, cur, 0));
    return cat(std::move(parts));
  }

 private:
  RouteRef fixed_path(const Used& s, std::uint32_t xfrom, std::uint32_t yto) const {
    return cat({side_run(p_, Side::X, xfrom, s.fixed.xi), chord_hop(p_, s.fixed),
                side_run(p_, Side::Y, s.fixed.yi, yto)});
  }

  // X' top to Y' bottom.
  RouteRef piece_a(std::size_t q, std::size_t pick) const {
    const Used& s = used_[q];
    if (!s.type_a) return fixed_path(s, s.u.x.lo, s.u.y.hi);
    return cat({side_run(p_, Side::X, s.u.x.lo, s.xh.lo), s.v.entries[pick].witness,
                side_run(p_, Side::Y, s.yh.hi, s.u.y.hi)});
  }

  // X' bottom to Y' top.
  RouteRef piece_b(std::size_t q, std::size_t pick) const {
    const Used& s = used_[q];
    if (s.type_a) return fixed_path(s, s.u.x.hi, s.u.y.lo);
    return cat({side_run(p_, Side::X, s.u.x.hi, s.xh.hi), s.v.entries[pick].witness,
                side_run(p_, Side::Y, s.yh.lo, s.u.y.lo)});
  }

  const SectionPair& p_;
  std::vector<Used> used_;
};

// Choices of combine_gapped's entry `idx` over sets of the given sizes.
std::vector<std::size_t> staircase_choice(const std::vector<std::size_t>& sizes, std::size_t idx) {
  std::vector<std::size_t> pick(sizes.size(), 0);
  if (idx == 0) return pick;
  std::size_t rest = idx - 1;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (rest < sizes[i] - 1) {
      for (std::size_t h = 0; h < i; ++h) pick[h] = sizes[h] - 1;
      pick[i] = rest + 1;
      return pick;
    }
    rest -= sizes[i] - 1;
  }
  throw EngineError("combination index out of range");
}

}  // namespace

namespace {

struct StepResult {
  LengthSet fam;  // top-to-top paths of the split pair
  bool early = false;
  std::string what;
};

void note(std::vector<std::string>* trace, const std::string& line) {
  if (trace) trace->push_back(line);
}

// Paths of the level-i family `prev` (living in coll.pairs[i-1]) extended
// through coll.pairs[i].
std::optional<StepResult> induction_step(const SectionPair& sp, const PairCollection& coll,
                                         std::size_t i, const LengthSet& prev, std::size_t m,
                                         double eps, const EngineConfig& cfg,
                                         std::vector<std::string>* trace) {
  const SubPair& P = coll.pairs[i];
  const SubPair& below = coll.pairs[i - 1];
  const std::string lvl = "level " + std::to_string(i + 1) + ": ";
  SectionPair psub = subpair(sp, P.x, P.y);
  if (psub.m() < 2) {
    note(trace, lvl + "pair has fewer than 2 chords, stop");
    return std::nullopt;
  }
  SplitOutcome so = splitting_process(psub);
  if (so.kase == SplitCase::HighDegreeVertex) {
    const SplitEvidence* ev = &so.evidence.front();
    for (const auto& e : so.evidence) {
      if (e.count > ev->count) ev = &e;
    }
    std::vector<RouteRef> star;
    for (const auto& c : psub.chords) {
      if ((ev->side == Side::X ? c.xi : c.yi) == ev->vertex) star.push_back(trivial_path(psub, c));
    }
    StepResult out{LengthSet::from_routes(star), true, "star harvest"};
    note(trace, lvl + "high-degree vertex, star of " + std::to_string(star.size()) + " chords");
    return out;
  }
  // Chords interlaced by each evidence chord, split by side.
  struct Cand {
    std::size_t j;
    bool type_a;
    std::vector<PairChord> chords;
  };
  std::vector<Cand> cands;
  for (std::size_t j = 0; j < so.collection.pairs.size(); ++j) {
    const SubPair& u = so.collection.pairs[j];
    const PairChord xj = so.evidence[j].chord;
    std::vector<PairChord> ca, cb;
    auto [b, e] = chords_in_x(psub, u.x.lo, u.x.hi);
    for (std::size_t h = b; h < e; ++h) {
      const PairChord& c = psub.chords[h];
      if (!u.y.contains(c.yi)) continue;
      if (c.xi < xj.xi && c.yi > xj.yi) ca.push_back(c);
      if (c.xi > xj.xi && c.yi < xj.yi) cb.push_back(c);
    }
    if (ca.empty() && cb.empty()) continue;
    if (ca.size() >= cb.size()) {
      cands.push_back({j, true, std::move(ca)});
    } else {
      cands.push_back({j, false, std::move(cb)});
    }
  }
  if (cands.empty()) {
    note(trace, lvl + "no interlaced chords, stop");
    return std::nullopt;
  }
  // Dyadic bucket carrying the most chords.
  std::map<unsigned, std::size_t> weight;
  for (const auto& c : cands) weight[std::bit_width(c.chords.size()) - 1] += c.chords.size();
  unsigned bucket = weight.begin()->first;
  for (const auto& [a, w] : weight) {
    if (w > weight[bucket]) bucket = a;
  }
  const std::size_t k = std::size_t{1} << bucket;
  std::vector<Used> spaced, dense;
  std::vector<Dichotomy> dense_d;
  std::vector<SectionPair> dense_sub;
  std::size_t in_bucket = 0;
  for (auto& c : cands) {
    if (std::bit_width(c.chords.size()) - 1 != bucket) continue;
    ++in_bucket;
    std::sort(c.chords.begin(), c.chords.end(), [&](const PairChord& a, const PairChord& b) {
      auto la = pair_chord_length(psub, a), lb = pair_chord_length(psub, b);
      return la != lb ? la < lb : a < b;
    });
    c.chords.resize(k);
    Used s;
    s.u = so.collection.pairs[c.j];
    s.type_a = c.type_a;
    s.fixed = so.evidence[c.j].chord;
    s.xh = {UINT32_MAX, 0};
    s.yh = {UINT32_MAX, 0};
    for (const auto& h : c.chords) {
      s.xh.lo = std::min(s.xh.lo, h.xi);
      s.xh.hi = std::max(s.xh.hi, h.xi);
      s.yh.lo = std::min(s.yh.lo, h.yi);
      s.yh.hi = std::max(s.yh.hi, h.yi);
    }
    SectionPair sub2 = s.type_a ? subpair(psub, s.xh, s.yh, true)
                                : flipped(subpair(psub, s.xh, s.yh), true, false);
    sub2.chords.clear();
    for (const auto& h : c.chords) {
      if (s.type_a) {
        sub2.chords.push_back({h.xi - s.xh.lo, s.yh.hi - h.yi});
      } else {
        sub2.chords.push_back({s.xh.hi - h.xi, h.yi - s.yh.lo});
      }
    }
    std::sort(sub2.chords.begin(), sub2.chords.end());
    Dichotomy d = dichotomy_step(sub2, k, i, eps);
    if (d.spaced) {
      s.v = d.lengths;
      spaced.push_back(std::move(s));
    } else {
      dense.push_back(std::move(s));
      dense_d.push_back(std::move(d));
      dense_sub.push_back(std::move(sub2));
    }
  }
  note(trace, lvl + "k=" + std::to_string(k) + ", " + std::to_string(in_bucket) + " sub-pairs, " +
                  std::to_string(spaced.size()) + " spaced, " + std::to_string(dense.size()) +
                  " dense");
  const bool early = 2 * spaced.size() >= in_bucket;
  std::vector<Used> used;
  if (early) {
    used = std::move(spaced);
  } else {
    ForgeParams fp{cfg.c_distant, cfg.theta_lo, cfg.theta_hi, cfg.c_close};
    for (std::size_t q = 0; q < dense.size(); ++q) {
      const SectionPair& sub2 = dense_sub[q];
      const IndexRange J = dense_d[q].interval;
      std::vector<PairChord> E;
      for (const auto& c : sub2.chords) {
        if (J.contains(static_cast<std::uint32_t>(pair_chord_length(sub2, c)))) E.push_back(c);
      }
      try {
        dense[q].v = close_length_paths(sub2, E, J, fp).paths;
      } catch (const ForgeError& err) {
        note(trace, lvl + "close-length paths failed (" + err.what() + "), single path");
        dense[q].v = LengthSet::from_routes({trivial_path(sub2, E.front())});
      }
      if (dense[q].v.empty()) dense[q].v = LengthSet::from_routes({trivial_path(sub2, E.front())});
    }
    used = std::move(dense);
  }
  // Collection order is bottom-to-top; the zig-zag runs top to bottom.
  std::reverse(used.begin(), used.end());
  std::vector<LengthSet> sets;
  std::vector<std::size_t> sizes;
  std::uint64_t vmin = 0;
  for (const auto& u : used) {
    sets.push_back(strip(u.v));
    sizes.push_back(u.v.size());
    vmin += u.v.min();
  }
  Zigzag zz(psub, std::move(used));
  auto w_route = [&](std::size_t b) {
    return cat({side_run(sp, Side::X, P.x.hi, below.x.lo), prev.entries[b].witness,
                side_run(sp, Side::Y, below.y.lo, P.y.hi)});
  };
  LengthSet comb;
  if (sets.empty()) {
    comb = LengthSet::singleton(0);
  } else {
    auto [ga, gb] = gap_hull(sets);
    comb = combine_gapped(sets, ga, gb);
  }
  const std::uint64_t target = std::max<std::uint64_t>(
      static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(m), i * eps))),
      prev.span() + 1);
  LengthSet thin = thin_to_spacing(comb, target);
  LengthSet prod = spread_close_product(thin, strip(prev), thin.span() + 1, prev.span() + 1);
  const std::vector<std::size_t> zero(sizes.size(), 0);
  const std::uint64_t c0 = zz.assemble(zero, w_route(0))->length() - vmin - prev.min();
  StepResult out;
  out.early = early;
  out.what = early ? "spaced branch" : "dense branch";
  out.fam.entries.reserve(prod.size());
  for (std::size_t idx = 0; idx < prod.size(); ++idx) {
    const std::size_t a = idx / prev.size(), b = idx % prev.size();
    const std::uint64_t la = thin.entries[a].length;
    auto it = std::lower_bound(comb.entries.begin(), comb.entries.end(), la,
                               [](const LengthEntry& e, std::uint64_t v) { return e.length < v; });
    const std::size_t ci = static_cast<std::size_t>(it - comb.entries.begin());
    std::vector<std::size_t> pick = sets.empty() ? zero : staircase_choice(sizes, ci);
    RouteRef route = zz.assemble(pick, w_route(b));
    const std::uint64_t len = prod.entries[idx].length + c0;
    if (route->length() != len) {
      throw EngineError(lvl + "assembled path has length " + std::to_string(route->length()) +
                        ", expected " + std::to_string(len));
    }
    out.fam.entries.push_back({len, route});
  }
  out.fam.certify_gaps();
  out.fam.interval_size = prod.interval_size;
  note(trace, lvl + out.what + " gives " + std::to_string(out.fam.size()) + " lengths");
  return out;
}

}  // namespace

PathFamily many_lengths_over_parallel(const SectionPair& sp, const PairCollection& coll,
                                      const EngineConfig& cfg, std::vector<std::string>* trace) {
  if (coll.mode != CollectionMode::Parallel) throw EngineError("collection is not parallel");
  if (coll.pairs.empty()) throw EngineError("collection is empty");
  check_collection(sp, coll);
  if (!is_x_matching(sp)) throw EngineError("x-side is not a matching");
  std::size_t m = SIZE_MAX;
  for (const auto& p : coll.pairs) m = std::min(m, count_chords(sp, p));
  const SubPair& first = coll.pairs.front();
  auto extend = [&](const LengthSet& l, const SubPair& p) {
    LengthSet out = wrapped(l, side_run(sp, Side::X, 0, p.x.lo), side_run(sp, Side::Y, p.y.lo, 0));
    out.certify_gaps();
    return out;
  };
  PathFamily fam;
  fam.anchor = Anchor::Top;
  if (m < cfg.min_m) {
    std::vector<RouteRef> routes;
    std::vector<char> seen;
    for (const auto& c : sp.chords) {
      if (!first.x.contains(c.xi) || !first.y.contains(c.yi)) continue;
      std::uint64_t len = pair_chord_length(sp, c);
      if (len >= seen.size()) seen.resize(len + 1, 0);
      if (seen[len]) continue;
      seen[len] = 1;
      routes.push_back(trivial_path(sp, c));
    }
    fam.paths = LengthSet::from_routes(routes);
    fam.paths.certify_gaps();
    fam.spread_floor = fam.paths.span();
    fam.diagnostic = "m below floor, trivial paths of the lowest pair";
    note(trace, "m=" + std::to_string(m) + " below " + std::to_string(cfg.min_m) + ", fallback");
    return fam;
  }
  const double t_floor = std::sqrt(std::log2(static_cast<double>(m)));
  if (static_cast<double>(coll.pairs.size()) < t_floor) {
    throw EngineError("t = " + std::to_string(coll.pairs.size()) + " is below sqrt(log2 m) = " +
                      std::to_string(t_floor));
  }
  const double eps = cfg.eps_for(m);
  const std::size_t levels = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(1 / eps)));
  note(trace, "m=" + std::to_string(m) + " t=" + std::to_string(coll.pairs.size()) +
                  " eps=" + std::to_string(eps) + " levels=" + std::to_string(levels));

  // Level 1: the most frequent chord length of the lowest pair; chords of
  // equal length interlace, so they form a ladder.
  SectionPair p0 = subpair(sp, first.x, first.y);
  std::map<std::uint64_t, std::vector<PairChord>> by_len;
  for (const auto& c : p0.chords) by_len[pair_chord_length(p0, c)].push_back(c);
  auto top = by_len.begin();
  for (auto it = by_len.begin(); it != by_len.end(); ++it) {
    if (it->second.size() > top->second.size()) top = it;
  }
  LengthSet level;
  if (top->second.size() >= 3) {
    level = rung_ladder_paths(p0, top->second, 1).paths;
  } else {
    level = LengthSet::from_routes({trivial_path(p0, top->second.front())});
  }
  note(trace, "level 1: length " + std::to_string(top->first) + " x" +
                  std::to_string(top->second.size()) + ", ladder of " +
                  std::to_string(level.size()));
  struct Candidate {
    LengthSet paths;
    std::string what;
  };
  std::vector<Candidate> cands{{extend(level, first), "base ladder"}};
  for (std::size_t i = 1; i < levels && i < coll.pairs.size(); ++i) {
    auto step = induction_step(sp, coll, i, level, m, eps, cfg, trace);
    if (!step) break;
    cands.push_back({extend(step->fam, coll.pairs[i]),
                     step->what + " at level " + std::to_string(i + 1)});
    if (step->early) break;
    const double size = cfg.C_induction * std::pow(static_cast<double>(m), (i + 1) * eps);
    level = densest_window(step->fam, static_cast<std::uint64_t>(std::max(1.0, std::floor(size))));
    if (level.size() < step->fam.size()) {
      note(trace, "level " + std::to_string(i + 1) + ": trimmed to " + std::to_string(level.size()));
    }
  }
  const Candidate* best = &cands.front();
  for (const auto& c : cands) {
    if (c.paths.size() > best->paths.size()) best = &c;
  }
  fam.paths = best->paths;
  fam.spread_floor = fam.paths.span();
  fam.diagnostic = best->what;
  return fam;
}

namespace {

struct BlockResult {
  LengthSet paths;  // block start to block end
  std::vector<std::pair<std::string, std::string>> stats;
};

BlockResult block_family(const HamGraph& g, const ScaleSelection& sel, std::size_t j,
                         const EngineConfig& cfg) {
  const std::size_t n = g.n();
  const std::uint64_t ell = sel.ell;
  const Pos b = sel.block_start(j);
  const Pos e = static_cast<Pos>((b + 4 * ell - 1) % n);
  const std::string key = "block." + std::to_string(j) + ".";
  std::vector<char> good(n, 0);
  std::size_t first_half = 0;
  for (Pos v : sel.good[j]) {
    good[v] = 1;
    if (fwd_dist(n, b, v) < 2 * ell) ++first_half;
  }
  const bool swap = 2 * first_half < sel.good[j].size();
  ArcSpec xa{b, static_cast<std::uint32_t>(2 * ell), Direction::Forward};
  ArcSpec ya{e, static_cast<std::uint32_t>(2 * ell), Direction::Backward};
  if (swap) std::swap(xa, ya);
  SectionPair sp = make_section_pair(g, xa, ya, [&](Pos x, Pos y) {
    return good[x] && sel.chosen[x] == y;
  });
  BlockResult out;
  out.stats.emplace_back(key + "chords", std::to_string(sp.m()));
  // Baseline: one trivial path per pair length, and the block arc itself.
  std::vector<RouteRef> routes;
  std::vector<char> seen(4 * ell, 0);
  for (const auto& c : sp.chords) {
    auto len = pair_chord_length(sp, c);
    if (seen[len]) continue;
    seen[len] = 1;
    routes.push_back(trivial_path(sp, c));
  }
  std::string branch = "baseline";
  if (sp.m() >= cfg.min_m) {
    try {
      PairCollection coll = initial_split(sp, cfg.k_for(n), cfg.c_split);
      Rerouted rr = reroute_if_interlacing(sp, coll);
      PathFamily fam = many_lengths_over_parallel(rr.sp, rr.coll, cfg);
      for (const auto& en : fam.paths.entries) routes.push_back(en.witness);
      branch = fam.diagnostic;
      out.stats.emplace_back(key + "lemma", std::to_string(fam.paths.size()));
    } catch (const HeavyVertexError& err) {
      // Distinct trivial-path lengths of the star are already in the baseline.
      branch = "star harvest";
    } catch (const std::exception& err) {
      branch = std::string("baseline after error: ") + err.what();
    }
  }
  if (swap) {
    for (auto& r : routes) r = RouteNode::reverse(r);
  }
  routes.push_back(RouteNode::leaf(n, {Arc{b, e, Direction::Forward}}));
  out.paths = LengthSet::from_routes(routes);
  out.stats.emplace_back(key + "branch", branch);
  out.stats.emplace_back(key + "family", std::to_string(out.paths.size()));
  return out;
}

}  // namespace

SpectrumReport full_spectrum(const HamGraph& g, const EngineConfig& cfg) {
  cfg.validate();
  const std::size_t n = g.n();
  SpectrumReport rep;
  rep.n = n;
  rep.config = cfg;
  ScaleSelection sel = select_scale_and_blocks(g, cfg);
  auto stat = [&](const std::string& k, auto v) {
    if constexpr (std::is_convertible_v<decltype(v), std::string>) {
      rep.stats.emplace_back(k, v);
    } else {
      rep.stats.emplace_back(k, std::to_string(v));
    }
  };
  stat("ell", sel.ell);
  stat("heavy", sel.heavy.size());
  stat("offset", sel.offset);
  stat("blocks", sel.s);
  stat("good", sel.good_total);
  stat("I", sel.I.size());

  std::vector<BlockResult> results(sel.I.size());
  unsigned jobs = cfg.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.jobs;
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, sel.I.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&]() {
    for (std::size_t q; (q = next.fetch_add(1)) < sel.I.size();) {
      try {
        results[q] = block_family(g, sel, sel.I[q], cfg);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<RouteRef> cycles{RouteNode::leaf(n, {Arc{0, 0, Direction::Forward}})};
  if (!results.empty()) {
    std::vector<LengthSet> sets;
    for (std::size_t q = 0; q < results.size(); ++q) {
      for (auto& kv : results[q].stats) rep.stats.push_back(kv);
      const Pos e = static_cast<Pos>((sel.block_start(sel.I[q]) + 4 * sel.ell - 1) % n);
      const Pos to = sel.block_start(sel.I[(q + 1) % sel.I.size()]);
      sets.push_back(wrapped(results[q].paths, nullptr,
                             RouteNode::leaf(n, {Arc{e, to, Direction::Forward}})));
    }
    auto [a, b] = gap_hull(sets);
    LengthSet comb = combine_gapped(sets, a, b);
    for (const auto& en : comb.entries) cycles.push_back(en.witness);
  }
  rep.lengths = LengthSet::from_routes(cycles);
  RouteChecker checker(g);
  for (const auto& en : rep.lengths.entries) {
    Witness w = checker.realize(to_descriptor(en.witness, true));
    if (w.length != en.length) {
      throw EngineError("cycle witness realizes to length " + std::to_string(w.length) +
                        ", recorded " + std::to_string(en.length));
    }
  }
  stat("lengths", rep.lengths.size());
  return rep;
}

}  // namespace cyclespec
