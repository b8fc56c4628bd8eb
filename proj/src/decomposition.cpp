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

#include "cyclespec/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace cyclespec {

namespace {

std::string heavy_message(Side side, std::uint32_t index, std::size_t degree, double limit) {
  std::ostringstream os;
  os << (side == Side::X ? "x" : "y") << "-vertex " << index << " carries " << degree
     << " chords, above the limit " << limit;
  return os.str();
}

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : t_(n + 1, 0) {}
  void add(std::size_t i, std::int64_t v) {
    for (++i; i < t_.size(); i += i & (~i + 1)) t_[i] += v;
  }
  // Sum over [0, i].
  std::int64_t prefix(std::size_t i) const {
    std::int64_t s = 0;
    for (++i; i > 0; i -= i & (~i + 1)) s += t_[i];
    return s;
  }

 private:
  std::vector<std::int64_t> t_;
};

std::vector<PairChord> chords_inside(const SectionPair& sp, IndexRange xr, IndexRange yr) {
  std::vector<PairChord> out;
  auto [b, e] = chords_in_x(sp, xr.lo, xr.hi);
  for (std::size_t i = b; i < e; ++i) {
    if (yr.contains(sp.chords[i].yi)) out.push_back(sp.chords[i]);
  }
  return out;
}

// Expands chosen disjoint ranges (sorted top-first) to tile [0, len).
void fill_gaps(std::vector<IndexRange*>& ranges, std::uint32_t len) {
  std::sort(ranges.begin(), ranges.end(),
            [](const IndexRange* a, const IndexRange* b) { return a->lo < b->lo; });
  ranges.front()->lo = 0;
  ranges.back()->hi = len - 1;
  for (std::size_t i = 0; i + 1 < ranges.size(); ++i) {
    std::uint32_t gap = ranges[i + 1]->lo - ranges[i]->hi - 1;
    ranges[i]->hi += gap / 2;
    ranges[i + 1]->lo = ranges[i]->hi + 1;
  }
}

}  // namespace

HeavyVertexError::HeavyVertexError(Side side, std::uint32_t index, std::size_t degree,
                                   double limit)
    : DecompositionError(heavy_message(side, index, degree, limit)),
      side_(side),
      index_(index),
      degree_(degree) {}

std::vector<PairChord> longest_monotone(std::vector<PairChord> chords, Monotone relation) {
  std::sort(chords.begin(), chords.end());
  for (std::size_t i = 1; i < chords.size(); ++i) {
    if (chords[i].xi == chords[i - 1].xi) {
      throw DecompositionError("chords share x-vertex " + std::to_string(chords[i].xi));
    }
  }
  {
    std::vector<std::uint32_t> ys;
    for (const auto& c : chords) ys.push_back(c.yi);
    std::sort(ys.begin(), ys.end());
    auto d = std::adjacent_find(ys.begin(), ys.end());
    if (d != ys.end()) throw DecompositionError("chords share y-vertex " + std::to_string(*d));
  }
  const bool inc = relation == Monotone::AllParallel;
  auto key = [&](std::size_t i) -> std::int64_t {
    return inc ? std::int64_t{chords[i].yi} : -std::int64_t{chords[i].yi};
  };
  // Patience sorting with predecessor links.
  std::vector<std::size_t> tails;
  std::vector<std::size_t> prev(chords.size(), SIZE_MAX);
  for (std::size_t i = 0; i < chords.size(); ++i) {
    auto it = std::lower_bound(tails.begin(), tails.end(), key(i),
                               [&](std::size_t t, std::int64_t v) { return key(t) < v; });
    if (it != tails.begin()) prev[i] = *(it - 1);
    if (it == tails.end()) {
      tails.push_back(i);
    } else {
      *it = i;
    }
  }
  std::vector<PairChord> out;
  if (tails.empty()) return out;
  for (std::size_t i = tails.back(); i != SIZE_MAX; i = prev[i]) out.push_back(chords[i]);
  std::reverse(out.begin(), out.end());
  return out;
}

MonotoneFamily monotone_chord_family(const std::vector<PairChord>& chords, std::size_t k) {
  if (k == 0) throw DecompositionError("family size must be positive");
  const std::size_t floor = (k - 1) * (k - 1) + 1;
  auto par = longest_monotone(chords, Monotone::AllParallel);
  if (par.size() >= k) {
    par.resize(k);
    return {par, Monotone::AllParallel};
  }
  auto inter = longest_monotone(chords, Monotone::AllInterlacing);
  if (inter.size() < k) {
    if (chords.size() < floor) {
      throw DecompositionError("need at least " + std::to_string(floor) + " chords, got " +
                               std::to_string(chords.size()));
    }
    throw DecompositionError("no monotone family of size " + std::to_string(k));
  }
  inter.resize(k);
  return {inter, Monotone::AllInterlacing};
}

PairCollection initial_split(const SectionPair& sp, std::size_t k, double c_split) {
  if (k == 0) throw DecompositionError("k must be positive");
  const std::size_t m = sp.m();
  if (m == 0) throw DecompositionError("section pair has no chords");
  const double kk = static_cast<double>(k);
  const double limit = static_cast<double>(m) / (10 * kk * kk);
  std::vector<std::size_t> degx(sp.x.size(), 0), degy(sp.y.size(), 0);
  for (const auto& c : sp.chords) ++degx[c.xi], ++degy[c.yi];
  for (std::uint32_t i = 0; i < degx.size(); ++i) {
    if (static_cast<double>(degx[i]) > limit) throw HeavyVertexError(Side::X, i, degx[i], limit);
  }
  for (std::uint32_t i = 0; i < degy.size(); ++i) {
    if (static_cast<double>(degy[i]) > limit) throw HeavyVertexError(Side::Y, i, degy[i], limit);
  }

  // Minimal initial segments touching at least `limit` chords; the tail
  // touching fewer becomes the remainder segment.
  auto segment = [&](const std::vector<std::size_t>& deg, std::vector<IndexRange>& segs,
                     std::vector<std::uint32_t>& owner) {
    owner.assign(deg.size(), 0);
    std::size_t cur = 0;
    std::uint32_t start = 0;
    for (std::uint32_t i = 0; i < deg.size(); ++i) {
      cur += deg[i];
      owner[i] = static_cast<std::uint32_t>(segs.size());
      if (static_cast<double>(cur) >= limit && cur > 0) {
        segs.push_back({start, i});
        start = i + 1;
        cur = 0;
      }
    }
    if (start < deg.size()) segs.push_back({start, static_cast<std::uint32_t>(deg.size() - 1)});
    return start < deg.size();
  };
  std::vector<IndexRange> xs, ys;
  std::vector<std::uint32_t> ownx, owny;
  bool xrem = segment(degx, xs, ownx);
  segment(degy, ys, owny);
  const std::size_t s = xs.size() - (xrem ? 1 : 0);

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> cross;
  for (const auto& c : sp.chords) ++cross[{ownx[c.xi], owny[c.yi]}];
  const double thr = c_split * static_cast<double>(m) / (kk * kk * kk * kk);
  std::vector<std::vector<std::uint32_t>> adj(s);
  for (const auto& [key, cnt] : cross) {
    if (key.first < s && static_cast<double>(cnt) >= thr) adj[key.first].push_back(key.second);
  }

  // Kuhn's augmenting paths; the graph has at most 10k^2 left vertices.
  std::vector<std::int64_t> match_right(ys.size(), -1);
  std::vector<char> seen;
  std::function<bool(std::uint32_t)> augment = [&](std::uint32_t u) {
    for (auto v : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      if (match_right[v] < 0 || augment(static_cast<std::uint32_t>(match_right[v]))) {
        match_right[v] = u;
        return true;
      }
    }
    return false;
  };
  std::vector<PairChord> matched;
  for (std::uint32_t u = 0; u < s; ++u) {
    seen.assign(ys.size(), 0);
    augment(u);
  }
  for (std::uint32_t v = 0; v < ys.size(); ++v) {
    if (match_right[v] >= 0) matched.push_back({static_cast<std::uint32_t>(match_right[v]), v});
  }
  if (matched.size() < (k - 1) * (k - 1) + 1) {
    throw DecompositionError("auxiliary matching has " + std::to_string(matched.size()) +
                             " edges, fewer than " + std::to_string((k - 1) * (k - 1) + 1));
  }

  auto chain = longest_monotone(matched, Monotone::AllParallel);
  Monotone rel = Monotone::AllParallel;
  if (chain.size() < k) {
    chain = longest_monotone(matched, Monotone::AllInterlacing);
    rel = Monotone::AllInterlacing;
  }
  if (chain.size() < k) throw DecompositionError("no monotone family among matched segments");
  // Evenly spread picks along the chain, then widen to tile both sides.
  PairCollection coll;
  coll.mode = rel == Monotone::AllParallel ? CollectionMode::Parallel : CollectionMode::Interlacing;
  for (std::size_t r = 0; r < k; ++r) {
    std::size_t idx = k == 1 ? 0 : r * (chain.size() - 1) / (k - 1);
    coll.pairs.push_back({xs[chain[idx].xi], ys[chain[idx].yi]});
  }
  std::vector<IndexRange*> xr, yr;
  for (auto& p : coll.pairs) xr.push_back(&p.x), yr.push_back(&p.y);
  fill_gaps(xr, static_cast<std::uint32_t>(sp.x.size()));
  fill_gaps(yr, static_cast<std::uint32_t>(sp.y.size()));
  std::sort(coll.pairs.begin(), coll.pairs.end(),
            [](const SubPair& a, const SubPair& b) { return a.x.lo > b.x.lo; });
  check_collection(sp, coll);
  return coll;
}

double splitting_divisor(std::size_t m) {
  if (m < 2) return 1.0;
  return std::max(1.0, 6.0 * std::log2(static_cast<double>(m)));
}

std::vector<std::size_t> interlace_counts(const std::vector<PairChord>& chords) {
  std::vector<std::size_t> out(chords.size(), 0);
  if (chords.empty()) return out;
  std::uint32_t ymax = 0;
  for (const auto& c : chords) ymax = std::max(ymax, c.yi);
  {
    // x' < x and y' > y.
    Fenwick fw(ymax + 1);
    std::size_t inserted = 0;
    for (std::size_t i = 0; i < chords.size();) {
      std::size_t j = i;
      while (j < chords.size() && chords[j].xi == chords[i].xi) ++j;
      for (std::size_t a = i; a < j; ++a) {
        out[a] += inserted - static_cast<std::size_t>(fw.prefix(chords[a].yi));
      }
      for (std::size_t a = i; a < j; ++a) fw.add(chords[a].yi, 1);
      inserted += j - i;
      i = j;
    }
  }
  {
    // x' > x and y' < y.
    Fenwick fw(ymax + 1);
    for (std::size_t j = chords.size(); j > 0;) {
      std::size_t i = j;
      while (i > 0 && chords[i - 1].xi == chords[j - 1].xi) --i;
      for (std::size_t a = i; a < j; ++a) {
        if (chords[a].yi > 0) out[a] += static_cast<std::size_t>(fw.prefix(chords[a].yi - 1));
      }
      for (std::size_t a = i; a < j; ++a) fw.add(chords[a].yi, 1);
      j = i;
    }
  }
  return out;
}

namespace {

struct ItemCheck {
  bool item1 = false;
  bool item2 = false;
  SplitEvidence heavy;
  SplitEvidence inter;
};

ItemCheck check_items(const std::vector<PairChord>& cs, double divisor) {
  ItemCheck r;
  const double thr = static_cast<double>(cs.size()) / divisor;
  std::map<std::uint32_t, std::size_t> dx, dy;
  for (const auto& c : cs) ++dx[c.xi], ++dy[c.yi];
  for (const auto& [v, d] : dx) {
    if (d > r.heavy.count) r.heavy = {Side::X, v, {}, d};
  }
  for (const auto& [v, d] : dy) {
    if (d > r.heavy.count) r.heavy = {Side::Y, v, {}, d};
  }
  r.item1 = static_cast<double>(r.heavy.count) >= thr;
  auto cnt = interlace_counts(cs);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i == 0 || cnt[i] > r.inter.count) r.inter = {Side::X, cs[i].xi, cs[i], cnt[i]};
  }
  r.item2 = !cs.empty() && static_cast<double>(r.inter.count) >= thr;
  return r;
}

}  // namespace

SplitOutcome splitting_process(const SectionPair& sp) {
  const std::size_t m = sp.m();
  if (m < 2) throw DecompositionError("splitting needs at least 2 chords");
  const double divisor = splitting_divisor(m);
  struct Work {
    IndexRange x, y;
    std::string h;
  };
  struct Done {
    IndexRange x, y;
    std::string h;
    ItemCheck items;
    std::size_t e;
  };
  std::vector<Work> stack{{{0, static_cast<std::uint32_t>(sp.x.size() - 1)},
                           {0, static_cast<std::uint32_t>(sp.y.size() - 1)},
                           ""}};
  std::vector<Done> done;
  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();
    auto cs = chords_inside(sp, w.x, w.y);
    if (cs.empty()) continue;
    auto items = check_items(cs, divisor);
    if (items.item1 || items.item2) {
      done.push_back({w.x, w.y, w.h, items, cs.size()});
      continue;
    }
    // Split X at the prefix whose touch count is closest to e/2.
    const double half = static_cast<double>(cs.size()) / 2;
    std::size_t acc = 0, best_acc = 0;
    std::uint32_t best = w.x.lo;
    double best_diff = -1;
    for (std::size_t i = 0; i < cs.size();) {
      std::size_t j = i;
      while (j < cs.size() && cs[j].xi == cs[i].xi) ++j;
      acc += j - i;
      if (acc < cs.size()) {
        double diff = std::abs(static_cast<double>(acc) - half);
        if (best_diff < 0 || diff < best_diff) {
          best_diff = diff;
          best = cs[i].xi;
          best_acc = acc;
        }
      }
      i = j;
    }
    if (best_diff < 0 || best_acc == 0) {
      done.push_back({w.x, w.y, w.h, items, cs.size()});
      continue;
    }
    // Lowest chord-incident vertex of X' is `best`; y is its lowest neighbour.
    std::uint32_t x = best, y = 0;
    for (const auto& c : cs) {
      if (c.xi == x) y = std::max(y, c.yi);
    }
    Work lower{{x + 1, w.x.hi}, {y + 1, w.y.hi}, w.h + "1"};
    Work upper{{w.x.lo, x}, {w.y.lo, y}, w.h + "0"};
    if (y < w.y.hi) stack.push_back(std::move(lower));
    stack.push_back(std::move(upper));
  }

  std::size_t sum1 = 0, sum2 = 0;
  for (const auto& d : done) {
    if (d.items.item1) sum1 += d.e;
    if (d.items.item2) sum2 += d.e;
  }
  SplitOutcome out;
  out.kase = sum1 >= sum2 ? SplitCase::HighDegreeVertex : SplitCase::InterlacerChord;
  out.collection.mode = CollectionMode::Parallel;
  std::sort(done.begin(), done.end(), [](const Done& a, const Done& b) { return a.x.lo > b.x.lo; });
  for (const auto& d : done) {
    bool keep = out.kase == SplitCase::HighDegreeVertex ? d.items.item1 : d.items.item2;
    if (!keep) continue;
    out.collection.pairs.push_back({d.x, d.y});
    out.evidence.push_back(out.kase == SplitCase::HighDegreeVertex ? d.items.heavy : d.items.inter);
    out.depth_trace.push_back(d.h);
    out.chord_counts.push_back(d.e);
  }
  return out;
}

Extraction interlacing_pair_extraction(const SectionPair& sp) {
  if (!is_x_matching(sp)) throw DecompositionError("x-side is not a matching");
  const std::size_t m = sp.m();
  std::vector<PairChord> cur = sp.chords;
  Extraction out;
  std::uint32_t ymax = 0;
  for (const auto& c : cur) ymax = std::max(ymax, c.yi);
  const std::size_t size = ymax + 2;
  while (cur.size() >= 2) {
    // Prefix minimum over y of the topmost x (chords are in x order, so
    // the first chord reaching a y-slot is the topmost).
    std::vector<std::size_t> tree(size + 1, SIZE_MAX);
    auto update = [&](std::size_t pos, std::size_t idx) {
      for (++pos; pos <= size; pos += pos & (~pos + 1)) tree[pos] = std::min(tree[pos], idx);
    };
    auto query = [&](std::size_t pos) {
      std::size_t r = SIZE_MAX;
      for (++pos; pos > 0; pos -= pos & (~pos + 1)) r = std::min(r, tree[pos]);
      return r;
    };
    for (std::size_t i = 0; i < cur.size(); ++i) update(cur[i].yi, i);
    std::size_t ba = SIZE_MAX, bb = SIZE_MAX;
    std::uint32_t bd = 0;
    for (std::size_t b = 0; b < cur.size(); ++b) {
      std::size_t a = query(cur[b].yi);
      if (a >= b) continue;
      std::uint32_t d = cur[b].xi - cur[a].xi;
      if (ba == SIZE_MAX || d > bd || (d == bd && cur[a].xi < cur[ba].xi)) {
        ba = a, bb = b, bd = d;
      }
    }
    if (ba == SIZE_MAX) break;
    out.pairs.push_back({cur[ba], cur[bb], bd});
    cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(ba),
              cur.begin() + static_cast<std::ptrdiff_t>(bb) + 1);
  }
  if (2 * cur.size() >= m) {
    out.residue = true;
    out.family = {cur, Monotone::AllInterlacing};
    out.pairs.clear();
  }
  return out;
}

}  // namespace cyclespec
