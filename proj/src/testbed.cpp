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


#include "cyclespec/testbed.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace cyclespec {

namespace {

using Mask = std::uint64_t;
constexpr std::size_t kHardCap = 63;

Mask bit(std::size_t i) { return Mask{1} << i; }

class Budget {
 public:
  explicit Budget(const OracleLimits& lim)
      : lim_(lim), start_(std::chrono::steady_clock::now()) {}
  void tick() {
    if (++steps_ > lim_.max_steps) throw OracleError("step limit exceeded");
    if ((steps_ & 0xffff) == 0 && std::chrono::steady_clock::now() - start_ > lim_.time_budget) {
      throw OracleError("time budget exceeded");
    }
  }

 private:
  const OracleLimits& lim_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t steps_ = 0;
};

// Can `target` be reached from `from` through `allowed` vertices?
bool reachable(const std::vector<Mask>& adj, std::size_t from, std::size_t target, Mask allowed) {
  Mask seen = bit(from), frontier = bit(from);
  allowed |= bit(target);
  while (frontier) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
    next &= allowed & ~seen;
    if (next & bit(target)) return true;
    seen |= next;
    frontier = next;
  }
  return false;
}

std::set<std::uint64_t> to_set(Mask lens) {
  std::set<std::uint64_t> out;
  for (; lens; lens &= lens - 1) out.insert(std::countr_zero(lens));
  return out;
}

}  // namespace

std::set<std::uint64_t> oracle_cycle_spectrum(const HamGraph& g, const OracleLimits& lim) {
  const std::size_t n = g.n();
  if (n > lim.max_vertices || n > kHardCap) {
    throw OracleError("graph has " + std::to_string(n) + " vertices, limit " +
                      std::to_string(std::min(lim.max_vertices, kHardCap)));
  }
  std::vector<Mask> adj(n, 0);
  for (Pos p = 0; p < n; ++p) {
    adj[p] |= bit(g.forward(p)) | bit(g.backward(p));
    for (Pos q : g.chord_neighbors(p)) adj[p] |= bit(q);
  }
  Budget budget(lim);
  Mask lens = 0;
  Mask all = 0;
  for (std::size_t l = 3; l <= n; ++l) all |= bit(l);
  // Cycles rooted at their lowest vertex s; the first step goes to a lower
  // vertex than the last one, so each cycle is seen once.
  for (std::size_t s = 0; s + 2 < n && lens != all; ++s) {
    Mask above = ~Mask{0} << s << 1;
    above &= bit(n) - 1;
    std::size_t first = 0;
    auto dfs = [&](auto&& self, std::size_t cur, Mask used, std::size_t len) -> void {
      budget.tick();
      if (len >= 3 && (adj[cur] & bit(s)) && first < cur) lens |= bit(len);
      if (len > 1 && !reachable(adj, cur, s, above & ~used)) return;
      for (Mask nb = adj[cur] & above & ~used; nb; nb &= nb - 1) {
        std::size_t w = std::countr_zero(nb);
        if (len == 1) first = w;
        self(self, w, used | bit(w), len + 1);
      }
    };
    dfs(dfs, s, bit(s), 1);
  }
  return to_set(lens);
}

std::set<std::uint64_t> oracle_section_paths(const SectionPair& sp, Endpoint from, Endpoint to,
                                             const OracleLimits& lim, bool bottoms_joined) {
  const std::size_t nx = sp.x.size(), ny = sp.y.size();
  // With joined bottoms a separator vertex sits between them, as in the host cycle.
  const std::size_t n = nx + ny + (bottoms_joined ? 1 : 0);
  if (nx + ny > lim.max_vertices || n > kHardCap) {
    throw OracleError("pair has " + std::to_string(nx + ny) + " vertices, limit " +
                      std::to_string(std::min(lim.max_vertices, kHardCap)));
  }
  if (nx == 0 || ny == 0) throw OracleError("empty side");
  std::vector<Mask> adj(n, 0);
  auto link = [&](std::size_t a, std::size_t b) {
    adj[a] |= bit(b);
    adj[b] |= bit(a);
  };
  for (std::size_t i = 0; i + 1 < nx; ++i) link(i, i + 1);
  for (std::size_t j = 0; j + 1 < ny; ++j) link(nx + j, nx + j + 1);
  for (const auto& c : sp.chords) link(c.xi, nx + c.yi);
  if (bottoms_joined) {
    link(nx - 1, n - 1);
    link(nx + ny - 1, n - 1);
  }
  auto index = [&](Endpoint e) -> std::size_t {
    switch (e) {
      case Endpoint::XTop: return 0;
      case Endpoint::XBottom: return nx - 1;
      case Endpoint::YTop: return nx;
      default: return nx + ny - 1;
    }
  };
  const std::size_t s = index(from), t = index(to);
  if (s == t) return {0};
  const Mask every = bit(n) - 1;
  Budget budget(lim);
  Mask lens = 0;
  auto dfs = [&](auto&& self, std::size_t cur, Mask used, std::size_t len) -> void {
    budget.tick();
    if (cur == t) {
      lens |= bit(len);
      return;
    }
    if (!reachable(adj, cur, t, every & ~used)) return;
    for (Mask nb = adj[cur] & ~used; nb; nb &= nb - 1) {
      std::size_t w = std::countr_zero(nb);
      self(self, w, used | bit(w), len + 1);
    }
  };
  dfs(dfs, s, bit(s), 0);
  return to_set(lens);
}

StableRng::StableRng(std::uint64_t seed) : eng_(seed) {}

std::uint64_t StableRng::next() { return eng_(); }

std::uint64_t StableRng::below(std::uint64_t bound) {
  if (bound == 0) throw GenError("empty draw range");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do v = eng_();
  while (v >= limit);
  return v % bound;
}

HamGraph gen_chain_extremal(std::size_t n, std::size_t k) {
  if (k < 3) throw GenError("chain needs k >= 3");
  if (n == 0 || n % (2 * k) != 0) {
    throw GenError(std::to_string(2 * k) + " does not divide " + std::to_string(n));
  }
  // Copy c holds positions 2kc .. 2kc+2k-1 in the order a1 b2 a2 b3 ... ak b1,
  // so A sits at even offsets and the missing edge is a1 b1.
  std::vector<Chord> chords;
  const std::size_t w = 2 * k;
  for (std::size_t base = 0; base < n; base += w) {
    for (std::size_t i = 0; i < w; i += 2) {
      for (std::size_t j = 1; j < w; j += 2) {
        std::size_t lo = std::min(i, j), hi = std::max(i, j);
        if (hi - lo == 1 || (lo == 0 && hi == w - 1)) continue;
        chords.push_back({static_cast<Pos>(base + lo), static_cast<Pos>(base + hi)});
      }
    }
  }
  return HamGraph::from_positions(n, chords);
}

std::set<std::uint64_t> chain_spectrum(std::size_t n, std::size_t k) {
  std::set<std::uint64_t> out;
  for (std::size_t l = 4; l <= 2 * k; l += 2) out.insert(l);
  for (std::size_t l = (2 * n / k + 1) / 2 * 2; l <= n; l += 2) out.insert(l);
  return out;
}

std::uint64_t chain_spectrum_formula(std::size_t n, std::size_t k) {
  return n / 2 * (k - 2) / k + k;
}

namespace {

bool usable(std::size_t n, std::size_t a, std::size_t b) {
  return a != b && cycle_span(n, static_cast<Pos>(a), static_cast<Pos>(b)) > 1;
}

Chord ordered(std::size_t a, std::size_t b) {
  return {static_cast<Pos>(std::min(a, b)), static_cast<Pos>(std::max(a, b))};
}

HamGraph min_deg3(std::size_t n, std::size_t extra, StableRng& rng) {
  if (n < 4) throw GenError("need at least 4 vertices");
  const std::size_t max_chords = n * (n - 3) / 2;
  std::set<Chord> chords;
  std::vector<std::size_t> deg(n, 2);
  auto add = [&](std::size_t a, std::size_t b) {
    if (!usable(n, a, b) || !chords.insert(ordered(a, b)).second) return false;
    ++deg[a];
    ++deg[b];
    return true;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (deg[v] > 2) continue;
    // v has no chord yet, so every non-neighbour is free.
    std::size_t off = 2 + rng.below(n - 3);
    add(v, (v + off) % n);
  }
  if (chords.size() + extra > max_chords) throw GenError("too many extra chords requested");
  for (std::size_t added = 0; added < extra;) {
    std::size_t a = rng.below(n), b = rng.below(n);
    added += add(a, b);
  }
  return HamGraph::from_positions(n, {chords.begin(), chords.end()});
}

HamGraph regular_ham(std::size_t n, std::size_t k, StableRng& rng) {
  if (k < 3) throw GenError("regular family needs k >= 3");
  if (n * (k - 2) % 2 != 0) throw GenError("n*(k-2) is odd");
  if (k - 2 > n - 3) throw GenError("degree too large for n");
  const std::size_t r = k - 2;
  std::vector<std::size_t> stubs;
  for (std::size_t v = 0; v < n; ++v) stubs.insert(stubs.end(), r, v);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng.below(i)]);
    std::set<Chord> chords;
    bool ok = true;
    for (std::size_t i = 0; ok && i < stubs.size(); i += 2) {
      ok = usable(n, stubs[i], stubs[i + 1]) && chords.insert(ordered(stubs[i], stubs[i + 1])).second;
    }
    if (ok) return HamGraph::from_positions(n, {chords.begin(), chords.end()});
  }
  throw GenError("no simple chord matching found after 100000 attempts");
}

}  // namespace

HamGraph gen_random_ham3(const GenSpec& spec) {
  StableRng rng(spec.seed);
  return std::visit(
      [&](const auto& f) -> HamGraph {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, ChainExtremal>) {
          return gen_chain_extremal(f.n, f.k);
        } else if constexpr (std::is_same_v<F, RandomMinDeg3>) {
          return min_deg3(f.n, f.extra_chords, rng);
        } else {
          return regular_ham(f.n, f.k, rng);
        }
      },
      spec.family);
}

}  // namespace cyclespec
