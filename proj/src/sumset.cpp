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

#include "cyclespec/sumset.hpp"

#include <algorithm>
#include <string>

namespace cyclespec {

namespace {

RouteRef join(const RouteRef& a, const RouteRef& b) {
  if (!a || !b) return nullptr;
  return RouteNode::concat({a, b});
}

RouteRef join3(const RouteRef& a, const RouteRef& b, const RouteRef& c) {
  if (!a || !b || !c) return nullptr;
  return RouteNode::concat({a, b, c});
}

}  // namespace

LengthSet LengthSet::from_lengths(const std::vector<std::uint64_t>& lengths) {
  std::vector<std::uint64_t> v = lengths;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  LengthSet out;
  out.entries.reserve(v.size());
  for (auto x : v) out.entries.push_back({x, nullptr});
  return out;
}

LengthSet LengthSet::from_routes(const std::vector<RouteRef>& routes) {
  LengthSet out;
  out.entries.reserve(routes.size());
  for (const auto& r : routes) out.entries.push_back({r->length(), r});
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const LengthEntry& a, const LengthEntry& b) { return a.length < b.length; });
  out.entries.erase(std::unique(out.entries.begin(), out.entries.end(),
                                [](const LengthEntry& a, const LengthEntry& b) {
                                  return a.length == b.length;
                                }),
                    out.entries.end());
  return out;
}

LengthSet LengthSet::singleton(std::uint64_t length, RouteRef witness) {
  LengthSet out;
  out.entries.push_back({length, std::move(witness)});
  return out;
}

std::vector<std::uint64_t> LengthSet::lengths() const {
  std::vector<std::uint64_t> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.length);
  return out;
}

std::pair<std::uint64_t, std::uint64_t> LengthSet::measured_gaps() const {
  if (entries.size() < 2) return {0, 0};
  std::uint64_t lo = UINT64_MAX, hi = 0;
  for (std::size_t i = 1; i < entries.size(); ++i) {
    std::uint64_t g = entries[i].length - entries[i - 1].length;
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  return {lo, hi};
}

LengthSet& LengthSet::certify_gaps() {
  if (entries.size() < 2) {
    gap_lo.reset();
    gap_hi.reset();
  } else {
    auto [lo, hi] = measured_gaps();
    gap_lo = lo;
    gap_hi = hi;
  }
  return *this;
}

void LengthSet::check() const {
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].length <= entries[i - 1].length) {
      throw SumsetError("lengths not strictly increasing at entry " + std::to_string(i));
    }
    std::uint64_t g = entries[i].length - entries[i - 1].length;
    if ((gap_lo && g < *gap_lo) || (gap_hi && g > *gap_hi)) {
      throw SumsetError("gap " + std::to_string(g) + " between " +
                        std::to_string(entries[i - 1].length) + " and " +
                        std::to_string(entries[i].length) + " outside certificate");
    }
  }
  if (interval_size && !empty() && span() >= *interval_size) {
    throw SumsetError("span " + std::to_string(span()) + " exceeds interval size " +
                      std::to_string(*interval_size));
  }
  for (const auto& e : entries) {
    if (e.witness && e.witness->length() != e.length) {
      throw SumsetError("witness length " + std::to_string(e.witness->length()) +
                        " differs from recorded " + std::to_string(e.length));
    }
  }
}

LengthSet combine_gapped(const std::vector<LengthSet>& sets, std::uint64_t a, std::uint64_t b) {
  if (sets.empty()) throw SumsetError("no sets to combine");
  if (a > b) throw SumsetError("gap bounds inverted");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].empty()) throw SumsetError("set " + std::to_string(i) + " is empty");
    if (sets[i].size() >= 2) {
      auto [lo, hi] = sets[i].measured_gaps();
      if (lo < a || hi > b) {
        throw SumsetError("set " + std::to_string(i) + " has gaps in [" + std::to_string(lo) +
                          "," + std::to_string(hi) + "], outside [" + std::to_string(a) + "," +
                          std::to_string(b) + "]");
      }
    }
  }
  if (sets.size() == 1) {
    LengthSet out = sets.front();
    if (out.size() >= 2) {
      out.gap_lo = a;
      out.gap_hi = b;
    }
    return out;
  }
  const std::size_t t = sets.size();
  bool routed = true;
  for (const auto& s : sets) {
    for (const auto& e : s.entries) routed = routed && e.witness != nullptr;
  }
  // prefix[i]: maxima of sets 0..i-1 concatenated; suffix[i]: minima of i..t-1.
  std::vector<std::uint64_t> pre_len(t + 1, 0), suf_len(t + 1, 0);
  std::vector<RouteRef> pre(t + 1), suf(t + 1);
  if (routed) {
    pre[0] = RouteNode::empty();
    suf[t] = RouteNode::empty();
  }
  for (std::size_t i = 0; i < t; ++i) {
    pre_len[i + 1] = pre_len[i] + sets[i].max();
    if (routed) pre[i + 1] = join(pre[i], sets[i].entries.back().witness);
  }
  for (std::size_t i = t; i-- > 0;) {
    suf_len[i] = suf_len[i + 1] + sets[i].min();
    if (routed) suf[i] = join(sets[i].entries.front().witness, suf[i + 1]);
  }
  LengthSet out;
  std::size_t total = 1;
  for (const auto& s : sets) total += s.size() - 1;
  out.entries.reserve(total);
  out.entries.push_back({suf_len[0], routed ? suf[0] : nullptr});
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 1; j < sets[i].size(); ++j) {
      const auto& e = sets[i].entries[j];
      out.entries.push_back({pre_len[i] + e.length + suf_len[i + 1],
                             routed ? join3(pre[i], e.witness, suf[i + 1]) : nullptr});
    }
  }
  if (out.size() >= 2) {
    out.gap_lo = a;
    out.gap_hi = b;
  }
  return out;
}

LengthSet spread_close_product(const LengthSet& l1, const LengthSet& l2, std::uint64_t len1,
                               std::uint64_t len2) {
  if (l1.empty() || l2.empty()) throw SumsetError("empty operand");
  if (l1.span() >= len1) {
    throw SumsetError("L1 spans " + std::to_string(l1.span()) + ", not inside an interval of size " +
                      std::to_string(len1));
  }
  if (l2.span() >= len2) {
    throw SumsetError("L2 spans " + std::to_string(l2.span()) + ", not inside an interval of size " +
                      std::to_string(len2));
  }
  for (std::size_t i = 1; i < l1.size(); ++i) {
    std::uint64_t g = l1.entries[i].length - l1.entries[i - 1].length;
    if (g < len2) {
      throw SumsetError("L1 elements " + std::to_string(l1.entries[i - 1].length) + " and " +
                        std::to_string(l1.entries[i].length) + " are " + std::to_string(g) +
                        " apart, less than " + std::to_string(len2));
    }
  }
  LengthSet out;
  out.entries.reserve(l1.size() * l2.size());
  for (const auto& e1 : l1.entries) {
    for (const auto& e2 : l2.entries) {
      out.entries.push_back({e1.length + e2.length, join(e1.witness, e2.witness)});
    }
  }
  out.interval_size = len1 + len2;
  out.certify_gaps();
  return out;
}

LengthSet thin_to_spacing(const LengthSet& l, std::uint64_t target) {
  if (target == 0) throw SumsetError("thinning target must be positive");
  if (l.size() < 2) return l;
  auto [mlo, mhi] = l.measured_gaps();
  std::uint64_t glo = l.gap_lo.value_or(mlo);
  std::uint64_t ghi = l.gap_hi.value_or(mhi);
  if (glo == 0) throw SumsetError("thinning needs a positive gap lower bound");
  if (target <= glo) return l;
  LengthSet out;
  out.entries.push_back(l.entries.front());
  for (std::size_t i = 1; i < l.size(); ++i) {
    if (l.entries[i].length >= out.entries.back().length + target) {
      out.entries.push_back(l.entries[i]);
    }
  }
  if (out.size() >= 2) {
    out.gap_lo = target;
    out.gap_hi = target + ghi - 1;
  }
  out.interval_size = l.interval_size;
  return out;
}

LengthSet wrapped(const LengthSet& l, const RouteRef& before, const RouteRef& after) {
  LengthSet out = l;
  std::uint64_t extra = (before ? before->length() : 0) + (after ? after->length() : 0);
  for (auto& e : out.entries) {
    e.length += extra;
    if (e.witness) {
      e.witness = RouteNode::concat({before ? before : RouteNode::empty(), e.witness,
                                     after ? after : RouteNode::empty()});
    }
  }
  return out;
}

}  // namespace cyclespec
