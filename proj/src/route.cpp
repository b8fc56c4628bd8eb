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

#include "cyclespec/route.hpp"

#include <charconv>
#include <limits>
#include <sstream>
#include <utility>

namespace cyclespec {

std::uint64_t arc_length(std::size_t n, const Arc& a) {
  if (a.start == a.end) return n;
  if (a.dir == Direction::Forward) return (a.end + n - a.start) % n;
  return (a.start + n - a.end) % n;
}

Pos step_start(const Step& s) {
  return std::visit(
      [](const auto& x) -> Pos {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Arc>) {
          return x.start;
        } else {
          return x.from;
        }
      },
      s);
}

Pos step_end(const Step& s) {
  return std::visit(
      [](const auto& x) -> Pos {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Arc>) {
          return x.end;
        } else {
          return x.to;
        }
      },
      s);
}

Step reversed(const Step& s) {
  if (const auto* a = std::get_if<Arc>(&s)) {
    return Arc{a->end, a->start,
               a->dir == Direction::Forward ? Direction::Backward : Direction::Forward};
  }
  const auto& c = std::get<ChordStep>(s);
  return ChordStep{c.to, c.from};
}

RouteChecker::RouteChecker(const HamGraph& g) : g_(g), stamp_(g.n(), 0) {}

Witness RouteChecker::realize(const RouteDescriptor& r) {
  if (r.steps.empty()) throw RouteError("empty route");
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  visited_order_.clear();
  const std::size_t n = g_.n();
  std::uint64_t length = 0;
  bool returned = false;
  Pos cur = step_start(r.steps.front());
  if (cur >= n) throw RouteError("step references position out of range");
  origin_ = cur;
  stamp_[cur] = epoch_;
  visited_order_.push_back(cur);

  auto advance = [&](Pos next) {
    if (returned) throw RouteError("route continues after returning to its start");
    if (stamp_[next] == epoch_) {
      if (next != origin_) throw RouteError("revisited vertex " + std::to_string(g_.id(next)));
      returned = true;
    }
    stamp_[next] = epoch_;
    visited_order_.push_back(next);
    cur = next;
    ++length;
  };

  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const Step& s = r.steps[i];
    Pos start = step_start(s);
    Pos end = step_end(s);
    if (start >= n || end >= n) throw RouteError("step references position out of range");
    if (start != cur) {
      throw RouteError("disconnected steps at step " + std::to_string(i));
    }
    if (const auto* a = std::get_if<Arc>(&s)) {
      std::uint64_t len = arc_length(n, *a);
      for (std::uint64_t k = 0; k < len; ++k) {
        advance(a->dir == Direction::Forward ? g_.forward(cur) : g_.backward(cur));
      }
    } else {
      if (!g_.has_chord(start, end)) {
        throw RouteError("chord step " + std::to_string(g_.id(start)) + " " +
                         std::to_string(g_.id(end)) + " not in chord set");
      }
      advance(end);
    }
  }
  if (r.closed && !returned) throw RouteError("open route flagged closed");
  if (!r.closed && returned) throw RouteError("closed route flagged open");
  if (r.closed && length < 3) throw RouteError("closed route shorter than 3");
  return Witness{length, r};
}

Witness realize_route(const HamGraph& g, const RouteDescriptor& r) {
  RouteChecker checker(g);
  return checker.realize(r);
}

std::vector<Pos> route_vertices(std::size_t n, const RouteDescriptor& r) {
  std::vector<Pos> out;
  if (r.steps.empty()) return out;
  Pos cur = step_start(r.steps.front());
  out.push_back(cur);
  for (const auto& s : r.steps) {
    if (const auto* a = std::get_if<Arc>(&s)) {
      std::uint64_t len = arc_length(n, *a);
      for (std::uint64_t k = 0; k < len; ++k) {
        cur = a->dir == Direction::Forward ? static_cast<Pos>((cur + 1) % n)
                                           : static_cast<Pos>((cur + n - 1) % n);
        out.push_back(cur);
      }
    } else {
      cur = std::get<ChordStep>(s).to;
      out.push_back(cur);
    }
  }
  return out;
}

std::string format_steps(const std::vector<Step>& steps) {
  std::ostringstream os;
  bool first = true;
  for (const auto& s : steps) {
    if (!first) os << ' ';
    first = false;
    if (const auto* a = std::get_if<Arc>(&s)) {
      os << "a:" << a->start << ':' << a->end << ':'
         << (a->dir == Direction::Forward ? '+' : '-');
    } else {
      const auto& c = std::get<ChordStep>(s);
      os << "c:" << c.from << ':' << c.to;
    }
  }
  return os.str();
}

namespace {

Pos parse_pos(std::string_view tok, std::size_t& i) {
  Pos value = 0;
  auto [ptr, ec] = std::from_chars(tok.data() + i, tok.data() + tok.size(), value);
  if (ec != std::errc()) throw RouteError("malformed step \"" + std::string(tok) + "\"");
  i = static_cast<std::size_t>(ptr - tok.data());
  return value;
}

void expect(std::string_view tok, std::size_t& i, char c) {
  if (i >= tok.size() || tok[i] != c) {
    throw RouteError("malformed step \"" + std::string(tok) + "\"");
  }
  ++i;
}

}  // namespace

std::vector<Step> parse_steps(std::string_view text) {
  std::vector<Step> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '\t') {
      ++i;
      continue;
    }
    std::size_t j = text.find_first_of(" \t", i);
    if (j == std::string_view::npos) j = text.size();
    std::string_view tok = text.substr(i, j - i);
    std::size_t k = 0;
    if (tok.size() < 2) throw RouteError("malformed step \"" + std::string(tok) + "\"");
    char kind = tok[k++];
    expect(tok, k, ':');
    Pos a = parse_pos(tok, k);
    expect(tok, k, ':');
    Pos b = parse_pos(tok, k);
    if (kind == 'a') {
      expect(tok, k, ':');
      if (k >= tok.size() || (tok[k] != '+' && tok[k] != '-')) {
        throw RouteError("malformed arc direction in \"" + std::string(tok) + "\"");
      }
      out.push_back(Arc{a, b, tok[k] == '+' ? Direction::Forward : Direction::Backward});
      ++k;
    } else if (kind == 'c') {
      out.push_back(ChordStep{a, b});
    } else {
      throw RouteError("unknown step kind in \"" + std::string(tok) + "\"");
    }
    if (k != tok.size()) throw RouteError("trailing characters in \"" + std::string(tok) + "\"");
    i = j;
  }
  return out;
}

RouteRef RouteNode::leaf(std::size_t n, std::vector<Step> steps) {
  auto node = std::make_shared<RouteNode>();
  std::uint64_t len = 0;
  for (const auto& s : steps) {
    if (const auto* a = std::get_if<Arc>(&s)) {
      len += arc_length(n, *a);
    } else {
      len += 1;
    }
  }
  node->steps_ = std::move(steps);
  node->length_ = len;
  return node;
}

RouteRef RouteNode::concat(std::vector<RouteRef> parts) {
  auto node = std::make_shared<RouteNode>();
  std::uint64_t len = 0;
  for (const auto& p : parts) len += p->length_;
  node->parts_.reserve(parts.size());
  for (auto& p : parts) {
    if (p->length_ == 0 && p->is_leaf()) continue;
    node->parts_.push_back(std::move(p));
  }
  node->length_ = len;
  if (node->parts_.empty()) return empty();
  if (node->parts_.size() == 1) return node->parts_.front();
  return node;
}

RouteRef RouteNode::reverse(RouteRef r) {
  if (r->length_ == 0) return r;
  if (r->reversed_ && r->parts_.size() == 1) return r->parts_.front();
  auto node = std::make_shared<RouteNode>();
  node->parts_.push_back(std::move(r));
  node->reversed_ = true;
  node->length_ = node->parts_.front()->length_;
  return node;
}

RouteRef RouteNode::empty() {
  static const RouteRef e = std::make_shared<RouteNode>();
  return e;
}

std::vector<Step> expand(const RouteRef& root) {
  std::vector<Step> out;
  struct Frame {
    const RouteNode* node;
    bool rev;
    std::size_t next;
  };
  std::vector<Frame> stack;
  stack.push_back({root.get(), false, 0});
  auto emit = [&](Step s) {
    if (!out.empty()) {
      auto* prev = std::get_if<Arc>(&out.back());
      const auto* cur = std::get_if<Arc>(&s);
      // Touching arcs in the same direction merge, unless that would close
      // a loop (a full turn is kept explicit so revisits stay detectable).
      if (prev && cur && prev->dir == cur->dir && prev->end == cur->start &&
          cur->end != prev->start && prev->start != prev->end && cur->start != cur->end) {
        bool fwd = prev->dir == Direction::Forward;
        // Only merge if cur does not pass over prev's start.
        auto inside = [&](Pos a, Pos b, Pos x) {
          // x strictly inside the walk a -> b (exclusive of a) in direction.
          if (fwd) {
            return a < b ? (x > a && x <= b) : (x > a || x <= b);
          }
          return a > b ? (x < a && x >= b) : (x < a || x >= b);
        };
        if (!inside(cur->start, cur->end, prev->start)) {
          prev->end = cur->end;
          return;
        }
      }
    }
    out.push_back(std::move(s));
  };
  while (!stack.empty()) {
    Frame& f = stack.back();
    const RouteNode* node = f.node;
    if (node->is_leaf()) {
      const auto& steps = node->steps();
      if (!f.rev) {
        for (const auto& s : steps) emit(s);
      } else {
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) emit(reversed(*it));
      }
      stack.pop_back();
      continue;
    }
    const auto& parts = node->parts();
    if (f.next == parts.size()) {
      stack.pop_back();
      continue;
    }
    std::size_t idx = f.next++;
    bool eff = f.rev != node->is_reversed();
    const RouteNode* child = (eff ? parts[parts.size() - 1 - idx] : parts[idx]).get();
    stack.push_back({child, eff, 0});
  }
  return out;
}

RouteDescriptor to_descriptor(const RouteRef& r, bool closed) {
  return RouteDescriptor{expand(r), closed};
}

}  // namespace cyclespec
