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


#include "cyclespec/report.hpp"

#include <charconv>
#include <set>
#include <sstream>

namespace cyclespec {

ReportError::ReportError(const std::string& what, std::size_t line)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string format_report(const SpectrumReport& rep) {
  std::ostringstream os;
  os << kReportHeader << "\n";
  os << "n " << rep.n << "\n";
  std::istringstream cfg(format_config(rep.config));
  for (std::string line; std::getline(cfg, line);) os << "config " << line << "\n";
  for (const auto& [k, v] : rep.stats) os << "stat " << k << " " << v << "\n";
  for (const auto& e : rep.lengths.entries) {
    os << "cycle " << e.length << " " << format_steps(expand(e.witness)) << "\n";
  }
  return os.str();
}

namespace {

std::uint64_t parse_u64(std::string_view s, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
    throw ReportError("bad number '" + std::string(s) + "'", line);
  }
  return v;
}

std::pair<std::string_view, std::string_view> split_word(std::string_view s) {
  auto sp = s.find(' ');
  if (sp == std::string_view::npos) return {s, {}};
  return {s.substr(0, sp), s.substr(sp + 1)};
}

}  // namespace

ParsedReport parse_report(std::string_view text) {
  ParsedReport out;
  std::string config_text;
  std::size_t line_no = 0;
  bool header = false, have_n = false;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header) {
      if (line != kReportHeader) throw ReportError("missing report header", line_no);
      header = true;
      continue;
    }
    auto [tag, rest] = split_word(line);
    if (tag == "n") {
      out.n = parse_u64(rest, line_no);
      have_n = true;
    } else if (tag == "config") {
      config_text.append(rest).push_back('\n');
    } else if (tag == "stat") {
      auto [k, v] = split_word(rest);
      out.stats.emplace_back(std::string(k), std::string(v));
    } else if (tag == "cycle") {
      auto [len, steps] = split_word(rest);
      ParsedReport::Cycle c;
      c.length = parse_u64(len, line_no);
      c.line = line_no;
      try {
        c.route.steps = parse_steps(steps);
      } catch (const RouteError& e) {
        throw ReportError(e.what(), line_no);
      }
      c.route.closed = true;
      out.cycles.push_back(std::move(c));
    } else {
      throw ReportError("unknown record '" + std::string(tag) + "'", line_no);
    }
  }
  if (!header) throw ReportError("empty report", line_no);
  if (!have_n) throw ReportError("missing vertex count", line_no);
  try {
    out.config = parse_config(config_text);
  } catch (const ConfigError& e) {
    throw ReportError(std::string("config: ") + e.what(), line_no);
  }
  return out;
}

Verification verify_report(const HamGraph& g, const ParsedReport& rep) {
  Verification v;
  if (rep.n != g.n()) {
    v.failures.push_back("report is for n = " + std::to_string(rep.n) + ", instance has " +
                         std::to_string(g.n()));
    return v;
  }
  RouteChecker checker(g);
  std::set<std::uint64_t> seen;
  for (const auto& c : rep.cycles) {
    ++v.checked;
    const std::string at = "line " + std::to_string(c.line) + ": ";
    if (!seen.insert(c.length).second) {
      v.failures.push_back(at + "length " + std::to_string(c.length) + " repeated");
      continue;
    }
    try {
      Witness w = checker.realize(c.route);
      if (w.length != c.length) {
        v.failures.push_back(at + "cycle has length " + std::to_string(w.length) + ", recorded " +
                             std::to_string(c.length));
      }
    } catch (const RouteError& e) {
      v.failures.push_back(at + e.what());
    }
  }
  return v;
}

std::string lengths_csv(const SpectrumReport& rep) {
  std::string out = "length\n";
  for (const auto& e : rep.lengths.entries) out += std::to_string(e.length) + "\n";
  return out;
}

}  // namespace cyclespec
