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


#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cyclespec/config.hpp"
#include "cyclespec/engine.hpp"
#include "cyclespec/graph.hpp"
#include "cyclespec/route.hpp"

namespace cyclespec {

class ReportError : public std::runtime_error {
 public:
  ReportError(const std::string& what, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline constexpr std::string_view kReportHeader = "cyclespec-report 1";

/// Text form:
///   cyclespec-report 1
///   n <n>
///   config <key> = <value>
///   stat <key> <value...>
///   cycle <length> <steps>
std::string format_report(const SpectrumReport& rep);

struct ParsedReport {
  std::size_t n = 0;
  EngineConfig config;
  std::vector<std::pair<std::string, std::string>> stats;
  struct Cycle {
    std::uint64_t length = 0;
    RouteDescriptor route;
    std::size_t line = 0;
  };
  std::vector<Cycle> cycles;
};

ParsedReport parse_report(std::string_view text);

struct Verification {
  std::size_t checked = 0;
  /// One line per rejected witness.
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Re-realizes every cycle against `g`; also rejects repeated lengths and
/// a vertex count that differs from the instance.
Verification verify_report(const HamGraph& g, const ParsedReport& rep);

/// `length` header, one row per length.
std::string lengths_csv(const SpectrumReport& rep);

}  // namespace cyclespec
