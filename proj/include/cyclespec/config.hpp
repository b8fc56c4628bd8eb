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

namespace cyclespec {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Tunable constants of the pipeline. Rationals may be written as "p/q".
struct EngineConfig {
  double c_split = 1.0 / 400;
  double c_distant = 1.0 / 8;
  double c_close = 1.0 / 64;
  double theta_lo = 1.0 / 4;
  double theta_hi = 7.0;
  double c_hall = 1.0 / 2;
  std::size_t min_m = 12;
  std::size_t min_n = 8;
  /// "sqrt_log" (ceil(sqrt(log2 n))) or "const:<k>".
  std::string k_fn = "sqrt_log";
  /// "sqrt_loglog_over_log" or "const:<eps>".
  std::string eps_fn = "sqrt_loglog_over_log";
  double C_induction = 4;
  /// Worker threads for per-block work; 0 means hardware concurrency.
  unsigned jobs = 1;

  std::size_t k_for(std::size_t n) const;
  double eps_for(std::size_t m) const;
  /// Throws ConfigError on a non-positive constant, theta_lo >= theta_hi or
  /// an unknown rule.
  void validate() const;
};

/// `key = value` lines; '#' starts a comment. Unknown keys are errors.
EngineConfig parse_config(std::string_view text);
EngineConfig load_config(const std::string& path);
/// Round-trips through parse_config.
std::string format_config(const EngineConfig& cfg);

}  // namespace cyclespec
