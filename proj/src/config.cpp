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


#include "cyclespec/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cyclespec {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view v, std::size_t line) {
  std::string s(v);
  auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      double x = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return x;
    }
    std::string p = s.substr(0, slash), q = s.substr(slash + 1);
    double a = std::stod(p, &used);
    if (used != p.size()) throw std::invalid_argument(s);
    double b = std::stod(q, &used);
    if (used != q.size() || b == 0) throw std::invalid_argument(s);
    return a / b;
  } catch (const std::exception&) {
    throw ConfigError("bad number '" + s + "'", line);
  }
}

std::size_t parse_count(std::string_view v, std::size_t line) {
  double x = parse_number(v, line);
  if (x < 0 || x != std::floor(x)) throw ConfigError("expected a whole number", line);
  return static_cast<std::size_t>(x);
}

// Shortest text that reads back to the same double.
std::string fmt(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

bool const_rule(const std::string& rule, double& value) {
  if (rule.rfind("const:", 0) != 0) return false;
  std::size_t used = 0;
  std::string tail = rule.substr(6);
  try {
    value = std::stod(tail, &used);
  } catch (const std::exception&) {
    throw ConfigError("bad rule '" + rule + "'");
  }
  if (used != tail.size()) throw ConfigError("bad rule '" + rule + "'");
  return true;
}

}  // namespace

ConfigError::ConfigError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

std::size_t EngineConfig::k_for(std::size_t n) const {
  double v = 0;
  if (const_rule(k_fn, v)) return static_cast<std::size_t>(v);
  if (k_fn != "sqrt_log") throw ConfigError("unknown k rule '" + k_fn + "'");
  return static_cast<std::size_t>(std::ceil(std::sqrt(std::log2(std::max<double>(n, 2)))));
}

double EngineConfig::eps_for(std::size_t m) const {
  double v = 0;
  if (const_rule(eps_fn, v)) return v;
  if (eps_fn != "sqrt_loglog_over_log") throw ConfigError("unknown eps rule '" + eps_fn + "'");
  // Below m = 4 log log m is not positive; clamp to the value at m = 4.
  double lm = std::log2(std::max<double>(m, 4));
  return std::sqrt(std::log2(lm) / lm);
}

void EngineConfig::validate() const {
  for (double c : {c_split, c_distant, c_close, theta_lo, theta_hi, c_hall, C_induction}) {
    if (!(c > 0)) throw ConfigError("constants must be positive");
  }
  if (!(theta_lo < theta_hi)) throw ConfigError("theta_lo must be below theta_hi");
  std::size_t k = k_for(1024);
  double e = eps_for(1024);
  if (k == 0) throw ConfigError("k rule gives 0");
  if (!(e > 0 && e <= 1)) throw ConfigError("eps rule must give a value in (0, 1]");
}

EngineConfig parse_config(std::string_view text) {
  EngineConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key = value", line_no);
    std::string key(trim(line.substr(0, eq)));
    std::string_view val = trim(line.substr(eq + 1));
    if (val.empty()) throw ConfigError("missing value for " + key, line_no);
    if (key == "c_split") cfg.c_split = parse_number(val, line_no);
    else if (key == "c_distant") cfg.c_distant = parse_number(val, line_no);
    else if (key == "c_close") cfg.c_close = parse_number(val, line_no);
    else if (key == "theta_lo") cfg.theta_lo = parse_number(val, line_no);
    else if (key == "theta_hi") cfg.theta_hi = parse_number(val, line_no);
    else if (key == "c_hall") cfg.c_hall = parse_number(val, line_no);
    else if (key == "C_induction") cfg.C_induction = parse_number(val, line_no);
    else if (key == "min_m") cfg.min_m = parse_count(val, line_no);
    else if (key == "min_n") cfg.min_n = parse_count(val, line_no);
    else if (key == "jobs") cfg.jobs = static_cast<unsigned>(parse_count(val, line_no));
    else if (key == "k_fn") cfg.k_fn = std::string(val);
    else if (key == "eps_fn") cfg.eps_fn = std::string(val);
    else throw ConfigError("unknown key '" + key + "'", line_no);
  }
  cfg.validate();
  return cfg;
}

EngineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_config(const EngineConfig& cfg) {
  std::ostringstream os;
  os << "c_split = " << fmt(cfg.c_split) << "\n"
     << "c_distant = " << fmt(cfg.c_distant) << "\n"
     << "c_close = " << fmt(cfg.c_close) << "\n"
     << "theta_lo = " << fmt(cfg.theta_lo) << "\n"
     << "theta_hi = " << fmt(cfg.theta_hi) << "\n"
     << "c_hall = " << fmt(cfg.c_hall) << "\n"
     << "min_m = " << cfg.min_m << "\n"
     << "min_n = " << cfg.min_n << "\n"
     << "k_fn = " << cfg.k_fn << "\n"
     << "eps_fn = " << cfg.eps_fn << "\n"
     << "C_induction = " << fmt(cfg.C_induction) << "\n"
     << "jobs = " << cfg.jobs << "\n";
  return os.str();
}

}  // namespace cyclespec
