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


#include "cyclespec/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cyclespec/config.hpp"
#include "cyclespec/engine.hpp"
#include "cyclespec/graph.hpp"
#include "cyclespec/report.hpp"
#include "cyclespec/testbed.hpp"

namespace cyclespec {

namespace {

struct Failure {
  int code;
  std::string kind;
  std::string message;
};

int log_level() {
  const char* v = std::getenv("CS_LOG");
  return v ? std::atoi(v) : 0;
}

class Log {
 public:
  explicit Log(std::ostream& err) : err_(err), level_(log_level()) {}
  void info(const std::string& m) const {
    if (level_ >= 1) err_ << "[cyclespec] " << m << "\n";
  }
  void debug(const std::string& m) const {
    if (level_ >= 2) err_ << "[cyclespec] " << m << "\n";
  }

 private:
  std::ostream& err_;
  int level_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kInputError, "io", "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{kInputError, "io", "cannot write " + path};
}

HamGraph read_instance(const std::string& path) {
  try {
    return parse_instance(read_file(path));
  } catch (const InstanceError& e) {
    throw Failure{kInputError, "instance", path + ": " + e.what()};
  }
}

std::size_t to_count(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw Failure{kInputError, "usage", "bad " + what + " '" + s + "'"};
  return static_cast<std::size_t>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, sep);) out.push_back(part);
  return out;
}

// chain:<n>:<k> | mindeg3:<n>:<extra> | regular:<n>:<k>
GenSpec parse_family(const std::string& text, std::uint64_t seed) {
  auto parts = split(text, ':');
  if (parts.size() != 3) {
    throw Failure{kInputError, "usage", "family '" + text + "' is not <name>:<n>:<param>"};
  }
  std::size_t n = to_count(parts[1], "n"), p = to_count(parts[2], "family parameter");
  GenSpec spec;
  spec.seed = seed;
  if (parts[0] == "chain") {
    spec.family = ChainExtremal{n, p};
  } else if (parts[0] == "mindeg3") {
    spec.family = RandomMinDeg3{n, p};
  } else if (parts[0] == "regular") {
    spec.family = RandomRegularHam{n, p};
  } else {
    throw Failure{kInputError, "usage", "unknown family '" + parts[0] + "'"};
  }
  return spec;
}

HamGraph generate(const GenSpec& spec) {
  try {
    if (auto* c = std::get_if<ChainExtremal>(&spec.family)) return gen_chain_extremal(c->n, c->k);
    return gen_random_ham3(spec);
  } catch (const GenError& e) {
    throw Failure{kInputError, "generate", e.what()};
  }
}

// vertices=<v>,steps=<s>,seconds=<t>
OracleLimits parse_limits(const std::string& text) {
  OracleLimits lim;
  if (text.empty()) return lim;
  for (const auto& kv : split(text, ',')) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw Failure{kInputError, "usage", "bad limit '" + kv + "'"};
    std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
    if (k == "vertices") {
      lim.max_vertices = to_count(v, "vertex limit");
    } else if (k == "steps") {
      lim.max_steps = to_count(v, "step limit");
    } else if (k == "seconds") {
      lim.time_budget = std::chrono::milliseconds(1000 * to_count(v, "time limit"));
    } else {
      throw Failure{kInputError, "usage", "unknown limit '" + k + "'"};
    }
  }
  return lim;
}

EngineConfig read_config(const std::string& path, unsigned jobs, bool jobs_set) {
  EngineConfig cfg;
  if (!path.empty()) {
    try {
      cfg = parse_config(read_file(path));
    } catch (const ConfigError& e) {
      throw Failure{kInputError, "config", path + ": line " + std::to_string(e.line()) + ": " + e.what()};
    }
  }
  if (jobs_set) cfg.jobs = jobs;
  return cfg;
}

SpectrumReport spectrum_of(const HamGraph& g, const EngineConfig& cfg) {
  try {
    return full_spectrum(g, cfg);
  } catch (const InstanceTooSmall& e) {
    throw Failure{kInputError, "too-small", e.what()};
  }
}

std::string stat_value(const SpectrumReport& r, const std::string& key) {
  for (const auto& [k, v] : r.stats) {
    if (k == key) return v;
  }
  return "";
}

std::size_t lemma_blocks(const SpectrumReport& r) {
  return static_cast<std::size_t>(std::count_if(r.stats.begin(), r.stats.end(), [](const auto& kv) {
    return kv.first.size() > 6 && kv.first.compare(kv.first.size() - 6, 6, ".lemma") == 0;
  }));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cycle spectra of Hamiltonian graphs with minimum degree 3", "cyclespec"};
  app.require_subcommand(1);
  Log log(err);

  std::uint64_t seed = 1;
  std::string family, out_path, in_path, config_path, report_path, csv_path, limits;
  unsigned jobs = 1;
  std::string n_list;
  std::size_t seeds = 5;

  auto* gen = app.add_subcommand("generate", "Write a generated instance");
  gen->add_option("family", family, "chain:<n>:<k>, mindeg3:<n>:<extra> or regular:<n>:<k>")->required();
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("-o,--out", out_path, "Output file (default: stdout)");

  auto* spec = app.add_subcommand("spectrum", "Compute a witnessed cycle spectrum");
  spec->add_option("instance", in_path, "Instance file")->required();
  spec->add_option("--config", config_path, "Engine configuration file");
  spec->add_option("-o,--out", report_path, "Report file (default: stdout)");
  spec->add_option("--csv", csv_path, "Also write the lengths as CSV");
  auto* spec_jobs = spec->add_option("--jobs", jobs, "Worker threads (0: all cores)");

  auto* orc = app.add_subcommand("oracle", "Exact cycle spectrum by exhaustive search");
  orc->add_option("instance", in_path, "Instance file")->required();
  orc->add_option("--limits", limits, "vertices=<v>,steps=<s>,seconds=<t>");

  auto* ver = app.add_subcommand("verify", "Re-check every witness of a report");
  ver->add_option("instance", in_path, "Instance file")->required();
  ver->add_option("report", report_path, "Report file")->required();

  auto* bench = app.add_subcommand("bench", "Spectrum sizes over a sweep of generated instances");
  bench->add_option("family", family, "regular:<k>, mindeg3:<extra> or chain:<k>")->required();
  bench->add_option("--n", n_list, "Comma-separated vertex counts")->required();
  bench->add_option("--seeds", seeds, "Seeds per vertex count");
  bench->add_option("--seed", seed, "First seed");
  bench->add_option("--config", config_path, "Engine configuration file");
  bench->add_option("--csv", csv_path, "Output CSV (default: stdout)");
  bench->add_option("--jobs", jobs, "Instances in flight (0: all cores)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error " << kInputError << " usage: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*gen) {
      HamGraph g = generate(parse_family(family, seed));
      std::string text = serialize_instance(g);
      if (out_path.empty()) {
        out << text;
      } else {
        write_file(out_path, text);
      }
      log.info("generated n=" + std::to_string(g.n()) + " chords=" + std::to_string(g.chords().size()));
      return kOk;
    }
    if (*spec) {
      if (!report_path.empty() && (report_path == in_path || report_path == csv_path)) {
        throw Failure{kInputError, "usage", "output paths collide"};
      }
      HamGraph g = read_instance(in_path);
      EngineConfig cfg = read_config(config_path, jobs, spec_jobs->count() > 0);
      auto t0 = std::chrono::steady_clock::now();
      SpectrumReport rep = spectrum_of(g, cfg);
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
      for (const auto& [k, v] : rep.stats) log.debug(k + " = " + v);
      log.info(std::to_string(rep.lengths.size()) + " lengths in " + std::to_string(ms.count()) + " ms");
      std::string text = format_report(rep);
      if (report_path.empty()) {
        out << text;
      } else {
        write_file(report_path, text);
      }
      if (!csv_path.empty()) write_file(csv_path, lengths_csv(rep));
      return kOk;
    }
    if (*orc) {
      HamGraph g = read_instance(in_path);
      std::set<std::uint64_t> lengths;
      try {
        lengths = oracle_cycle_spectrum(g, parse_limits(limits));
      } catch (const OracleError& e) {
        throw Failure{kResourceCap, "limit", e.what()};
      }
      std::string line;
      for (auto l : lengths) line += (line.empty() ? "" : " ") + std::to_string(l);
      out << line << "\n";
      return kOk;
    }
    if (*ver) {
      HamGraph g = read_instance(in_path);
      ParsedReport rep;
      try {
        rep = parse_report(read_file(report_path));
      } catch (const ReportError& e) {
        throw Failure{kVerifyFailed, "report", report_path + ": " + e.what()};
      }
      Verification v = verify_report(g, rep);
      for (const auto& f : v.failures) log.info(f);
      if (!v.ok()) {
        throw Failure{kVerifyFailed, "verify",
                      std::to_string(v.failures.size()) + " of " + std::to_string(v.checked) +
                          " witnesses rejected, first: " + v.failures.front()};
      }
      out << "verified " << v.checked << " cycles\n";
      return kOk;
    }
    if (*bench) {
      auto fam = split(family, ':');
      if (fam.size() != 2) throw Failure{kInputError, "usage", "bench family is <name>:<param>"};
      EngineConfig cfg = read_config(config_path, 1, true);
      struct Row {
        std::size_t n;
        std::uint64_t seed;
        std::string line;
      };
      std::vector<Row> rows;
      for (const auto& ns : split(n_list, ',')) {
        std::size_t n = to_count(ns, "n");
        for (std::size_t s = 0; s < seeds; ++s) rows.push_back({n, seed + s, ""});
      }
      for (const auto& r : rows) parse_family(fam[0] + ":" + std::to_string(r.n) + ":" + fam[1], r.seed);
      unsigned workers = jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs;
      std::atomic<std::size_t> next{0};
      std::mutex mu;
      std::optional<Failure> failure;
      auto work = [&]() {
        for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) {
          Row& r = rows[i];
          try {
            HamGraph g = generate(parse_family(fam[0] + ":" + std::to_string(r.n) + ":" + fam[1], r.seed));
            auto t0 = std::chrono::steady_clock::now();
            SpectrumReport rep = spectrum_of(g, cfg);
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0);
            std::ostringstream os;
            os << fam[0] << "," << r.n << "," << r.seed << "," << rep.lengths.size() << ","
               << ms.count() << "," << stat_value(rep, "ell") << "," << stat_value(rep, "heavy")
               << "," << stat_value(rep, "good") << "," << stat_value(rep, "I") << ","
               << lemma_blocks(rep);
            r.line = os.str();
            log.info(r.line);
          } catch (const Failure& f) {
            std::lock_guard<std::mutex> lock(mu);
            if (!failure) failure = f;
          }
        }
      };
      std::vector<std::thread> pool;
      for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
      work();
      for (auto& t : pool) t.join();
      if (failure) throw *failure;
      std::string csv;
      for (std::size_t c = 0; c < kBenchColumns.size(); ++c) csv += (c ? "," : "") + kBenchColumns[c];
      csv += "\n";
      for (const auto& r : rows) csv += r.line + "\n";
      if (csv_path.empty()) {
        out << csv;
      } else {
        write_file(csv_path, csv);
      }
      return kOk;
    }
  } catch (const Failure& f) {
    err << "error " << f.code << " " << f.kind << ": " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    err << "error " << kInputError << " internal: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace cyclespec
