// Copyright 2026 The gsnorm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GSNORM_CLI_HPP_
#define GSNORM_CLI_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gsnorm/config_io.hpp"
#include "gsnorm/experiments.hpp"
#include "gsnorm/metrics.hpp"
#include "gsnorm/trial.hpp"
#include "gsnorm/verification.hpp"

namespace gsnorm::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitIo = 2,
  kExitVerificationFailed = 3,
};

inline SamplingMode parse_sampling(const std::string& s) {
  if (s == "block") return SamplingMode::block_sums;
  if (s == "observations") return SamplingMode::observations;
  throw ConfigError("sampling", "must be 'block' or 'observations'");
}

struct SimulateOptions {
  std::filesystem::path config;
  std::size_t reps = 10'000;
  std::optional<std::uint64_t> seed;  // drawn from std::random_device if absent
  std::optional<std::filesystem::path> out_dir;
  bool dump_z = false;
  unsigned threads = 0;
  std::string sampling = "block";
  double quantile = kNominalQuantile;
};

struct StudyOptions {
  std::string grid = "default";  // "default" or a grid file
  std::size_t reps = 100'000;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir;
  unsigned threads = 0;
  bool histograms = true;
  std::string sampling = "block";
};

struct VerifyOptions {
  std::string suite = "all";  // transform | coefficients | oracles | all
  std::optional<std::uint64_t> seed;
  std::size_t reps = 100'000;
  std::size_t mc_samples = 100'000;
  int nodes = 64;
  unsigned threads = 0;
  std::optional<std::filesystem::path> out_dir;
};

namespace detail {

// Runs body and maps the library's exceptions to exit codes.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: invalid " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

inline std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace detail

/// Simulates one configuration and writes a one-row summary (CSV with the
/// study header) to `out`, plus summary.csv, manifest.txt and optionally
/// z.txt into the output directory.
inline int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (opt.reps == 0) throw ConfigError("reps", "must be >= 1");
    const TrialConfig config = parse_trial_config(read_text_file(opt.config));
    const std::uint64_t seed = opt.seed.value_or(detail::entropy_seed());
    const SimulationOptions sim{parse_sampling(opt.sampling), opt.threads};
    const SampleSet set = simulate_batch(config, opt.reps, seed, sim);
    const std::string csv = emit_csv({summarize(set, opt.quantile)});
    out << csv;
    if (opt.out_dir) {
      std::error_code ec;
      std::filesystem::create_directories(*opt.out_dir, ec);
      if (ec) throw IoError("cannot create " + opt.out_dir->string() + ": " + ec.message());
      RunManifest m;
      m.command = "simulate";
      m.config = config_entries(config);
      m.seed = seed;
      m.reps = opt.reps;
      m.extra = {{"sampling", opt.sampling}, {"quantile", format_real(opt.quantile)}};
      m.outputs = {"summary.csv"};
      write_text_file(*opt.out_dir / "summary.csv", csv);
      if (opt.dump_z) {
        std::string z;
        for (double v : set.z_values()) z += gsnorm::detail::exact_real(v) + "\n";
        write_text_file(*opt.out_dir / "z.txt", z);
        m.outputs.push_back("z.txt");
      }
      write_text_file(*opt.out_dir / "manifest.txt", m.to_text());
    }
    return static_cast<int>(kExitOk);
  });
}

/// Runs the study grid and writes study.csv, the histogram files and
/// manifest.txt into out_dir.
inline int cmd_study(const StudyOptions& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (!opt.seed) throw ConfigError("seed", "is required for study");
    if (opt.reps == 0) throw ConfigError("reps", "must be >= 1");
    if (opt.out_dir.empty()) throw ConfigError("out-dir", "is required");
    StudyGrid grid =
        opt.grid == "default" ? StudyGrid{} : parse_study_grid(read_text_file(opt.grid));
    grid.replications = opt.reps;
    grid.base_seed = *opt.seed;
    grid.options = {parse_sampling(opt.sampling), opt.threads};
    const StudyOutput result = run_study_detailed(grid, opt.histograms);
    write_study_outputs(result, opt.out_dir);
    RunManifest m;
    m.command = "study";
    m.config = grid_entries(grid);
    m.config.insert(m.config.begin(), {"grid", opt.grid});
    m.seed = *opt.seed;
    m.reps = opt.reps;
    m.extra = {{"sampling", opt.sampling}};
    m.outputs = {"study.csv"};
    for (std::size_t c = 0; c < result.histograms.size(); ++c) {
      m.outputs.push_back(histogram_file_name(result.rows[c]));
    }
    write_text_file(opt.out_dir / "manifest.txt", m.to_text());
    out << "wrote " << result.rows.size() << " rows to " << (opt.out_dir / "study.csv").string()
        << '\n';
    return static_cast<int>(kExitOk);
  });
}

namespace detail {

inline std::string check_line(const Check& c) {
  return std::string(c.pass ? "PASS " : "FAIL ") + c.name + "  observed=" + format_real(c.observed) +
         " bound=" + format_real(c.bound);
}

inline std::string identity_line(const IdentityCheck& c) {
  const IdentityReport& r = c.report;
  return std::string(r.pass ? "PASS " : "FAIL ") + c.name + "  lhs=" + format_real(r.lhs.value) +
         " rhs=" + format_real(r.rhs.value) + " diff=" + format_real(r.difference) +
         " tol=" + format_real(r.tolerance);
}

}  // namespace detail

/// Runs the requested verification suites and prints one line per check.
/// Returns kExitVerificationFailed if any check fails.
inline int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    static const std::vector<std::string> suites = {"transform", "coefficients", "oracles", "all"};
    if (std::find(suites.begin(), suites.end(), opt.suite) == suites.end()) {
      throw ConfigError("suite", "'" + opt.suite + "' is not one of transform, coefficients, oracles, all");
    }
    if (!opt.seed) throw ConfigError("seed", "is required for verify");
    if (opt.reps < 2) throw ConfigError("reps", "must be >= 2");
    if (opt.mc_samples < 2) throw ConfigError("mc-samples", "must be >= 2");
    IdentitySuiteOptions id;
    id.replications = opt.reps;
    id.mc_samples = opt.mc_samples;
    id.quad.nodes = opt.nodes;
    id.quad.validate();
    id.simulation.threads = opt.threads;

    std::ostringstream report;
    std::size_t total = 0, failed = 0;
    const auto run_identity = [&](const std::string& name, CorrectionRoute route, std::uint64_t s) {
      std::size_t bad = 0;
      const auto checks = identity_suite(route, s, id);
      for (const auto& c : checks) {
        report << detail::identity_line(c) << '\n';
        if (!c.report.pass) ++bad;
      }
      report << "suite " << name << ": " << checks.size() - bad << "/" << checks.size()
             << " passed\n";
      total += checks.size();
      failed += bad;
    };
    const bool all = opt.suite == "all";
    if (all || opt.suite == "transform") {
      run_identity("transform", CorrectionRoute::transform, derive_seed(*opt.seed, {2}));
    }
    if (all || opt.suite == "coefficients") {
      run_identity("coefficients", CorrectionRoute::coefficients, derive_seed(*opt.seed, {5}));
    }
    if (all || opt.suite == "oracles") {
      const auto checks = oracle_suite(derive_seed(*opt.seed, {7}), opt.reps, id.simulation);
      std::size_t bad = 0;
      for (const auto& c : checks) {
        report << detail::check_line(c) << '\n';
        if (!c.pass) ++bad;
      }
      report << "suite oracles: " << checks.size() - bad << "/" << checks.size() << " passed\n";
      total += checks.size();
      failed += bad;
    }
    report << (failed == 0 ? "OK " : "FAILED ") << total - failed << "/" << total
           << " checks passed\n";
    out << report.str();
    if (opt.out_dir) {
      std::error_code ec;
      std::filesystem::create_directories(*opt.out_dir, ec);
      if (ec) throw IoError("cannot create " + opt.out_dir->string() + ": " + ec.message());
      write_text_file(*opt.out_dir / "verify.txt", report.str());
      RunManifest m;
      m.command = "verify";
      m.config = {{"suite", opt.suite},
                  {"mc_samples", std::to_string(opt.mc_samples)},
                  {"nodes", std::to_string(opt.nodes)}};
      m.seed = *opt.seed;
      m.reps = opt.reps;
      m.outputs = {"verify.txt"};
      write_text_file(*opt.out_dir / "manifest.txt", m.to_text());
    }
    return static_cast<int>(failed == 0 ? kExitOk : kExitVerificationFailed);
  });
}

}  // namespace gsnorm::cli

#endif  // GSNORM_CLI_HPP_
