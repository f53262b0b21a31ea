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

// Command-line front end: simulate, study and verify.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gsnorm/cli.hpp"

namespace {

// CLI11 stores into plain values; these flags are optional in the library.
template <class T>
std::optional<T> present(const CLI::Option* opt, const T& value) {
  if (opt->count() == 0) return std::nullopt;
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = gsnorm::cli;
  CLI::App app{"Group sequential trial simulation and verification"};
  app.set_version_flag("--version", std::string(gsnorm::kVersion));
  app.require_subcommand(1);

  cli::SimulateOptions sim;
  std::uint64_t sim_seed = 0;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "Simulate one trial configuration");
  simulate->add_option("config", sim.config, "key = value configuration file")->required();
  simulate->add_option("--reps", sim.reps, "Replications")->capture_default_str();
  auto* sim_seed_opt = simulate->add_option("--seed", sim_seed, "Seed (random if omitted)");
  auto* sim_out_opt = simulate->add_option("--out", sim_out, "Output directory");
  simulate->add_flag("--dump-z", sim.dump_z, "Also write every z value to z.txt");
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  simulate->add_option("--sampling", sim.sampling, "block or observations")->capture_default_str();
  simulate->add_option("--quantile", sim.quantile, "Interval half-width in SE units")
      ->capture_default_str();

  cli::StudyOptions study;
  std::uint64_t study_seed = 0;
  std::string study_out;
  bool no_hist = false;
  auto* st = app.add_subcommand("study", "Run the simulation study grid");
  st->add_option("--grid", study.grid, "'default' or a grid file")->capture_default_str();
  st->add_option("--reps", study.reps, "Replications per cell")->capture_default_str();
  auto* study_seed_opt = st->add_option("--seed", study_seed, "Base seed (required)");
  st->add_option("--out-dir", study_out, "Output directory")->required();
  st->add_option("--threads", study.threads, "Worker threads (0 = all cores)");
  st->add_option("--sampling", study.sampling, "block or observations")->capture_default_str();
  st->add_flag("--no-histograms", no_hist, "Skip the per-cell histogram files");

  cli::VerifyOptions verify;
  std::uint64_t verify_seed = 0;
  std::string verify_out;
  auto* ve = app.add_subcommand("verify", "Check the distributional identities");
  ve->add_option("--suite", verify.suite, "transform, coefficients, oracles or all")
      ->check(CLI::IsMember({"transform", "coefficients", "oracles", "all"}))
      ->capture_default_str();
  auto* verify_seed_opt = ve->add_option("--seed", verify_seed, "Seed (required)");
  ve->add_option("--reps", verify.reps, "Simulated trials per configuration")->capture_default_str();
  ve->add_option("--mc-samples", verify.mc_samples, "Coefficient draws per configuration")
      ->capture_default_str();
  ve->add_option("--nodes", verify.nodes, "Quadrature nodes per dimension")->capture_default_str();
  ve->add_option("--threads", verify.threads, "Worker threads (0 = all cores)");
  auto* verify_out_opt = ve->add_option("--out-dir", verify_out, "Write report and manifest here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitValidation;
  }

  if (simulate->parsed()) {
    sim.seed = present(sim_seed_opt, sim_seed);
    if (sim_out_opt->count()) sim.out_dir = sim_out;
    return cli::cmd_simulate(sim, std::cout, std::cerr);
  }
  if (st->parsed()) {
    study.seed = present(study_seed_opt, study_seed);
    study.out_dir = study_out;
    study.histograms = !no_hist;
    return cli::cmd_study(study, std::cout, std::cerr);
  }
  verify.seed = present(verify_seed_opt, verify_seed);
  if (verify_out_opt->count()) verify.out_dir = verify_out;
  return cli::cmd_verify(verify, std::cout, std::cerr);
}
