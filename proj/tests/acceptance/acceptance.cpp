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

// Acceptance suite. Prints one PASS/FAIL line per criterion, followed by
// indented detail lines, and exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "gsnorm.hpp"
#include "gsnorm/cli.hpp"

namespace {

using namespace gsnorm;

// Fixed before any acceptance run; never re-chosen.
constexpr std::uint64_t kSeed = 20261019;
constexpr std::size_t kReps = 100'000;

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, title.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void note(const std::string& line) {
  std::printf("    %s\n", line.c_str());
  std::fflush(stdout);
}

std::string num(double v) { return format_real(v); }

// Lists failing checks (at most `limit`) as detail lines; returns the count.
std::size_t list_failures(const std::vector<Check>& checks, std::size_t limit = 12) {
  std::size_t bad = 0;
  for (const auto& c : checks) {
    if (c.pass) continue;
    if (bad++ < limit) {
      note("failed: " + c.name + " observed=" + num(c.observed) + " bound=" + num(c.bound));
    }
  }
  if (bad > limit) note("... " + std::to_string(bad - limit) + " more");
  return bad;
}

std::string tally(const std::vector<Check>& checks) {
  const auto ok = std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  return std::to_string(ok) + "/" + std::to_string(checks.size()) + " checks";
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void sign_stop_oracle() {
  std::vector<Check> checks;
  const double exact = sign_stop_kolmogorov();
  checks.push_back({"closed-form Kolmogorov distance", exact, 0.125, exact == 0.125});
  std::uint64_t k = 0;
  for (int n : {10, 50, 500}) {
    const SampleSet s = simulate_batch(sign_stop_config(n), kReps, derive_seed(kSeed, {1, k++}));
    const double ks = empirical_ks(s.z_values());
    checks.push_back({"simulated KS n=" + std::to_string(n), ks, 0.01,
                      std::abs(ks - 0.125) <= 0.01});
    note("n=" + std::to_string(n) + " ks=" + num(ks));
  }
  list_failures(checks);
  report(1, "sign-stop trial: exact distance 1/8, simulated within 0.01", all_pass(checks),
         tally(checks));
}

void threshold_persistence() {
  std::vector<Check> checks;
  std::uint64_t k = 0;
  for (double C : {1.0, 2.0}) {
    const double bound = pocock_two_look_lower_bound(C);
    std::string line = "C=" + num(C) + " bound=" + num(bound) + " ks:";
    for (int n : {10, 50, 100, 500}) {
      const SampleSet s = simulate_batch(pocock_config(C, n), kReps, derive_seed(kSeed, {2, k++}));
      const double ks = empirical_ks(s.z_values());
      checks.push_back({"C=" + num(C) + " n=" + std::to_string(n), ks, bound - 0.01,
                        ks >= bound - 0.01});
      line += " " + num(ks);
    }
    note(line);
  }
  list_failures(checks);
  report(2, "two-look threshold, gamma=1/2, mu=0: KS stays above the lower bound - 0.01",
         all_pass(checks), tally(checks));
}

void identity(int id, const std::string& title, CorrectionRoute route, std::uint64_t seed) {
  IdentitySuiteOptions opt;
  opt.replications = kReps;
  opt.mc_samples = kReps;
  const auto checks = identity_suite(route, seed, opt);
  std::vector<Check> flat;
  double worst = 0.0;
  for (const auto& c : checks) {
    flat.push_back({c.name + " lhs=" + num(c.report.lhs.value) + " rhs=" + num(c.report.rhs.value),
                    c.report.difference, c.report.tolerance, c.report.pass});
    worst = std::max(worst, std::abs(c.report.difference) / c.report.tolerance);
  }
  list_failures(flat);
  note("largest |lhs - rhs| / tolerance = " + num(worst));
  report(id, title, all_pass(flat), tally(flat));
}

// Random step maps: threshold or sign rules, optionally times a constant.
BoundedMap random_map(RandomStream& rng) {
  const double C = 0.2 + 2.0 * rng.uniform();
  const double scale = 0.5 + 2.5 * rng.uniform();
  const double u = rng.uniform();
  PsiSpec psi = u < 0.4 ? PsiSpec::two_sided(C)
                        : (u < 0.8 ? PsiSpec::one_sided(C) : PsiSpec::left_indicator());
  BoundedMap b = rng.uniform() < 0.5 ? BoundedMap::complement_of(psi, scale)
                                     : BoundedMap::of(psi, scale);
  if (rng.uniform() < 0.25) b = b * BoundedMap::of(PsiSpec::constant(0.3 + 0.6 * rng.uniform()));
  return b;
}

void route_equivalence() {
  RandomStream rng(derive_seed(kSeed, {5}));
  QuadratureSpec quad;
  quad.inner_nodes = 256;
  std::vector<Check> checks;
  double worst = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const std::size_t i = 1 + draw % 3;
    std::vector<BoundedMap> maps;
    std::vector<double> parts;
    for (std::size_t j = 0; j < i; ++j) maps.push_back(random_map(rng));
    for (std::size_t j = 0; j <= i; ++j) parts.push_back(0.5 + 2.0 * rng.uniform());
    const double mu = 2.0 * rng.uniform() - 1.0;
    const double sigma = 0.5 + rng.uniform();
    double total = 0.0;
    for (double p : parts) total += p;
    const double x = mu * total + sigma * std::sqrt(total) * 2.0 * (2.0 * rng.uniform() - 1.0);
    const double a = normal_transform_direct(maps, mu, sigma, parts, x, quad);
    const double b = normal_transform_recursive(maps, mu, sigma, parts, x, quad);
    worst = std::max(worst, std::abs(a - b));
    checks.push_back({"draw " + std::to_string(draw) + " i=" + std::to_string(i) + " direct=" +
                          num(a) + " recursive=" + num(b),
                      std::abs(a - b), 1e-6, std::abs(a - b) <= 1e-6});
  }
  for (std::size_t i = 1; i <= 3; ++i) {
    const std::vector<BoundedMap> ones(i, BoundedMap::one());
    const std::vector<double> parts(i + 1, 1.0);
    for (double x : {-2.0, 0.0, 3.0}) {
      const double a = normal_transform_direct(ones, 0.4, 1.0, parts, x, quad);
      const double b = normal_transform_recursive(ones, 0.4, 1.0, parts, x, quad);
      const double err = std::max(std::abs(a - 1.0), std::abs(b - 1.0));
      checks.push_back({"all-ones i=" + std::to_string(i) + " x=" + num(x), err, 1e-9, err <= 1e-9});
    }
  }
  list_failures(checks);
  note("largest |direct - recursive| over 20 draws = " + num(worst));
  report(5, "normal transform: direct and recursive routes agree to 1e-6; all-ones gives 1",
         all_pass(checks), tally(checks));
}

void study_criteria() {
  StudyGrid grid;
  grid.replications = kReps;
  grid.base_seed = derive_seed(kSeed, {6});
  Timer t;
  const std::vector<StudyRow> rows = run_study(grid);
  note("default grid: " + std::to_string(rows.size()) + " cells x " + std::to_string(kReps) +
       " replications in " + num(t.seconds()) + " s");

  const ReferenceComparison cmp = compare_reference_cells(rows);
  for (const auto& c : cmp.reproduced) note(c.name + " ks=" + num(c.observed));
  std::vector<Check> six = cmp.reproduced;
  six.insert(six.end(), cmp.large.begin(), cmp.large.end());
  six.insert(six.end(), cmp.covered_small.begin(), cmp.covered_small.end());
  list_failures(six);
  report(6, "reference large-distance cells within 0.03; other covered non-E2 cells <= 0.05",
         all_pass(six), tally(six));

  const auto seven = coverage_checks(rows);
  double lo = 1.0, hi = 0.0;
  for (const auto& c : seven) {
    lo = std::min(lo, c.observed);
    hi = std::max(hi, c.observed);
  }
  list_failures(seven, 40);
  note("coverage range over n >= 50 cells: [" + num(lo) + ", " + num(hi) + "]");
  report(7, "coverage within 0.95 +- 0.02 for every cell with n >= 50", all_pass(seven),
         tally(seven));

  const ConvergenceChecks literal = convergence_checks(rows);
  std::vector<Check> eight = literal.covered;
  eight.insert(eight.end(), literal.e2.begin(), literal.e2.end());
  list_failures(eight, 40);
  report(8, "KS(500) <= KS(50) + 2 SE for covered cells; KS(500) < KS(50) - 0.02 for E2 cells",
         all_pass(eight), tally(eight));
  // Cells whose rule has no breakpoint (two-sided C = 0) never look at the
  // data, so z is exactly normal and the E2 margin cannot be met there.
  const ConvergenceChecks proper = convergence_checks(rows, true);
  std::vector<Check> eight_b = proper.covered;
  eight_b.insert(eight_b.end(), proper.e2.begin(), proper.e2.end());
  note(std::string("supplementary, excluding data-independent rules: ") +
       (all_pass(eight_b) ? "all pass, " : "failures, ") + tally(eight_b));
  list_failures(eight_b);
}

void determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "gsnorm_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::string> csvs;
  bool ok = true;
  for (unsigned threads : {1u, 1u, 4u}) {
    cli::StudyOptions opt;
    opt.reps = 2000;
    opt.seed = kSeed;
    opt.threads = threads;
    opt.histograms = false;
    opt.out_dir = root / ("run" + std::to_string(csvs.size()));
    std::ostringstream out, err;
    if (cli::cmd_study(opt, out, err) != cli::kExitOk) {
      note("cmd_study failed: " + err.str());
      ok = false;
      break;
    }
    csvs.push_back(read_text_file(opt.out_dir / "study.csv"));
  }
  if (ok) ok = csvs.size() == 3 && csvs[0] == csvs[1] && csvs[0] == csvs[2];
  fs::remove_all(root);
  report(9, "cmd_study output is byte-identical across reruns and thread counts", ok,
         "default grid, 2000 replications, threads 1, 1, 4");
}

}  // namespace

int main() {
  std::printf("acceptance seed %llu, %zu replications per simulated configuration\n",
              static_cast<unsigned long long>(kSeed), kReps);
  Timer total;
  sign_stop_oracle();
  threshold_persistence();
  identity(3, "identity via normal transforms on the verification grid",
           CorrectionRoute::transform, derive_seed(kSeed, {3}));
  identity(4, "identity via coefficient variables on the verification grid",
           CorrectionRoute::coefficients, derive_seed(kSeed, {4}));
  route_equivalence();
  study_criteria();
  determinism();
  std::printf("%d criterion failure(s); %.1f s\n", failures, total.seconds());
  return failures == 0 ? 0 : 1;
}
