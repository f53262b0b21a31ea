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

#ifndef GSNORM_VERIFICATION_HPP_
#define GSNORM_VERIFICATION_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gsnorm/experiments.hpp"
#include "gsnorm/fundamental.hpp"
#include "gsnorm/metrics.hpp"
#include "gsnorm/quadrature.hpp"
#include "gsnorm/trial.hpp"

namespace gsnorm {

/// Configurations on which the two correction-sum routes are checked:
/// looks (1,2) and (1,2,3), gamma in {0, 1/2, 1}, mu in {0, 1}, C in {1, 2},
/// both threshold rules, n in {10, 50}.
inline std::vector<TrialConfig> verification_grid() {
  std::vector<TrialConfig> out;
  for (const std::vector<int>& looks : {std::vector<int>{1, 2}, std::vector<int>{1, 2, 3}}) {
    for (double g : {0.0, 0.5, 1.0}) {
      for (double mu : {0.0, 1.0}) {
        for (double C : {1.0, 2.0}) {
          for (bool two : {false, true}) {
            for (int n : {10, 50}) {
              TrialConfig c;
              c.mu = mu;
              c.gamma = g;
              c.looks = looks;
              c.n = n;
              c.psi = two ? PsiSpec::two_sided(C) : PsiSpec::one_sided(C);
              out.push_back(c);
            }
          }
        }
      }
    }
  }
  return out;
}

inline std::vector<TestFunctionSpec> verification_test_functions() {
  return {TestFunctionSpec::leq(0.0), TestFunctionSpec::abs_leq(kNominalQuantile)};
}

inline std::string config_name(const TrialConfig& c) {
  std::string looks;
  for (int k : c.looks) looks += (looks.empty() ? "" : ",") + std::to_string(k);
  return "mu=" + format_real(c.mu) + " gamma=" + format_real(c.gamma) + " looks=(" + looks +
         ") n=" + std::to_string(c.n) + " " + c.psi.kind() + "(" +
         format_real(c.psi.threshold().value_or(0.0)) + ")";
}

struct IdentitySuiteOptions {
  std::size_t replications = 100'000;  // simulated trials per configuration
  std::size_t mc_samples = 100'000;    // coefficient draws per configuration
  QuadratureSpec quad;
  SimulationOptions simulation;
};

struct IdentityCheck {
  std::string name;
  IdentityReport report;
};

/*
 * For every verification configuration and test function, compares the
 * simulated discrepancy with the chosen correction-sum route. Configuration
 * c simulates from derive_seed(seed, {c, 0}) and the coefficient route draws
 * from derive_seed(seed, {c, 1}). One simulated batch serves both test
 * functions.
 */
inline std::vector<IdentityCheck> identity_suite(CorrectionRoute route, std::uint64_t seed,
                                                 const IdentitySuiteOptions& opt = {}) {
  std::vector<IdentityCheck> out;
  const auto grid = verification_grid();
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const SampleSet batch =
        simulate_batch(grid[c], opt.replications, derive_seed(seed, {c, 0}), opt.simulation);
    for (const auto& h : verification_test_functions()) {
      IdentityReport rep;
      rep.lhs = stopping_discrepancy(batch, h);
      rep.rhs = route == CorrectionRoute::transform
                    ? correction_sum_by_transform(grid[c], h, opt.quad, opt.mc_samples,
                                                  derive_seed(seed, {c, 1}),
                                                  opt.simulation.threads)
                    : correction_sum_by_coefficients(grid[c], h, opt.mc_samples,
                                                     derive_seed(seed, {c, 1}),
                                                     opt.simulation.threads);
      rep.difference = rep.lhs.value - rep.rhs.value;
      rep.combined_se = std::hypot(rep.lhs.standard_error, rep.rhs.standard_error);
      rep.tolerance = 3.0 * rep.combined_se + kQuadratureBudget;
      rep.pass = std::abs(rep.difference) <= rep.tolerance;
      out.push_back({config_name(grid[c]) + " h=" + h.label(), rep});
    }
  }
  return out;
}

/// Two-look sign-stop trial: stop at look 1 iff the sum is <= 0.
inline TrialConfig sign_stop_config(int n) {
  TrialConfig c;
  c.looks = {1, 2};
  c.n = n;
  c.psi = PsiSpec::left_indicator();
  return c;
}

/// Two-look two-sided threshold trial with gamma = 1/2 and mu = 0.
inline TrialConfig pocock_config(double C, int n) {
  TrialConfig c;
  c.gamma = 0.5;
  c.looks = {1, 2};
  c.n = n;
  c.psi = PsiSpec::two_sided(C);
  return c;
}

/*
 * Closed-form checks plus their simulated counterparts:
 *  - the sign-stop Kolmogorov distance is exactly 1/8, and simulation at
 *    n = 10, 50, 500 lands within 0.01 of it;
 *  - for C = 1, 2 the two-look threshold discrepancy at x = -C is at least
 *    the product lower bound, and simulation at n = 50 stays above the bound
 *    minus 0.01.
 */
inline std::vector<Check> oracle_suite(std::uint64_t seed, std::size_t replications = 100'000,
                                       const SimulationOptions& simulation = {}) {
  std::vector<Check> out;
  const double exact = sign_stop_kolmogorov();
  out.push_back({"sign-stop Kolmogorov distance == 1/8", exact, 0.125, exact == 0.125});
  std::uint64_t k = 0;
  for (int n : {10, 50, 500}) {
    const SampleSet s = simulate_batch(sign_stop_config(n), replications, derive_seed(seed, {k++}),
                                       simulation);
    const double ks = empirical_ks(s.z_values());
    out.push_back({"sign-stop simulated KS n=" + std::to_string(n) + " within 0.01 of 1/8", ks,
                   0.01, std::abs(ks - 0.125) <= 0.01});
  }
  for (double C : {1.0, 2.0}) {
    const double bound = pocock_two_look_lower_bound(C);
    const double at_minus_c = std::abs(pocock_two_look_discrepancy(C, -C));
    out.push_back({"two-look threshold C=" + format_real(C) + " |discrepancy(-C)| >= bound",
                   at_minus_c, bound, at_minus_c >= bound});
    const SampleSet s = simulate_batch(pocock_config(C, 50), replications,
                                       derive_seed(seed, {k++}), simulation);
    const double ks = empirical_ks(s.z_values());
    out.push_back({"two-look threshold C=" + format_real(C) + " simulated KS n=50 >= bound - 0.01",
                   ks, bound - 0.01, ks >= bound - 0.01});
  }
  return out;
}

}  // namespace gsnorm

#endif  // GSNORM_VERIFICATION_HPP_
