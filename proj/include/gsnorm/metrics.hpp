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

#ifndef GSNORM_METRICS_HPP_
#define GSNORM_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsnorm/normal.hpp"
#include "gsnorm/psi.hpp"
#include "gsnorm/trial.hpp"

namespace gsnorm {

/// Default half-width multiplier of the naive interval.
inline constexpr double kNominalQuantile = 1.96;

/// sup_x |F_m(x) - Phi(x)| for the empirical CDF F_m of `sample`, evaluated
/// exactly at the jump points.
inline double empirical_ks(std::span<const double> sample) {
  if (sample.empty()) throw std::invalid_argument("empirical_ks: empty sample");
  std::vector<double> z(sample.begin(), sample.end());
  std::sort(z.begin(), z.end());
  const double m = static_cast<double>(z.size());
  double d = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double p = normal_cdf(z[i]);
    d = std::max({d, (i + 1) / m - p, p - i / m});
  }
  return d;
}

struct CoverageSummary {
  double coverage = 0.0;
  double avg_lower = 0.0;
  double avg_upper = 0.0;
};

/// Share of replications whose interval mean -+ x sigma / sqrt(N) contains
/// mu (equivalently |z| <= x), and the average interval endpoints.
inline CoverageSummary coverage_and_limits(const SampleSet& samples, double x = kNominalQuantile) {
  if (!(x > 0.0)) throw std::invalid_argument("coverage_and_limits: x must be > 0");
  if (samples.results.empty()) throw std::invalid_argument("coverage_and_limits: empty sample set");
  CoverageSummary s;
  std::size_t hits = 0;
  for (const auto& r : samples.results) {
    const double half = x * samples.config.sigma / std::sqrt(static_cast<double>(r.sample_size));
    s.avg_lower += r.mean - half;
    s.avg_upper += r.mean + half;
    if (std::abs(r.z) <= x) ++hits;
  }
  const double m = static_cast<double>(samples.results.size());
  s.coverage = hits / m;
  s.avg_lower /= m;
  s.avg_upper /= m;
  return s;
}

/// "one" or "two" for the threshold rules, "none" otherwise.
inline std::string rule_side(const PsiSpec& psi) {
  const std::string kind = psi.kind();
  if (kind == "one_sided") return "one";
  if (kind == "two_sided") return "two";
  return "none";
}

/// A single named comparison.
struct Check {
  std::string name;
  double observed = 0.0;
  double bound = 0.0;
  bool pass = false;
};

inline bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

/// One line of the simulation study.
struct StudyRow {
  double mu = 0.0;
  int n = 0;
  double C = 0.0;
  double gamma = 0.0;
  std::string side;
  double avg_lower = 0.0;
  double avg_upper = 0.0;
  double coverage = 0.0;
  double ks = 0.0;
  double avg_length = 0.0;
  std::size_t replications = 0;
  std::uint64_t seed = 0;
};

inline StudyRow summarize(const SampleSet& samples, double x = kNominalQuantile) {
  const CoverageSummary cov = coverage_and_limits(samples, x);
  StudyRow row;
  row.mu = samples.config.mu;
  row.n = samples.config.n;
  row.C = samples.config.psi.threshold().value_or(0.0);
  row.gamma = samples.config.gamma;
  row.side = rule_side(samples.config.psi);
  row.avg_lower = cov.avg_lower;
  row.avg_upper = cov.avg_upper;
  row.coverage = cov.coverage;
  row.ks = empirical_ks(samples.z_values());
  double length = 0.0;
  for (const auto& r : samples.results) length += static_cast<double>(r.sample_size);
  row.avg_length = length / samples.results.size();
  row.replications = samples.results.size();
  row.seed = samples.seed;
  return row;
}

}  // namespace gsnorm

#endif  // GSNORM_METRICS_HPP_
