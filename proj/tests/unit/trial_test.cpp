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

#include "gsnorm/trial.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "gsnorm/normal.hpp"

namespace gsnorm {
namespace {

TrialConfig three_look(double mu, double gamma, PsiSpec psi, int n) {
  TrialConfig c;
  c.mu = mu;
  c.gamma = gamma;
  c.looks = {1, 2, 3};
  c.n = n;
  c.psi = psi;
  return c;
}

// Two-sample Kolmogorov-Smirnov statistic.
double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

TEST(TrialConfig, ValidationNamesTheField) {
  auto expect_field = [](TrialConfig c, const std::string& field) {
    try {
      c.validate();
      ADD_FAILURE() << "expected ConfigError for " << field;
    } catch (const ConfigError& e) {
      EXPECT_EQ(e.field(), field);
    }
  };
  TrialConfig c = three_look(0, 0.5, PsiSpec::two_sided(1), 10);
  c.looks = {1, 3, 2};
  expect_field(c, "looks");
  c.looks = {2, 2};
  expect_field(c, "looks");
  c.looks = {1};
  expect_field(c, "looks");
  c.looks = {0, 1};
  expect_field(c, "looks");
  c = three_look(0, 0.5, PsiSpec::two_sided(1), 0);
  expect_field(c, "n");
  c = three_look(0, -0.1, PsiSpec::two_sided(1), 1);
  expect_field(c, "gamma");
  c = three_look(0, 0.5, PsiSpec::two_sided(1), 1);
  c.sigma = 0.0;
  expect_field(c, "sigma");
  c.sigma = 1.0;
  c.mu = INFINITY;
  expect_field(c, "mu");
}

TEST(SimulateBatch, RejectsZeroReplications) {
  EXPECT_THROW(simulate_batch(three_look(0, 0.5, PsiSpec::constant(0), 1), 0, 1),
               std::invalid_argument);
}

TEST(SimulateBatch, NeverStoppingGivesTheFixedSampleTrial) {
  const auto set = simulate_batch(three_look(0.4, 0.5, PsiSpec::constant(0), 7), 20'000, 11);
  double s1 = 0, s2 = 0;
  for (const auto& r : set.results) {
    ASSERT_EQ(r.stop_index, 3);
    ASSERT_EQ(r.sample_size, 21);
    s1 += r.z;
    s2 += r.z * r.z;
  }
  const double m = set.results.size();
  EXPECT_NEAR(s1 / m, 0.0, 4.0 / std::sqrt(m));
  EXPECT_NEAR(s2 / m, 1.0, 4.0 * std::sqrt(2.0 / m));
}

TEST(SimulateBatch, AlwaysStoppingEndsAtTheFirstLook) {
  const auto set = simulate_batch(three_look(-1, 0.0, PsiSpec::constant(1), 13), 1000, 12);
  for (const auto& r : set.results) {
    ASSERT_EQ(r.stop_index, 1);
    ASSERT_EQ(r.sample_size, 13);
  }
}

TEST(SimulateBatch, ConstantStoppingGivesGeometricStopIndex) {
  const double p = 0.3;
  const std::size_t m = 50'000;
  TrialConfig c = three_look(0, 0.5, PsiSpec::constant(p), 2);
  c.looks = {1, 2, 3, 4};  // three interim looks
  const auto set = simulate_batch(c, m, 13);
  std::vector<double> counts(4, 0.0);
  for (const auto& r : set.results) counts[r.stop_index - 1] += 1.0;
  const std::vector<double> expected = {p, p * (1 - p), p * (1 - p) * (1 - p),
                                        (1 - p) * (1 - p) * (1 - p)};
  for (std::size_t i = 0; i < 4; ++i) {
    const double se = std::sqrt(expected[i] * (1 - expected[i]) / m);
    EXPECT_NEAR(counts[i] / m, expected[i], 4.0 * se) << "look " << i + 1;
  }
}

TEST(SimulateBatch, FieldIdentitiesHold) {
  for (double mu : {-1.0, 0.0, 2.5, 300.0}) {
    TrialConfig c = three_look(mu, 0.75, PsiSpec::two_sided(1.0), 9);
    c.sigma = 1.7;
    const auto set = simulate_batch(c, 2000, 14);
    for (const auto& r : set.results) {
      const double N = static_cast<double>(r.sample_size);
      ASSERT_NEAR(r.sum, r.mean * N, 1e-12 * std::max(1.0, std::abs(r.sum)));
      const double z = std::sqrt(N) * (r.mean - mu) / c.sigma;
      const double scale = std::max({std::abs(r.z), std::sqrt(N) * std::abs(mu) / c.sigma, 1.0});
      ASSERT_NEAR(r.z, z, 1e-12 * scale);
      ASSERT_TRUE(r.sample_size == 9 || r.sample_size == 18 || r.sample_size == 27);
    }
  }
}

TEST(SimulateBatch, LocationShiftOfDataAndNullIsExact) {
  const TrialConfig base = three_look(0.0, 0.5, PsiSpec::two_sided(1.0), 10);
  TrialConfig shifted = base;
  shifted.mu = 3.25;
  shifted.null_mean = 3.25;
  const auto a = simulate_batch(base, 3000, 15);
  const auto b = simulate_batch(shifted, 3000, 15);
  for (std::size_t r = 0; r < a.results.size(); ++r) {
    ASSERT_EQ(a.results[r].stop_index, b.results[r].stop_index);
    ASSERT_EQ(a.results[r].z, b.results[r].z);
    ASSERT_NEAR(b.results[r].mean - a.results[r].mean, 3.25, 1e-12);
  }
}

TEST(SimulateBatch, IndependentOfThreadCount) {
  const TrialConfig c = three_look(1.0, 0.25, PsiSpec::one_sided(1.0), 20);
  const auto a = simulate_batch(c, 5000, 16, {SamplingMode::block_sums, 1});
  const auto b = simulate_batch(c, 5000, 16, {SamplingMode::block_sums, 4});
  for (std::size_t r = 0; r < a.results.size(); ++r) {
    ASSERT_EQ(a.results[r].z, b.results[r].z);
    ASSERT_EQ(a.results[r].sample_size, b.results[r].sample_size);
  }
}

TEST(SimulateBatch, BlockSumsAndObservationsAgreeInLaw) {
  const TrialConfig c = three_look(0.0, 0.5, PsiSpec::two_sided(1.0), 5);
  const std::size_t m = 40'000;
  const auto a = simulate_batch(c, m, 17, {SamplingMode::block_sums, 1});
  const auto b = simulate_batch(c, m, 18, {SamplingMode::observations, 1});
  // 0.1% critical value of the two-sample KS statistic: 1.95 sqrt(2/m).
  EXPECT_LT(two_sample_ks(a.z_values(), b.z_values()), 1.95 * std::sqrt(2.0 / m));
  double la = 0, lb = 0, sq = 0;
  for (const auto& r : a.results) {
    la += r.sample_size;
    sq += static_cast<double>(r.sample_size) * r.sample_size;
  }
  for (const auto& r : b.results) lb += r.sample_size;
  const double var = sq / m - (la / m) * (la / m);
  EXPECT_NEAR(la / m, lb / m, 4.0 * std::sqrt(2.0 * var / m));
}

TEST(SimulateTrial, SignStopPutsFiveEighthsBelowZero) {
  // Stop iff the first block sum is <= 0. Then z <= 0 either at the first
  // look (probability 1/2) or after continuing with S_1 > 0 and
  // S_1 + S_2 <= 0 (probability 1/8).
  TrialConfig c;
  c.looks = {1, 2};
  c.n = 25;
  c.psi = PsiSpec::left_indicator();
  const std::size_t m = 100'000;
  const auto set = simulate_batch(c, m, 19);
  double below = 0.0;
  for (const auto& r : set.results) below += r.z <= 0.0 ? 1.0 : 0.0;
  EXPECT_NEAR(below / m, 0.625, 4.0 * std::sqrt(0.625 * 0.375 / m));
}

}  // namespace
}  // namespace gsnorm
