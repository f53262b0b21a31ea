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

#include "gsnorm/normal.hpp"

#include <cmath>

#include <gtest/gtest.h>

namespace gsnorm {
namespace {

// Phi(x) - 1/2 by composite Simpson integration of the density in long
// double. Independent of the erfc-based implementation.
long double simpson_cdf(long double x) {
  const int n = 200'000;
  const long double h = x / n;
  long double sum = 0.0L;
  for (int k = 0; k <= n; ++k) {
    const long double t = k * h;
    const long double w = (k == 0 || k == n) ? 1.0L : (k % 2 ? 4.0L : 2.0L);
    sum += w * std::exp(-0.5L * t * t);
  }
  return 0.5L + sum * h / 3.0L / std::sqrt(2.0L * 3.14159265358979323846L);
}

TEST(NormalCdf, MatchesSimpsonOracle) {
  for (double x : {-6.0, -3.0, -1.96, -0.5, 0.0, 0.3, 1.0, 2.5, 4.0}) {
    const double oracle = static_cast<double>(simpson_cdf(x));
    EXPECT_NEAR(normal_cdf(x), oracle, 1e-14 + 1e-12 * oracle) << "x=" << x;
  }
}

TEST(NormalCdf, MatchesHighPrecisionValues) {
  // 20-digit reference values.
  EXPECT_NEAR(normal_cdf(-8.0) / 6.2209605742717841235e-16, 1.0, 1e-12);
  EXPECT_NEAR(normal_cdf(-5.0) / 2.8665157187919391167e-7, 1.0, 1e-12);
  EXPECT_NEAR(normal_cdf(-1.96), 0.024997895148220436213, 1e-15);
  EXPECT_NEAR(normal_cdf(1.0), 0.84134474606854294859, 1e-15);
  EXPECT_NEAR(normal_cdf(1.96), 0.97500210485177956379, 1e-15);
  EXPECT_NEAR(normal_sf(8.0) / 6.2209605742717841235e-16, 1.0, 1e-12);
  EXPECT_EQ(normal_cdf(0.0), 0.5);
}

TEST(NormalMass, UsesTheAccurateTail) {
  // Both ends deep in the upper tail: a naive difference of cdfs loses
  // every digit here.
  const double direct = normal_sf(7.0) - normal_sf(7.5);
  EXPECT_GT(normal_mass(7.0, 7.5), 0.0);
  EXPECT_NEAR(normal_mass(7.0, 7.5) / direct, 1.0, 1e-12);
  EXPECT_NEAR(normal_mass(-7.5, -7.0) / direct, 1.0, 1e-12);
  EXPECT_EQ(normal_mass(1.0, 1.0), 0.0);
  EXPECT_NEAR(normal_mass(-INFINITY, INFINITY), 1.0, 1e-16);
}

TEST(NormalQuantile, InvertsTheCdf) {
  for (double p : {1e-12, 1e-6, 0.025, 0.3, 0.5, 0.9, 0.975, 1 - 1e-9}) {
    const double x = normal_quantile(p);
    EXPECT_NEAR(normal_cdf(x) / p, 1.0, 1e-12) << "p=" << p;
  }
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-13);
}

TEST(NormalPdf, LogPdfIsConsistent) {
  for (double x : {-30.0, -2.0, 0.0, 1.5}) {
    EXPECT_NEAR(normal_log_pdf(x), -0.5 * x * x - 0.5 * std::log(2.0 * M_PI), 1e-13);
  }
  EXPECT_NEAR(normal_pdf(0.0), 0.3989422804014327, 1e-16);
}

}  // namespace
}  // namespace gsnorm
