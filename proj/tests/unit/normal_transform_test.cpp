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

#include "gsnorm/normal_transform.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "gsnorm/fundamental.hpp"
#include "gsnorm/normal.hpp"

namespace gsnorm {
namespace {

// Given S_1 + S_2 = x with independent N(0, sigma^2 x_j) increments,
// S_1 ~ N(x_1 x / T, sigma^2 x_1 x_2 / T), so P(S_1 < c) is a normal cdf.
double bridge_below(double c, double x1, double x2, double sigma, double x) {
  const double T = x1 + x2;
  return normal_cdf((c - x1 * x / T) / (sigma * std::sqrt(x1 * x2 / T)));
}

TEST(NormalTransform, SingleMapMatchesBridgeCdf) {
  const PsiSpec psi = PsiSpec::one_sided(1.2);
  const double scale = 2.5, sigma = 1.3;
  const std::vector<BoundedMap> maps = {BoundedMap::complement_of(psi, scale)};
  const std::vector<double> parts = {3.0, 5.0};
  for (double x : {-6.0, -1.0, 0.0, 2.0, 7.5, 15.0}) {
    const double expected = bridge_below(1.2 * scale, 3.0, 5.0, sigma, x);
    EXPECT_NEAR(normal_transform_recursive(maps, 0.0, sigma, parts, x), expected, 1e-15) << x;
    EXPECT_NEAR(normal_transform_direct(maps, 0.0, sigma, parts, x), expected, 1e-9) << x;
  }
}

TEST(NormalTransform, DirectAndRecursiveAgree) {
  const PsiSpec two = PsiSpec::two_sided(1.0);
  const PsiSpec one = PsiSpec::one_sided(0.5);
  const std::vector<BoundedMap> two_maps = {BoundedMap::complement_of(two, 1.0),
                                            BoundedMap::complement_of(one, std::sqrt(2.0))};
  const std::vector<double> two_parts = {1.0, 1.0, 2.0};
  for (double x : {-3.0, -0.3, 0.0, 1.7, 4.0}) {
    const double a = normal_transform_direct(two_maps, 0.0, 1.0, two_parts, x);
    const double b = normal_transform_recursive(two_maps, 0.0, 1.0, two_parts, x);
    EXPECT_NEAR(a, b, 1e-6) << x;
  }
  const std::vector<BoundedMap> three_maps = {
      BoundedMap::complement_of(two, 1.0), BoundedMap::complement_of(two, 1.4),
      BoundedMap::complement_of(two, 1.7) * BoundedMap::of(PsiSpec::constant(0.5))};
  const std::vector<double> three_parts = {1.0, 1.0, 1.0, 2.0};
  QuadratureSpec quad;
  quad.nodes = 48;
  quad.inner_nodes = 128;
  for (double x : {-2.0, 0.4, 3.0}) {
    const double a = normal_transform_direct(three_maps, 0.0, 1.0, three_parts, x, quad);
    const double b = normal_transform_recursive(three_maps, 0.0, 1.0, three_parts, x, quad);
    EXPECT_NEAR(a, b, 1e-6) << x;
  }
}

TEST(NormalTransform, AllOnesGivesOne) {
  const std::vector<BoundedMap> maps = {BoundedMap::one(),
                                        BoundedMap::complement_of(PsiSpec::constant(0.0))};
  const std::vector<double> parts = {2.0, 1.0, 4.0};
  for (double x : {-5.0, 0.0, 3.0}) {
    EXPECT_NEAR(normal_transform_direct(maps, 0.3, 1.0, parts, x), 1.0, 1e-9);
    EXPECT_NEAR(normal_transform_recursive(maps, 0.3, 1.0, parts, x), 1.0, 1e-12);
  }
}

TEST(NormalTransform, DoesNotDependOnDrift) {
  const std::vector<BoundedMap> maps = {BoundedMap::complement_of(PsiSpec::two_sided(1.0)),
                                        BoundedMap::complement_of(PsiSpec::two_sided(1.5))};
  const std::vector<double> parts = {1.0, 2.0, 1.0};
  for (double x : {-1.0, 2.0}) {
    const double base = normal_transform_direct(maps, 0.0, 1.0, parts, x);
    for (double mu : {-0.8, 0.4, 1.5}) {
      EXPECT_NEAR(normal_transform_direct(maps, mu, 1.0, parts, x), base, 1e-9) << mu;
    }
  }
}

TEST(NormalTransform, StaysInUnitInterval) {
  const std::vector<BoundedMap> maps = {BoundedMap::complement_of(PsiSpec::left_indicator()),
                                        BoundedMap::of(PsiSpec::one_sided(0.5), 0.7)};
  const std::vector<double> parts = {1.0, 1.0, 1.0};
  for (double x = -8.0; x <= 8.0; x += 0.5) {
    const double v = normal_transform_recursive(maps, 0.0, 1.0, parts, x);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0 + 1e-12);
  }
}

TEST(NormalTransform, RejectsBadArguments) {
  const std::vector<BoundedMap> maps = {BoundedMap::one()};
  EXPECT_THROW(normal_transform_recursive(maps, 0.0, 1.0, std::vector<double>{1.0}, 0.0),
               std::invalid_argument);
  EXPECT_THROW(normal_transform_recursive(maps, 0.0, 0.0, std::vector<double>{1.0, 1.0}, 0.0),
               std::invalid_argument);
  EXPECT_THROW(normal_transform_recursive(maps, 0.0, 1.0, std::vector<double>{1.0, -1.0}, 0.0),
               std::invalid_argument);
  EXPECT_THROW(BoundedMap::of(PsiSpec::one_sided(1.0), 0.0), std::invalid_argument);
}

TEST(LookTransform, FirstLookIsOneAndIndexIsChecked) {
  TrialConfig c;
  c.looks = {1, 2, 3};
  c.n = 10;
  c.psi = PsiSpec::two_sided(1.0);
  EXPECT_EQ(look_transform(c, 1, 0.7), 1.0);
  EXPECT_THROW(look_transform(c, 0, 0.0), std::out_of_range);
  EXPECT_THROW(look_transform(c, 3, 0.0), std::out_of_range);
}

TEST(LookTransform, AgreesWithCoefficientRepresentation) {
  TrialConfig c;
  c.looks = {1, 2, 4, 5};
  c.n = 7;
  c.gamma = 0.3;
  c.sigma = 1.4;
  c.psi = PsiSpec::two_sided(0.8);
  for (std::size_t i : {2u, 3u}) {
    for (double x : {-20.0, 0.0, 12.0}) {
      const double q = look_transform(c, i, x);
      const IdentityTerm mc = look_transform_by_coefficients(c, i, x, 40'000, 21 + i);
      EXPECT_NEAR(q, mc.value, 4.0 * mc.standard_error + 1e-12) << "i=" << i << " x=" << x;
    }
  }
}

}  // namespace
}  // namespace gsnorm
