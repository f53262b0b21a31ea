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

#ifndef GSNORM_NORMAL_TRANSFORM_HPP_
#define GSNORM_NORMAL_TRANSFORM_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gsnorm/normal.hpp"
#include "gsnorm/psi.hpp"
#include "gsnorm/quadrature.hpp"
#include "gsnorm/trial.hpp"

namespace gsnorm {

/*
 * A [0, 1]-valued step map built from stopping maps: a pointwise product of
 * factors psi(x / scale) or 1 - psi(x / scale). The empty product is the
 * constant 1.
 */
class BoundedMap {
 public:
  struct Factor {
    PsiSpec psi;
    double scale = 1.0;
    bool complement = false;
  };

  BoundedMap() = default;

  static BoundedMap one() { return {}; }
  static BoundedMap of(const PsiSpec& psi, double scale = 1.0) {
    return BoundedMap({Factor{psi, check_scale(scale), false}});
  }
  static BoundedMap complement_of(const PsiSpec& psi, double scale = 1.0) {
    return BoundedMap({Factor{psi, check_scale(scale), true}});
  }

  BoundedMap operator*(const BoundedMap& other) const {
    std::vector<Factor> f = factors_;
    f.insert(f.end(), other.factors_.begin(), other.factors_.end());
    return BoundedMap(std::move(f));
  }

  double operator()(double x) const {
    double v = 1.0;
    for (const auto& f : factors_) {
      const double p = f.psi(x / f.scale);
      v *= f.complement ? 1.0 - p : p;
    }
    return v;
  }

  std::vector<double> breakpoints() const {
    std::vector<double> out;
    for (const auto& f : factors_) {
      for (double b : f.psi.breakpoints()) out.push_back(b * f.scale);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool is_constant() const { return breakpoints().empty(); }
  const std::vector<Factor>& factors() const { return factors_; }

 private:
  explicit BoundedMap(std::vector<Factor> f) : factors_(std::move(f)) {}
  static double check_scale(double s) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("BoundedMap: scale must be > 0");
    return s;
  }

  std::vector<Factor> factors_;
};

/// Exact E[b(offset + spread * xi)] for a step map b.
inline double gaussian_step_expectation(const BoundedMap& b, double offset, double spread) {
  if (spread == 0.0) return b(offset);
  std::vector<double> cuts;
  for (double bp : b.breakpoints()) cuts.push_back((bp - offset) / spread);
  return NormalIntegrator::step_expectation([&](double t) { return b(offset + spread * t); },
                                            std::move(cuts));
}

namespace detail {

inline void check_transform_args(std::span<const BoundedMap> maps, double sigma,
                                 std::span<const double> parts) {
  if (maps.empty()) throw std::invalid_argument("normal transform: need at least one map");
  if (parts.size() != maps.size() + 1) {
    throw std::invalid_argument("normal transform: need one more part than maps");
  }
  if (!(sigma > 0.0)) throw std::invalid_argument("normal transform: sigma must be > 0");
  for (double p : parts) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("normal transform: parts must be > 0");
    }
  }
}

}  // namespace detail

/*
 * The normal transform from its defining integral: the numerator is an
 * i-fold integral over the increments z_j ~ N(mu x_j, sigma^2 x_j) of
 * prod_j b_j(z_1 + ... + z_j) times the density of the last increment at
 * x - sum z, and the denominator is the N(mu X, sigma^2 X) density at x,
 * X = sum of all parts. Each increment is standardised, z_j = mu x_j +
 * sigma sqrt(x_j) u_j, and integrated with the composite rule, cut where
 * b_j jumps. The outer dimensions use quad.nodes, the innermost
 * quad.inner_nodes. Cost grows like nodes^i, so i is limited to 3.
 */
inline double normal_transform_direct(std::span<const BoundedMap> maps, double mu, double sigma,
                                      std::span<const double> parts, double x,
                                      const QuadratureSpec& quad = {}) {
  detail::check_transform_args(maps, sigma, parts);
  quad.validate();
  const std::size_t i = maps.size();
  if (i > 3) throw std::invalid_argument("normal_transform_direct: at most 3 maps");

  const NormalIntegrator outer(quad.nodes), inner(quad.inner_nodes);
  double total = 0.0;
  for (double p : parts) total += p;
  const double total_sd = sigma * std::sqrt(total);
  const double log_denominator = normal_log_pdf((x - mu * total) / total_sd) - std::log(total_sd);
  const double last = parts[i];
  const double last_sd = sigma * std::sqrt(last);

  std::function<double(std::size_t, double)> level = [&](std::size_t j, double partial) -> double {
    if (j == i) {
      return std::exp(normal_log_pdf((x - partial - mu * last) / last_sd) - std::log(last_sd) -
                      log_denominator);
    }
    const double centre = partial + mu * parts[j];
    const double sd = sigma * std::sqrt(parts[j]);
    std::vector<double> cuts;
    for (double bp : maps[j].breakpoints()) cuts.push_back((bp - centre) / sd);
    const auto integrand = [&](double u) {
      const double z = centre + sd * u;
      const double b = maps[j](z);
      return b == 0.0 ? 0.0 : b * level(j + 1, z);
    };
    const NormalIntegrator& rule = (j + 1 == i) ? inner : outer;
    return rule.expect_composite(integrand, cuts);
  };
  return level(0, 0.0);
}

/*
 * The normal transform by repeated conditioning. With tail sums
 * T_k = x_k + ... + x_{i+1}, the last map is folded into its predecessor,
 *
 *   b~_{i-1}(z) = b_{i-1}(z) E[b_i(T_{i+1}/T_i z + x_i/T_i x + s xi)],
 *   s = sigma sqrt(x_i T_{i+1} / T_i),
 *
 * and the last two parts merged, until a single map remains and
 * N = E[b~_1(x_1/T_1 x + sigma sqrt(x_1 T_2/T_1) xi)]. The innermost
 * expectation is exact (step map against a Gaussian); the others use the
 * integrator, cut at the jumps of the map being folded. Folded maps are
 * evaluated on demand rather than tabulated, so no interpolation error
 * enters; cost is (nodes)^(i-1).
 */
inline double normal_transform_recursive(std::span<const BoundedMap> maps, double mu, double sigma,
                                         std::span<const double> parts, double x,
                                         const QuadratureSpec& quad = {}) {
  (void)mu;  // conditioning on the endpoint removes the drift
  detail::check_transform_args(maps, sigma, parts);
  quad.validate();
  const std::size_t i = maps.size();
  std::vector<double> tail(i + 2, 0.0);
  for (std::size_t k = i + 1; k-- > 0;) tail[k] = tail[k + 1] + parts[k];

  const NormalIntegrator outer(quad.nodes), inner(quad.inner_nodes);

  // E[F_j(offset + spread xi)] with F_j = b_j * G_{j+1} and F_{i-1} = b_{i-1}.
  std::function<double(std::size_t, double, double)> expect_folded =
      [&](std::size_t j, double offset, double spread) -> double {
    if (j + 1 == i) return gaussian_step_expectation(maps[j], offset, spread);
    const double c = tail[j + 2] / tail[j + 1];
    const double d = parts[j + 1] / tail[j + 1] * x;
    const double s = sigma * std::sqrt(parts[j + 1] * tail[j + 2] / tail[j + 1]);
    std::vector<double> cuts;
    for (double bp : maps[j].breakpoints()) cuts.push_back((bp - offset) / spread);
    const auto integrand = [&](double t) {
      const double z = offset + spread * t;
      const double b = maps[j](z);
      return b == 0.0 ? 0.0 : b * expect_folded(j + 1, c * z + d, s);
    };
    const NormalIntegrator& rule = (j + 2 == i) ? inner : outer;
    return rule.expect(integrand, cuts);
  };

  const double offset = parts[0] / tail[0] * x;
  const double spread = sigma * std::sqrt(parts[0] * tail[1] / tail[0]);
  return expect_folded(0, offset, spread);
}

/// Continuation maps 1 - psi(z / m_j^gamma), j = 1..i-1, and the increments
/// m_1, m_2 - m_1, ..., m_i - m_{i-1} (m_j = k_j n) that define N_{n,i}.
struct LookTransformInputs {
  std::vector<BoundedMap> maps;
  std::vector<double> parts;
};

inline LookTransformInputs look_transform_inputs(const TrialConfig& config, std::size_t i) {
  LookTransformInputs in;
  double previous = 0.0;
  for (std::size_t j = 0; j < i; ++j) {
    const double m = static_cast<double>(config.look_size(j));
    in.parts.push_back(m - previous);
    previous = m;
    if (j + 1 < i) in.maps.push_back(BoundedMap::complement_of(config.psi, std::pow(m, config.gamma)));
  }
  return in;
}

/*
 * N_{n,i}(x): probability-like weight that a trial whose running sum at look
 * i equals x had not stopped at looks 1..i-1. Equal to 1 at the first look.
 * i is 1-based, 1 <= i <= L.
 */
inline double look_transform(const TrialConfig& config, std::size_t i, double x,
                             const QuadratureSpec& quad = {}) {
  config.validate();
  if (i < 1 || i > config.interim_looks()) {
    throw std::out_of_range("look_transform: look index out of range");
  }
  if (i == 1) return 1.0;
  const LookTransformInputs in = look_transform_inputs(config, i);
  return normal_transform_recursive(in.maps, config.mu - config.null_mean, config.sigma, in.parts,
                                    x, quad);
}

}  // namespace gsnorm

#endif  // GSNORM_NORMAL_TRANSFORM_HPP_
