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

#ifndef GSNORM_FUNDAMENTAL_HPP_
#define GSNORM_FUNDAMENTAL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsnorm/normal.hpp"
#include "gsnorm/normal_transform.hpp"
#include "gsnorm/parallel.hpp"
#include "gsnorm/quadrature.hpp"
#include "gsnorm/random.hpp"
#include "gsnorm/trial.hpp"

namespace gsnorm {

/// Indicator test functions: 1{v <= x} or 1{|v| <= x}.
struct TestFunctionSpec {
  enum class Kind { leq, abs_leq };
  Kind kind = Kind::leq;
  double x = 0.0;

  static TestFunctionSpec leq(double x) { return {Kind::leq, x}; }
  static TestFunctionSpec abs_leq(double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("abs_leq: x must be >= 0");
    return {Kind::abs_leq, x};
  }

  double operator()(double v) const {
    if (kind == Kind::leq) return v <= x ? 1.0 : 0.0;
    return std::abs(v) <= x ? 1.0 : 0.0;
  }
  std::vector<double> cuts() const {
    if (kind == Kind::leq) return {x};
    return {-x, x};
  }
  /// E[h(xi)] for standard normal xi.
  double standard_normal_mean() const {
    if (kind == Kind::leq) return normal_cdf(x);
    return normal_mass(-x, x);
  }
  std::string label() const {
    return (kind == Kind::leq ? "1{z<=" : "1{|z|<=") + std::to_string(x) + "}";
  }
};

/// A Monte Carlo or quadrature value with its error terms.
struct IdentityTerm {
  double value = 0.0;
  double standard_error = 0.0;    // Monte Carlo part
  double quadrature_error = 0.0;  // deterministic part, estimated by refinement
};

/*
 * One joint draw of the bridge coefficients (rho_{i,1}, ..., rho_{i,i-1}) for
 * increments x_1..x_i, built by the induction that merges the last two
 * increments: for i = 2, rho_{2,1} = sigma sqrt(x1 x2 / (x1 + x2)) xi; for
 * i > 2 draw rho' for (x_1, ..., x_{i-2}, x_{i-1} + x_i), keep rho'_j for
 * j <= i-2 and append
 *
 *   rho_{i,i-1} = x_i / (x_{i-1} + x_i) rho'_{i-2}
 *                 + sigma sqrt(x_{i-1} x_i / (x_{i-1} + x_i)) xi_new.
 *
 * The marginals agree with the Brownian-bridge deviations of the partial
 * sums given the total.
 */
inline std::vector<double> sample_rho(std::span<const double> increments, double sigma,
                                      RandomStream& rng) {
  if (increments.size() < 2) throw std::invalid_argument("sample_rho: need at least 2 increments");
  if (!(sigma > 0.0)) throw std::invalid_argument("sample_rho: sigma must be > 0");
  for (double x : increments) {
    if (!(x > 0.0)) throw std::invalid_argument("sample_rho: increments must be > 0");
  }
  const std::size_t i = increments.size();
  if (i == 2) {
    const double x1 = increments[0], x2 = increments[1];
    return {sigma * std::sqrt(x1 * x2 / (x1 + x2)) * rng.normal()};
  }
  std::vector<double> merged(increments.begin(), increments.end() - 1);
  merged.back() += increments[i - 1];
  std::vector<double> rho = sample_rho(merged, sigma, rng);
  const double a = increments[i - 2], b = increments[i - 1];
  rho.push_back(b / (a + b) * rho.back() + sigma * std::sqrt(a * b / (a + b)) * rng.normal());
  return rho;
}

/*
 * Coefficient variables of the correction sum, for looks i = 1..L (row i-1):
 *
 *   alpha_i  = sigma k_i^(1/2-g) xi
 *   gamma_i  = sigma k_i^(1/2-g) (sqrt(k_i/K) xi + sqrt((K-k_i)/K) eta)
 *   beta_ij  = sigma k_j^(1-g)/sqrt(k_i) xi + sigma_ij
 *   delta_ij = sigma k_j^(1-g)/sqrt(k_i) (sqrt(k_i/K) xi + sqrt((K-k_i)/K) eta)
 *              + sigma_ij
 *
 * with K = k_{L+1}, g the shape parameter, sigma_ij = rho_ij / k_j^g and
 * rho drawn by sample_rho on the increments k_1, k_2 - k_1, ..., k_i - k_{i-1}.
 * Each look's rho row is an independent draw. In gamma_i and delta_ij, xi
 * plays the final-analysis statistic: sqrt(k_i/K) is the correlation between
 * the look-i and final standardised sums.
 */
struct CoefficientSample {
  double xi = 0.0;
  double eta = 0.0;
  std::vector<std::vector<double>> rho;
  std::vector<std::vector<double>> sigma_coeff;
  std::vector<double> alpha;
  std::vector<double> gamma_c;
  std::vector<std::vector<double>> beta;
  std::vector<std::vector<double>> delta;
};

/// Draws xi, eta from `shocks` and every rho row from `bridges`, so the rho
/// rows are independent of (xi, eta).
inline CoefficientSample sample_coefficients(const TrialConfig& config, RandomStream& shocks,
                                             RandomStream& bridges) {
  const std::size_t L = config.interim_looks();
  const double g = config.gamma, sigma = config.sigma;
  const double kmax = config.looks.back();
  CoefficientSample c;
  c.xi = shocks.normal();
  c.eta = shocks.normal();
  c.rho.resize(L);
  c.sigma_coeff.resize(L);
  c.beta.resize(L);
  c.delta.resize(L);
  std::vector<double> increments;
  for (std::size_t i = 0; i < L; ++i) {
    const double ki = config.looks[i];
    increments.push_back(i == 0 ? ki : ki - config.looks[i - 1]);
    const double mix = std::sqrt(ki / kmax) * c.xi + std::sqrt((kmax - ki) / kmax) * c.eta;
    c.alpha.push_back(sigma * std::pow(ki, 0.5 - g) * c.xi);
    c.gamma_c.push_back(sigma * std::pow(ki, 0.5 - g) * mix);
    if (i == 0) continue;
    c.rho[i] = sample_rho(increments, sigma, bridges);
    for (std::size_t j = 0; j < i; ++j) {
      const double kj = config.looks[j];
      const double s = c.rho[i][j] / std::pow(kj, g);
      const double lead = sigma * std::pow(kj, 1.0 - g) / std::sqrt(ki);
      c.sigma_coeff[i].push_back(s);
      c.beta[i].push_back(lead * c.xi + s);
      c.delta[i].push_back(lead * mix + s);
    }
  }
  return c;
}

/*
 * E[h(z)] - E[h(xi)] from a simulated batch, z the standardised estimate and
 * xi standard normal; E[h(xi)] is exact. This orientation is the one the
 * correction sums below equal: with a single look,
 *
 *   E[h(z)] = E[h(Z_1) psi(Z_1)] + E[h(Z_M) (1 - psi(Z_1))]
 *
 * and Z_M is standard normal, so E[h(z)] - E[h(xi)] is the stop term minus
 * its value under the final-analysis coupling.
 */
inline IdentityTerm stopping_discrepancy(const SampleSet& samples, const TestFunctionSpec& h) {
  const std::size_t m = samples.results.size();
  if (m < 2) throw std::invalid_argument("stopping_discrepancy: need at least 2 replications");
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& r : samples.results) {
    const double v = h(r.z);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / m;
  const double var = std::max(0.0, (sum_sq - m * mean * mean) / (m - 1));
  return {mean - h.standard_normal_mean(), std::sqrt(var / m), 0.0};
}

inline IdentityTerm stopping_discrepancy(const TrialConfig& config, const TestFunctionSpec& h,
                                         std::size_t replications, std::uint64_t seed,
                                         const SimulationOptions& options = {}) {
  return stopping_discrepancy(simulate_batch(config, replications, seed, options), h);
}

namespace detail {

inline void append_affine_cuts(std::vector<double>& cuts, const std::vector<double>& breakpoints,
                               double offset, double slope) {
  if (slope == 0.0) return;
  for (double bp : breakpoints) cuts.push_back((bp - offset) / slope);
}

// Sum over looks of E[h(xi) {P_i(A) - P_i(B)}] with
//   A = mu m + sigma sqrt(m) xi,
//   B = mu m + sigma m / sqrt(M) xi + sigma sqrt(m (M - m) / M) eta,
//   P_i = psi_m * N_{n,i},
// for looks whose N_{n,i} has at most one continuation map (i <= 2).
// B is the look-i sum given that the final standardised sum equals xi.
inline double correction_by_quadrature(const TrialConfig& config, const TestFunctionSpec& h,
                                       const QuadratureSpec& quad) {
  const NormalIntegrator outer(quad.nodes), inner(quad.inner_nodes);
  const std::size_t L = config.interim_looks();
  const double mu = config.mu - config.null_mean, sigma = config.sigma;
  const double M = static_cast<double>(config.max_size());
  const std::vector<double> h_cuts = h.cuts();
  double total = 0.0;
  for (std::size_t i = 1; i <= std::min<std::size_t>(L, 2); ++i) {
    const double m = static_cast<double>(config.look_size(i - 1));
    const double scale = std::pow(m, config.gamma);
    const BoundedMap stop = BoundedMap::of(config.psi, scale);
    const std::vector<double> stop_bps = stop.breakpoints();
    LookTransformInputs prior;
    if (i == 2) prior = look_transform_inputs(config, 2);
    const auto survival = [&](double y) {
      if (i == 1) return 1.0;
      const double x1 = prior.parts[0], x2 = prior.parts[1];
      return gaussian_step_expectation(prior.maps[0], x1 / (x1 + x2) * y,
                                       sigma * std::sqrt(x1 * x2 / (x1 + x2)));
    };
    const auto weight = [&](double y) {
      const double s = stop(y);
      return s == 0.0 ? 0.0 : s * survival(y);
    };

    // Unconditioned look statistic.
    const double a_sd = sigma * std::sqrt(m);
    std::vector<double> cuts = h_cuts;
    append_affine_cuts(cuts, stop_bps, mu * m, a_sd);
    const double direct = outer.expect_composite(
        [&](double xi) {
          const double hv = h(xi);
          return hv == 0.0 ? 0.0 : hv * weight(mu * m + a_sd * xi);
        },
        cuts);

    // Look sum regressed on the final standardised sum xi.
    const double b_eta = sigma * std::sqrt(m * (M - m) / M);
    const double b_xi = sigma * m / std::sqrt(M);
    const double mixed = outer.expect_composite(
        [&](double xi) {
          const double hv = h(xi);
          if (hv == 0.0) return 0.0;
          const double centre = mu * m + b_xi * xi;
          if (i == 1) return hv * gaussian_step_expectation(stop, centre, b_eta);
          std::vector<double> eta_cuts;
          append_affine_cuts(eta_cuts, stop_bps, centre, b_eta);
          return hv * inner.expect(
                          [&](double eta) { return weight(centre + b_eta * eta); }, eta_cuts);
        },
        h_cuts);
    total += direct - mixed;
  }
  return total;
}

// Per-sample correction for looks i >= 3 with N_{n,i} replaced by the
// product over one draw of the sigma_ij coefficients. Every factor is a step
// function of an affine form in (xi, eta).
inline double correction_for_coefficient_draw(const TrialConfig& config, const TestFunctionSpec& h,
                                              const NormalIntegrator& outer, RandomStream& bridges) {
  const std::size_t L = config.interim_looks();
  const double mu = config.mu - config.null_mean, sigma = config.sigma, g = config.gamma;
  const double n = config.n;
  const double M = static_cast<double>(config.max_size());
  const std::vector<double> h_cuts = h.cuts();
  const std::vector<double> psi_bps = config.psi.breakpoints();
  double total = 0.0;
  std::vector<double> increments;
  for (std::size_t i = 1; i <= L; ++i) {
    const double ki = config.looks[i - 1];
    increments.push_back(i == 1 ? ki : ki - config.looks[i - 2]);
    if (i < 3) continue;
    const std::vector<double> rho = sample_rho(increments, sigma, bridges);
    const double m = static_cast<double>(config.look_size(i - 1));
    // Continuation factor j: (1 - psi)(lead_j * y + shift_j), y the look sum.
    std::vector<double> lead(i - 1), shift(i - 1);
    for (std::size_t j = 0; j + 1 < i; ++j) {
      const double kj = config.looks[j];
      lead[j] = std::pow(kj, 1.0 - g) / ki * std::pow(n, -g);
      shift[j] = rho[j] / std::pow(kj, g) * std::pow(n, 0.5 - g);
    }
    const double scale = std::pow(m, g);
    // Value of psi_m(y) N(y) with y = offset + slope * t.
    const auto weight_cuts = [&](double offset, double slope) {
      std::vector<double> cuts;
      append_affine_cuts(cuts, psi_bps, offset / scale, slope / scale);
      for (std::size_t j = 0; j + 1 < i; ++j) {
        append_affine_cuts(cuts, psi_bps, lead[j] * offset + shift[j], lead[j] * slope);
      }
      return cuts;
    };
    const auto weight = [&](double y) {
      double v = config.psi(y / scale);
      for (std::size_t j = 0; j + 1 < i && v != 0.0; ++j) v *= 1.0 - config.psi(lead[j] * y + shift[j]);
      return v;
    };

    const double a_sd = sigma * std::sqrt(m);
    std::vector<double> cuts = weight_cuts(mu * m, a_sd);
    cuts.insert(cuts.end(), h_cuts.begin(), h_cuts.end());
    const double direct = NormalIntegrator::step_expectation(
        [&](double xi) { return h(xi) * weight(mu * m + a_sd * xi); }, cuts);

    const double b_eta = sigma * std::sqrt(m * (M - m) / M);
    const double b_xi = sigma * m / std::sqrt(M);
    const double mixed = outer.expect_composite(
        [&](double xi) {
          const double hv = h(xi);
          if (hv == 0.0) return 0.0;
          const double centre = mu * m + b_xi * xi;
          return hv * NormalIntegrator::step_expectation(
                          [&](double eta) { return weight(centre + b_eta * eta); },
                          weight_cuts(centre, b_eta));
        },
        h_cuts);
    total += direct - mixed;
  }
  return total;
}

struct MeanAccumulator {
  double sum = 0.0, sum_sq = 0.0;
  std::size_t count = 0;
  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++count;
  }
  double mean() const { return count ? sum / count : 0.0; }
  double standard_error() const {
    if (count < 2) return 0.0;
    const double m = mean();
    return std::sqrt(std::max(0.0, (sum_sq - count * m * m) / (count - 1)) / count);
  }
};

}  // namespace detail

/*
 * The correction sum through normal transforms:
 *
 *   sum_i E[h(xi) {(psi_m N_{n,i})(A_i) - (psi_m N_{n,i})(B_i)}]
 *
 * (see detail::correction_by_quadrature for A_i, B_i). Looks 1 and 2 are
 * computed by quadrature: a 1-D integral over xi for A_i and a 2-D one over
 * (xi, eta) for B_i. Looks i >= 3 replace N_{n,i} by its coefficient
 * representation over `mc_samples` draws of sigma_ij, each draw integrated
 * exactly, which gives the standard error. quadrature_error is the change
 * against a rule with twice the points per panel.
 */
inline IdentityTerm correction_sum_by_transform(const TrialConfig& config, const TestFunctionSpec& h,
                                                const QuadratureSpec& quad, std::size_t mc_samples,
                                                std::uint64_t seed, unsigned threads = 0) {
  config.validate();
  quad.validate();
  IdentityTerm out;
  out.value = detail::correction_by_quadrature(config, h, quad);
  QuadratureSpec fine = quad;
  fine.nodes = 2 * std::max(quad.nodes, 8 * NormalIntegrator::kPanels);
  fine.inner_nodes = 2 * std::max(quad.inner_nodes, 8 * NormalIntegrator::kPanels);
  out.quadrature_error = std::abs(detail::correction_by_quadrature(config, h, fine) - out.value);

  if (config.interim_looks() >= 3) {
    if (mc_samples < 2) throw std::invalid_argument("correction_sum_by_transform: mc_samples >= 2");
    const NormalIntegrator outer(quad.nodes);
    std::vector<double> draws(mc_samples);
    parallel_for(mc_samples, threads, [&](std::size_t s) {
      RandomStream bridges = RandomStream::child(seed, {s});
      draws[s] = detail::correction_for_coefficient_draw(config, h, outer, bridges);
    });
    detail::MeanAccumulator acc;
    for (double d : draws) acc.add(d);
    out.value += acc.mean();
    out.standard_error = acc.standard_error();
  }
  return out;
}

/*
 * The correction sum through the coefficient variables, by plain Monte
 * Carlo over (xi, eta, sigma_ij):
 *
 *   R_i  = psi(k_i^(1-g) n^(1-g) mu + alpha_i n^(1/2-g))
 *          * prod_{j<i} (1 - psi)(k_j^(1-g) n^(1-g) mu + beta_ij n^(1/2-g))
 *
 * and R~_i the same with gamma_i, delta_ij. Sample s uses the streams
 * child(seed, {s, 0}) for (xi, eta) and child(seed, {s, 1}) for the rho rows.
 */
inline IdentityTerm correction_sum_by_coefficients(const TrialConfig& config,
                                                   const TestFunctionSpec& h,
                                                   std::size_t mc_samples, std::uint64_t seed,
                                                   unsigned threads = 0) {
  config.validate();
  if (mc_samples < 2) throw std::invalid_argument("correction_sum_by_coefficients: mc_samples >= 2");
  const std::size_t L = config.interim_looks();
  const double mu = config.mu - config.null_mean, g = config.gamma, n = config.n;
  const double drift_scale = std::pow(n, 1.0 - g), noise_scale = std::pow(n, 0.5 - g);
  std::vector<double> drift(L);
  for (std::size_t i = 0; i < L; ++i) drift[i] = std::pow(config.looks[i], 1.0 - g) * drift_scale * mu;

  std::vector<double> draws(mc_samples);
  parallel_for(mc_samples, threads, [&](std::size_t s) {
    RandomStream shocks = RandomStream::child(seed, {s, 0});
    RandomStream bridges = RandomStream::child(seed, {s, 1});
    const CoefficientSample c = sample_coefficients(config, shocks, bridges);
    const double hv = h(c.xi);
    if (hv == 0.0) {
      draws[s] = 0.0;
      return;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < L; ++i) {
      double r = config.psi(drift[i] + c.alpha[i] * noise_scale);
      double rt = config.psi(drift[i] + c.gamma_c[i] * noise_scale);
      for (std::size_t j = 0; j < i; ++j) {
        r *= 1.0 - config.psi(drift[j] + c.beta[i][j] * noise_scale);
        rt *= 1.0 - config.psi(drift[j] + c.delta[i][j] * noise_scale);
      }
      sum += r - rt;
    }
    draws[s] = hv * sum;
  });
  detail::MeanAccumulator acc;
  for (double d : draws) acc.add(d);
  return {acc.mean(), acc.standard_error(), 0.0};
}

/// Monte Carlo value of N_{n,i}(x) from the coefficient representation
/// E[prod_j (1 - psi)(k_j^(1-g)/k_i n^(-g) x + sigma_ij n^(1/2-g))].
inline IdentityTerm look_transform_by_coefficients(const TrialConfig& config, std::size_t i,
                                                   double x, std::size_t mc_samples,
                                                   std::uint64_t seed) {
  config.validate();
  if (i < 1 || i > config.interim_looks()) throw std::out_of_range("look index out of range");
  if (i == 1) return {1.0, 0.0, 0.0};
  const double g = config.gamma, n = config.n, ki = config.looks[i - 1];
  std::vector<double> increments;
  for (std::size_t j = 0; j < i; ++j) {
    increments.push_back(j == 0 ? config.looks[0] : config.looks[j] - config.looks[j - 1]);
  }
  detail::MeanAccumulator acc;
  for (std::size_t s = 0; s < mc_samples; ++s) {
    RandomStream rng = RandomStream::child(seed, {s});
    const std::vector<double> rho = sample_rho(increments, config.sigma, rng);
    double v = 1.0;
    for (std::size_t j = 0; j + 1 < i; ++j) {
      const double kj = config.looks[j];
      const double arg = std::pow(kj, 1.0 - g) / ki * std::pow(n, -g) * x +
                         rho[j] / std::pow(kj, g) * std::pow(n, 0.5 - g);
      v *= 1.0 - config.psi(arg);
    }
    acc.add(v);
  }
  return {acc.mean(), acc.standard_error(), 0.0};
}

/// Which correction-sum route an identity check uses.
enum class CorrectionRoute { transform, coefficients };

struct IdentityReport {
  IdentityTerm lhs;
  IdentityTerm rhs;
  double difference = 0.0;
  double combined_se = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Quadrature allowance added to the 3-sigma Monte Carlo band.
inline constexpr double kQuadratureBudget = 1e-4;

/*
 * Checks E[h(z)] - E[h(xi)] = correction sum. The left side is simulated
 * with `replications` trials from `seed`; the right side uses `mc_samples`
 * draws from derive_seed(seed, {1}) (only needed by the transform route for
 * three or more interim looks). Passes iff
 * |lhs - rhs| <= 3 * combined SE + 1e-4.
 */
inline IdentityReport verify_identity(const TrialConfig& config, const TestFunctionSpec& h,
                                      std::size_t replications, const QuadratureSpec& quad,
                                      std::size_t mc_samples, std::uint64_t seed,
                                      CorrectionRoute route,
                                      const SimulationOptions& options = {}) {
  IdentityReport rep;
  rep.lhs = stopping_discrepancy(config, h, replications, seed, options);
  const std::uint64_t rhs_seed = derive_seed(seed, {1});
  rep.rhs = route == CorrectionRoute::transform
                ? correction_sum_by_transform(config, h, quad, mc_samples, rhs_seed,
                                              options.threads)
                : correction_sum_by_coefficients(config, h, mc_samples, rhs_seed, options.threads);
  rep.difference = rep.lhs.value - rep.rhs.value;
  rep.combined_se = std::hypot(rep.lhs.standard_error, rep.rhs.standard_error);
  rep.tolerance = 3.0 * rep.combined_se + kQuadratureBudget;
  rep.pass = std::abs(rep.difference) <= rep.tolerance;
  return rep;
}

// Closed forms for two-look trials (mu = 0, sigma = 1, looks (1, 2)).

/*
 * Two-sided threshold C with gamma = 1/2: the discrepancy
 * P[z <= x] - P[xi <= x] equals
 *
 *   E[Phi((sqrt2 C - eta) ^ x) - Phi((-sqrt2 C - eta) ^ x)]
 *     - [Phi(C ^ x) - Phi(-C ^ x)]
 *
 * for every n. The eta-integral has kinks at eta = +-sqrt2 C - x, used as
 * cuts.
 */
inline double pocock_two_look_discrepancy(double C, double x, int nodes = 256) {
  if (!(C > 0.0)) throw std::invalid_argument("pocock_two_look_discrepancy: C must be > 0");
  const double r = std::numbers::sqrt2 * C;
  const NormalIntegrator integrator(nodes);
  const std::vector<double> cuts = {-r - x, r - x};
  const double mixed = integrator.expect_composite(
      [&](double eta) {
        return normal_mass(std::min(-r - eta, x), std::min(r - eta, x));
      },
      cuts);
  return mixed - normal_mass(std::min(-C, x), std::min(C, x));
}

/// [Phi(sqrt2 C) - Phi(0)] [Phi(-C) - Phi(-2C)]: a lower bound on the
/// discrepancy above at x = -C, hence on the Kolmogorov distance.
inline double pocock_two_look_lower_bound(double C) {
  return normal_mass(0.0, std::numbers::sqrt2 * C) * normal_mass(-2.0 * C, -C);
}

/// Stop at the first look iff the sum is <= 0 (any gamma):
/// P[z <= x] - P[xi <= x] = Phi(x ^ 0) - Phi(x) + Phi(x)^2 / 2.
inline double sign_stop_discrepancy(double x) {
  const double p = normal_cdf(x);
  return normal_cdf(std::min(x, 0.0)) - p + 0.5 * p * p;
}

/// Kolmogorov distance for the sign-stop trial. The discrepancy is
/// Phi(x)^2/2 (increasing) left of 0 and (1 - Phi(x))^2/2 (decreasing) right
/// of 0, so the supremum is the value at 0, which is exactly 1/8.
inline double sign_stop_kolmogorov() { return sign_stop_discrepancy(0.0); }

}  // namespace gsnorm

#endif  // GSNORM_FUNDAMENTAL_HPP_
