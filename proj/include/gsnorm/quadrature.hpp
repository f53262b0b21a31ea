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

#ifndef GSNORM_QUADRATURE_HPP_
#define GSNORM_QUADRATURE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "gsnorm/normal.hpp"

namespace gsnorm {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule on [-1, 1] (Newton iteration on the three-term
/// recurrence).
inline QuadratureRule gauss_legendre_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_rule: n must be >= 1");
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return rule;
}

/// Gauss-Hermite rule for the weight exp(-t^2) on the real line. Nodes
/// start from the eigenvalues of the Jacobi matrix (Golub-Welsch) and are
/// polished by Newton steps on the orthonormal recurrence, which also gives
/// weights with full relative accuracy in the tails.
inline QuadratureRule gauss_hermite_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite_rule: n must be >= 1");
  constexpr double kPiToMinusQuarter = 0.7511255444649425;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  for (int j = 1; j < n; ++j) off[j - 1] = std::sqrt(0.5 * j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_hermite_rule: eigenvalue iteration failed");
  }
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < n; ++i) {
    double z = solver.eigenvalues()[i];
    double pp = 0.0;
    for (int it = 0; it < 8; ++it) {
      double p1 = kPiToMinusQuarter, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double step = p1 / pp;
      z -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    rule.nodes[i] = z;
    rule.weights[i] = 2.0 / (pp * pp);
  }
  // Exact symmetry.
  for (int i = 0; i < n / 2; ++i) {
    const double z = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

/// Node budgets for the deterministic integrals plus the sample size used by
/// Monte Carlo cross-checks.
struct QuadratureSpec {
  int nodes = 64;         // per integration dimension
  int inner_nodes = 256;  // innermost dimension
  std::size_t mc_samples = 1'000'000;

  void validate() const {
    if (nodes < 8 || inner_nodes < 8) {
      throw std::invalid_argument("quadrature nodes must be >= 8");
    }
    if (mc_samples == 0) throw std::invalid_argument("mc_samples must be >= 1");
  }
};

/*
 * Expectations E[f(xi)] for xi ~ N(0, 1).
 *
 * Every integrand in this library is a product of step functions and
 * smooth Gaussian factors, and the jump locations are known. Plain
 * Gauss-Hermite only converges like 1/nodes across a jump, so the default
 * path is composite Gauss-Legendre on [-T, T] (T = 9, outside mass 2e-19):
 * fixed panels, further split at every supplied cut, with the normal
 * density folded into the integrand. On each piece the integrand is
 * analytic and the rule converges geometrically. Gauss-Hermite is used when
 * the caller supplies no cuts.
 *
 * Rules are built once in the constructor; the object is immutable after
 * that and safe to share between threads.
 */
class NormalIntegrator {
 public:
  static constexpr double kTruncation = 9.0;
  static constexpr int kPanels = 16;

  explicit NormalIntegrator(int nodes = 64)
      : nodes_(nodes),
        legendre_(gauss_legendre_rule(std::max(8, (nodes + kPanels - 1) / kPanels))),
        hermite_(gauss_hermite_rule(nodes)) {
    if (nodes < 8) throw std::invalid_argument("NormalIntegrator: nodes must be >= 8");
  }

  int nodes() const { return nodes_; }

  /// Composite rule when cuts are given, Gauss-Hermite otherwise.
  template <class F>
  double expect(F&& f, std::span<const double> cuts = {}) const {
    if (cuts.empty()) return expect_hermite(f);
    return expect_composite(f, cuts);
  }

  template <class F>
  double expect_hermite(F&& f) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < hermite_.size(); ++k) {
      sum += hermite_.weights[k] * f(std::numbers::sqrt2 * hermite_.nodes[k]);
    }
    return sum / std::sqrt(std::numbers::pi);
  }

  template <class F>
  double expect_composite(F&& f, std::span<const double> cuts = {}) const {
    const std::vector<double> edges = segment_edges(cuts);
    double sum = 0.0;
    for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
      const double a = edges[s], b = edges[s + 1];
      const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
      double part = 0.0;
      for (std::size_t k = 0; k < legendre_.size(); ++k) {
        const double t = mid + half * legendre_.nodes[k];
        part += legendre_.weights[k] * normal_pdf(t) * f(t);
      }
      sum += half * part;
    }
    return sum;
  }

  /// Exact E[f(xi)] for f constant between consecutive cuts: the value on
  /// each interval (read at an interior point) times its normal mass.
  template <class F>
  static double step_expectation(F&& f, std::vector<double> cuts) {
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (cuts.empty()) return f(0.0);
    double sum = 0.0;
    const auto add = [&](double lo, double hi, double probe) {
      const double v = f(probe);
      if (v != 0.0) sum += v * normal_mass(lo, hi);
    };
    add(-INFINITY, cuts.front(), cuts.front() - 1.0);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      add(cuts[i], cuts[i + 1], 0.5 * (cuts[i] + cuts[i + 1]));
    }
    add(cuts.back(), INFINITY, cuts.back() + 1.0);
    return sum;
  }

 private:
  std::vector<double> segment_edges(std::span<const double> cuts) const {
    std::vector<double> edges;
    edges.reserve(kPanels + 1 + cuts.size());
    for (int p = 0; p <= kPanels; ++p) {
      edges.push_back(-kTruncation + 2.0 * kTruncation * p / kPanels);
    }
    for (double c : cuts) {
      if (c > -kTruncation && c < kTruncation) edges.push_back(c);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
  }

  int nodes_;
  QuadratureRule legendre_;
  QuadratureRule hermite_;
};

}  // namespace gsnorm

#endif  // GSNORM_QUADRATURE_HPP_
