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

#ifndef GSNORM_PSI_HPP_
#define GSNORM_PSI_HPP_

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace gsnorm {

/// Stop iff x >= C.
struct OneSidedThreshold {
  double C = 0.0;
};
/// Stop iff |x| >= C.
struct TwoSidedThreshold {
  double C = 0.0;
};
/// Stop iff x <= 0.
struct LeftIndicator {};
/// Stop with probability p regardless of x.
struct Constant {
  double p = 0.0;
};

/*
 * The stopping map psi : R -> [0, 1] applied at each interim look to the
 * scaled running sum K / m^gamma. The family is closed: two threshold
 * rules, the left half-line indicator and constants. Every member is
 * piecewise constant with at most two jump points, which the quadrature
 * code relies on.
 */
class PsiSpec {
 public:
  using Variant = std::variant<OneSidedThreshold, TwoSidedThreshold, LeftIndicator, Constant>;

  PsiSpec() : v_(Constant{0.0}) {}
  PsiSpec(Variant v) : v_(v) { validate(); }  // NOLINT: implicit by design of the variant

  static PsiSpec one_sided(double C) { return PsiSpec(OneSidedThreshold{C}); }
  static PsiSpec two_sided(double C) { return PsiSpec(TwoSidedThreshold{C}); }
  static PsiSpec left_indicator() { return PsiSpec(LeftIndicator{}); }
  static PsiSpec constant(double p) { return PsiSpec(Constant{p}); }

  const Variant& variant() const { return v_; }

  double operator()(double x) const {
    return std::visit(
        [x](const auto& s) -> double {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, OneSidedThreshold>) {
            return x >= s.C ? 1.0 : 0.0;
          } else if constexpr (std::is_same_v<T, TwoSidedThreshold>) {
            return std::abs(x) >= s.C ? 1.0 : 0.0;
          } else if constexpr (std::is_same_v<T, LeftIndicator>) {
            return x <= 0.0 ? 1.0 : 0.0;
          } else {
            return s.p;
          }
        },
        v_);
  }

  /// Points where the map may jump, ascending.
  std::vector<double> breakpoints() const {
    return std::visit(
        [](const auto& s) -> std::vector<double> {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, OneSidedThreshold>) {
            return {s.C};
          } else if constexpr (std::is_same_v<T, TwoSidedThreshold>) {
            if (s.C == 0.0) return {};  // |x| >= 0 everywhere
            return {-s.C, s.C};
          } else if constexpr (std::is_same_v<T, LeftIndicator>) {
            return {0.0};
          } else {
            return {};
          }
        },
        v_);
  }

  /// Limit of psi at a finite point, if it exists.
  std::optional<double> limit_at(double a) const {
    for (double b : breakpoints()) {
      if (a == b) return std::nullopt;
    }
    return (*this)(a);
  }
  double limit_at_minus_infinity() const { return (*this)(-1e300); }
  double limit_at_plus_infinity() const { return (*this)(1e300); }

  bool is_constant() const { return std::holds_alternative<Constant>(v_); }

  std::string kind() const {
    return std::visit(
        [](const auto& s) -> std::string {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, OneSidedThreshold>) return "one_sided";
          else if constexpr (std::is_same_v<T, TwoSidedThreshold>) return "two_sided";
          else if constexpr (std::is_same_v<T, LeftIndicator>) return "left_indicator";
          else return "constant";
        },
        v_);
  }

  /// Threshold C for the threshold rules, nullopt otherwise.
  std::optional<double> threshold() const {
    if (auto* o = std::get_if<OneSidedThreshold>(&v_)) return o->C;
    if (auto* t = std::get_if<TwoSidedThreshold>(&v_)) return t->C;
    return std::nullopt;
  }
  std::optional<double> probability() const {
    if (auto* c = std::get_if<Constant>(&v_)) return c->p;
    return std::nullopt;
  }

  friend bool operator==(const PsiSpec& a, const PsiSpec& b) {
    if (a.v_.index() != b.v_.index()) return false;
    return a.threshold() == b.threshold() && a.probability() == b.probability();
  }

 private:
  void validate() const {
    if (auto c = threshold(); c && !(*c >= 0.0 && std::isfinite(*c))) {
      throw std::invalid_argument("psi.C must be finite and >= 0");
    }
    if (auto p = probability(); p && !(*p >= 0.0 && *p <= 1.0)) {
      throw std::invalid_argument("psi.p must lie in [0, 1]");
    }
  }

  Variant v_;
};

inline double psi_eval(const PsiSpec& psi, double x) { return psi(x); }

}  // namespace gsnorm

#endif  // GSNORM_PSI_HPP_
