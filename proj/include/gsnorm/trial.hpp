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

#ifndef GSNORM_TRIAL_HPP_
#define GSNORM_TRIAL_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsnorm/parallel.hpp"
#include "gsnorm/psi.hpp"
#include "gsnorm/random.hpp"

namespace gsnorm {

/// Validation failure that names the offending configuration field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/*
 * One member of the asymptotic family of trials: N(mu, sigma^2) outcomes,
 * interim looks after looks[0]*n, ..., looks[L-1]*n observations and a final
 * analysis at looks[L]*n. At look i the trial stops with probability
 * psi((K_m - null_mean*m) / m^gamma), m = looks[i]*n.
 *
 * null_mean is the hypothesised mean the stopping statistic is centred on.
 * It is 0 for every trial in the study; a nonzero value reproduces a trial
 * run on the shifted data X - null_mean.
 */
struct TrialConfig {
  double mu = 0.0;
  double sigma = 1.0;
  double gamma = 0.5;
  std::vector<int> looks = {1, 2};
  int n = 1;
  PsiSpec psi;
  double null_mean = 0.0;

  /// Number of interim looks (L).
  std::size_t interim_looks() const { return looks.size() - 1; }
  /// Sample size at look i (0-based).
  long long look_size(std::size_t i) const {
    return static_cast<long long>(looks.at(i)) * n;
  }
  long long max_size() const { return look_size(looks.size() - 1); }

  void validate() const {
    if (!std::isfinite(mu)) throw ConfigError("mu", "must be finite");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma", "must be > 0");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma", "must be >= 0");
    if (looks.size() < 2) throw ConfigError("looks", "needs at least two entries (L >= 1)");
    for (std::size_t i = 0; i < looks.size(); ++i) {
      if (looks[i] < 1) throw ConfigError("looks", "entries must be >= 1");
      if (i > 0 && looks[i] <= looks[i - 1]) {
        throw ConfigError("looks", "must be strictly increasing");
      }
    }
    if (n < 1) throw ConfigError("n", "must be >= 1");
    if (!std::isfinite(null_mean)) throw ConfigError("null_mean", "must be finite");
  }
};

struct TrialResult {
  int stop_index = 0;         // 1-based look at which the trial ended
  long long sample_size = 0;  // N_n
  double sum = 0.0;           // K_{N_n}
  double mean = 0.0;          // K_{N_n} / N_n
  double z = 0.0;             // sqrt(N_n) (mean - mu) / sigma
};

/// How the observations of a look block are generated.
enum class SamplingMode {
  /// One N(mu*d, sigma^2*d) draw for the d observations of a block. Exact in
  /// law, since the stopping rule and the estimator only see block sums.
  block_sums,
  /// Every observation drawn individually.
  observations,
};

struct SimulationOptions {
  SamplingMode mode = SamplingMode::block_sums;
  unsigned threads = 0;
};

/*
 * Simulates one trial. Blocks are generated lazily: nothing past the stopping
 * look is drawn. At interim look i the continuation decision uses one
 * uniform u and stops iff u < psi(statistic), which realises the product
 * form of the stopping probabilities for any [0, 1]-valued psi.
 *
 * The running sum is kept as the centred part sigma * U (U a sum of standard
 * normals) so that z = U / sqrt(N) carries no cancellation against mu.
 */
inline TrialResult simulate_trial(const TrialConfig& config, RandomStream& rng,
                                  SamplingMode mode = SamplingMode::block_sums) {
  const std::size_t last = config.interim_looks();
  const double drift = config.mu - config.null_mean;
  double centred = 0.0;  // U
  long long previous = 0;
  for (std::size_t i = 0; i <= last; ++i) {
    const long long m = config.look_size(i);
    const long long block = m - previous;
    if (mode == SamplingMode::block_sums) {
      centred += std::sqrt(static_cast<double>(block)) * rng.normal();
    } else {
      for (long long k = 0; k < block; ++k) centred += rng.normal();
    }
    previous = m;
    bool stop = (i == last);
    if (!stop) {
      const double md = static_cast<double>(m);
      const double statistic =
          (drift * md + config.sigma * centred) / std::pow(md, config.gamma);
      stop = rng.uniform() < config.psi(statistic);
    }
    if (stop) {
      const double md = static_cast<double>(m);
      TrialResult r;
      r.stop_index = static_cast<int>(i) + 1;
      r.sample_size = m;
      r.sum = config.mu * md + config.sigma * centred;
      r.mean = r.sum / md;
      r.z = centred / std::sqrt(md);
      return r;
    }
  }
  return {};  // unreachable: the final look always stops
}

struct SampleSet {
  TrialConfig config;
  std::uint64_t seed = 0;
  std::size_t replications = 0;
  std::vector<TrialResult> results;

  std::vector<double> z_values() const {
    std::vector<double> z;
    z.reserve(results.size());
    for (const auto& r : results) z.push_back(r.z);
    return z;
  }
};

/// Replicate r draws from RandomStream::child(seed, {r}), so the batch does
/// not depend on the thread count or scheduling.
inline SampleSet simulate_batch(const TrialConfig& config, std::size_t replications,
                                std::uint64_t seed, const SimulationOptions& options = {}) {
  config.validate();
  if (replications == 0) throw std::invalid_argument("replications must be >= 1");
  SampleSet set{config, seed, replications, std::vector<TrialResult>(replications)};
  parallel_for(replications, options.threads, [&](std::size_t r) {
    RandomStream rng = RandomStream::child(seed, {r});
    set.results[r] = simulate_trial(config, rng, options.mode);
  });
  return set;
}

}  // namespace gsnorm

#endif  // GSNORM_TRIAL_HPP_
