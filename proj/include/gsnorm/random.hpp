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

#ifndef GSNORM_RANDOM_HPP_
#define GSNORM_RANDOM_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace gsnorm {

/// SplitMix64 finalizer. Used to turn (seed, index, ...) tuples into
/// well-separated engine seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(seed);
  for (std::uint64_t p : path) h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

/// xoshiro256** (Blackman and Vigna). Cheap to seed, which matters because
/// every replicate gets its own stream. Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) {
    for (auto& w : s_) {
      seed += 0x9e3779b97f4a7c15ULL;
      w = mix64(seed);
    }
  }

  /// Engine with the given raw state (not all zero).
  static Xoshiro256 from_state(const std::array<std::uint64_t, 4>& state) {
    Xoshiro256 e(0);
    for (int i = 0; i < 4; ++i) e.s_[i] = state[i];
    return e;
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

/*
 * A reproducible random stream.
 *
 * The engine is Xoshiro256 above, so the bit sequence is fixed by this file
 * and not by the standard library. Uniforms take the top 53 bits of one
 * engine draw, so they lie in [0, 1). Normal variates use the Marsaglia
 * polar method written out here (std::normal_distribution is implementation
 * defined), caching the second variate of each accepted pair. Together this makes every stream
 * bit-identical across compilers and standard libraries, up to the
 * platform's std::log.
 */
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(mix64(seed)) {}

  /// Child stream for a position in a deterministic tree of streams.
  static RandomStream child(std::uint64_t seed,
                            std::initializer_list<std::uint64_t> path) {
    return RandomStream(derive_seed(seed, path));
  }

  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0, v = 0.0, s = 0.0;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  Xoshiro256& engine() { return engine_; }

 private:
  Xoshiro256 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gsnorm

#endif  // GSNORM_RANDOM_HPP_
