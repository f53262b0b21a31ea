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

// Simulates two small two-look trials and compares the simulated
// distribution of the standardised mean with its closed form.

#include <cstdio>

#include "gsnorm.hpp"

int main() {
  using namespace gsnorm;

  // Stop after the first block iff its sum is <= 0.
  const SampleSet sign = simulate_batch(sign_stop_config(50), 100'000, 2026);
  std::printf("sign-stop trial, n = 50\n");
  std::printf("  simulated Kolmogorov distance  %.4f\n", empirical_ks(sign.z_values()));
  std::printf("  exact value                    %.4f\n", sign_stop_kolmogorov());
  const StudyRow row = summarize(sign);
  std::printf("  coverage of mean +- 1.96/sqrt(N) %.4f, average length %.1f\n\n", row.coverage,
              row.avg_length);

  // Two-sided threshold with gamma = 1/2: the distance does not shrink with n.
  for (double C : {1.0, 2.0}) {
    std::printf("two-sided threshold C = %g, gamma = 1/2\n", C);
    std::printf("  exact discrepancy at x = -C      %.5f (lower bound %.5f)\n",
                pocock_two_look_discrepancy(C, -C), pocock_two_look_lower_bound(C));
    for (int n : {10, 100, 1000}) {
      const SampleSet s = simulate_batch(pocock_config(C, n), 100'000, 7 + n);
      std::printf("  n = %-5d simulated distance   %.4f\n", n, empirical_ks(s.z_values()));
    }
  }
  return 0;
}
