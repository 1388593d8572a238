// Copyright 2026 The qrd Authors
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
// Smooth entropies of a noisy Bell pair as the smoothing radius grows.

#include <cstdio>

#include "qrd/entropies.hpp"

int main() {
  using namespace qrd;
  PureState bell = PureState::maximally_entangled(2, "R", "B");
  QuantumChannel noise = QuantumChannel::depolarizing(2, 0.1, "B", "B");
  DensityOperator omega = extend_to_reference(noise, bell);
  std::printf("I(R;B) = %.6f bits\n", mutual_information(omega));
  std::printf("%6s %12s %12s %12s\n", "eps", "Hmin(R|B)", "H0(R)", "Imax(R;B)");
  DensityOperator rho_r = partial_trace(omega, {"R"});
  for (double eps : {0.0, 0.01, 0.05, 0.1}) {
    EntropyResult hmin = eps > 0 ? h_min_smooth(omega, {"B"}, eps) : h_min(omega, {"B"});
    EntropyResult h = h0_smooth(rho_r, eps);
    EntropyResult imax = eps > 0 ? i_max_smooth(omega, {"R"}, eps) : i_max(omega, {"R"});
    std::printf("%6.2f %12.6f %12.6f %12.6f\n", eps, hmin.value, h.value, imax.value);
  }
}
