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
// Prints converse and achievability rates of the isotropic qubit source
// against blocklength at D = 0.25, eps = 0.01.

#include <cstdio>

#include "qrd/isotropic.hpp"

int main() {
  const double d = 0.25, eps = 0.01;
  std::printf("asymptotic rate %.6f qubits/symbol\n", qrd::isotropic::rate_distortion_closed_form(d));
  std::printf("%6s %12s %12s %12s\n", "n", "converse", "achievable", "approx");
  for (std::size_t n = 4; n <= 512; n *= 2) {
    qrd::isotropic::CurvePoint p = qrd::isotropic::curve_point(n, d, eps);
    std::printf("%6zu %12.6f %12.6f %12.6f\n", n, p.converse, p.achievability_quantum, p.approx);
  }
}
