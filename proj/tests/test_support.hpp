// Copyright 2026 The cpdc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Test-only helpers: an independent matrix-exponential oracle and seeded
// random generators for property tests.

#include <cmath>
#include <complex>
#include <random>

#include "cpdc/device.hpp"
#include "cpdc/numerics.hpp"

namespace cpdc::testing {

/// exp(a) by plain Taylor summation on a / 2^s (with ||a / 2^s||_1 <= 1/2),
/// followed by s squarings. Shares no code with the Padé route.
inline ComplexMatrix taylor_expm(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  int s = 0;
  double nrm = norm1(a);
  while (nrm > 0.5) {
    nrm /= 2;
    ++s;
  }
  const ComplexMatrix x = a * Complex(std::ldexp(1.0, -s));
  ComplexMatrix sum = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k < 60; ++k) {
    term = term * x * Complex(1.0 / k);
    sum += term;
    if (max_abs(term) < 1e-19 * max_abs(sum)) break;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double target_norm1) {
  std::normal_distribution<double> d(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (auto& z : m.entries()) z = {d(rng), d(rng)};
  return m * Complex(target_norm1 / norm1(m));
}

/// Uniform device with |Gamma_j|, |kappa| <= bound, L <= max_length, strictly
/// below threshold (|kappa| exceeds |Gamma1| + |Gamma2| by at least `margin`).
inline ContinuousDevice random_below_threshold(std::mt19937_64& rng, double bound = 5.0,
                                               double max_length = 10.0,
                                               double margin = 0.05) {
  std::uniform_real_distribution<double> u(-bound, bound);
  std::uniform_real_distribution<double> len(0.0, max_length);
  for (;;) {
    ContinuousDevice d{u(rng), u(rng), u(rng), len(rng)};
    if (std::abs(d.kappa) > std::abs(d.gamma1) + std::abs(d.gamma2) + margin) return d;
  }
}

inline ContinuousDevice fig2_device(double length) { return {0.1, 0.3, 3.0, length}; }

}  // namespace cpdc::testing
