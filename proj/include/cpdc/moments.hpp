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

// Second moments of the output field for vacuum input, photon numbers and the
// normalized mutual coherence of the two signal beams.

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>
#include <utility>

#include "cpdc/config.hpp"
#include "cpdc/device.hpp"
#include "cpdc/error.hpp"
#include "cpdc/numerics.hpp"

namespace cpdc {

/// Vacuum-input output correlations.
///
/// d_jk  = <dA_j dA_k>        (signal-idler pair correlations)
/// n_jk  = <dA_j^dagger dA_k> (normal-ordered cross correlations)
/// b_j   = <dA_j^dagger dA_j> (mean photon numbers)
/// The anomalous signal-signal and idler-idler terms vanish identically for
/// this device class and are not stored.
struct MomentSet {
  Complex d_s1i1;
  Complex d_s1i2;
  Complex d_s2i1;
  Complex d_s2i2;
  Complex n_s1s2;
  Complex n_i1i2;
  double b_s1 = 0.0;
  double b_s2 = 0.0;
  double b_i1 = 0.0;
  double b_i2 = 0.0;

  /// Labeled view of every entry, for residuals and comparisons.
  std::array<std::pair<std::string_view, Complex>, 10> labeled() const {
    return {{{"s1i1", d_s1i1},
             {"s1i2", d_s1i2},
             {"s2i1", d_s2i1},
             {"s2i2", d_s2i2},
             {"s1s2", n_s1s2},
             {"i1i2", n_i1i2},
             {"s1", b_s1},
             {"s2", b_s2},
             {"i1", b_i1},
             {"i2", b_i2}}};
  }

  /// Largest magnitude over all entries; zero exactly for the vacuum.
  double max_abs() const {
    double best = 0.0;
    for (const auto& [label, value] : labeled()) best = std::max(best, std::abs(value));
    return best;
  }
};

inline double max_abs_diff(const MomentSet& a, const MomentSet& b) {
  const auto la = a.labeled();
  const auto lb = b.labeled();
  double best = 0.0;
  for (std::size_t k = 0; k < la.size(); ++k)
    best = std::max(best, std::abs(la[k].second - lb[k].second));
  return best;
}

inline MomentSet vacuum_moments(const TransferMatrix& t) {
  const auto& m = t.matrix();
  auto pair = [&](std::size_t j, std::size_t k) {
    return m(j, kS1) * std::conj(m(k, kS1)) + m(j, kS2) * std::conj(m(k, kS2));
  };
  auto clamp = [](double b) { return b < 0.0 ? 0.0 : b; };
  MomentSet s;
  s.d_s1i1 = pair(kS1, kI1);
  s.d_s1i2 = pair(kS1, kI2);
  s.d_s2i1 = pair(kS2, kI1);
  s.d_s2i2 = pair(kS2, kI2);
  s.n_s1s2 = std::conj(m(kS1, kI1)) * m(kS2, kI1) + std::conj(m(kS1, kI2)) * m(kS2, kI2);
  s.n_i1i2 = m(kI1, kS1) * std::conj(m(kI2, kS1)) + m(kI1, kS2) * std::conj(m(kI2, kS2));
  s.b_s1 = clamp(std::norm(m(kS1, kI1)) + std::norm(m(kS1, kI2)));
  s.b_s2 = clamp(std::norm(m(kS2, kI1)) + std::norm(m(kS2, kI2)));
  s.b_i1 = clamp(std::norm(m(kI1, kS1)) + std::norm(m(kI1, kS2)));
  s.b_i2 = clamp(std::norm(m(kI2, kS1)) + std::norm(m(kI2, kS2)));
  return s;
}

struct Intensities {
  double s1 = 0.0;
  double s2 = 0.0;
  double i1 = 0.0;
  double i2 = 0.0;
  double total_signal() const { return s1 + s2; }
};

inline Intensities intensities(const TransferMatrix& t) {
  const MomentSet s = vacuum_moments(t);
  return {s.b_s1, s.b_s2, s.b_i1, s.b_i2};
}

/// Signed mutual coherence with its diagnostics.
struct Coherence {
  double gamma = 0.0;       // Re(-i <A_s1^dagger A_s2> / sqrt(n_s1 n_s2))
  double imag_residue = 0.0;  // |Im| of the same quantity
  bool fragile = false;     // an occupation lies between the floor and 1e-8
};

/// Normalizes a cross correlation into a coherence; shared with the Fock
/// oracle so both routes use the same convention.
inline Coherence coherence_from(Complex cross, double n1, double n2,
                                const Tolerances& tol = default_tolerances()) {
  if (!(n1 > tol.occupation_floor) || !(n2 > tol.occupation_floor)) {
    throw Error(ErrorKind::UndefinedCoherence,
                "signal occupations " + std::to_string(n1) + ", " + std::to_string(n2));
  }
  const Complex g = -kI * cross / std::sqrt(n1 * n2);
  return {g.real(), std::abs(g.imag()),
          n1 < tol.occupation_fragile || n2 < tol.occupation_fragile};
}

inline Coherence signal_coherence(const TransferMatrix& t,
                                  const Tolerances& tol = default_tolerances()) {
  const MomentSet s = vacuum_moments(t);
  return coherence_from(s.n_s1s2, s.b_s1, s.b_s2, tol);
}

}  // namespace cpdc
