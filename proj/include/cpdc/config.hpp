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

#include <cstddef>

namespace cpdc {

/// Numerical thresholds shared by the library, the tests and the CLI.
///
/// Defaults are the contract values; the CLI may override individual
/// entries, tests read them from here rather than repeating literals.
struct Tolerances {
  // numerics
  std::size_t expm_max_dim = 4096;
  double inverse_max_condition = 1e12;

  // device
  double symplectic = 1e-10;
  double threshold_equality = 1e-12;

  // moments
  double occupation_floor = 1e-14;     // below: coherence undefined
  double occupation_fragile = 1e-8;    // below: defined but flagged
  double imag_coherence = 1e-9;        // |Im gamma~| allowed for real couplings

  // decompose
  double imag_correlation = 1e-9;      // purity of the A11 / A6 right-hand sides
  double tanh_overshoot = 1e-9;        // |t| - 1 tolerated before clamping
  double tanh_clamp = 1e-15;           // clamp margin below 1
  double degenerate_denominator = 1e-12;
  double branch_tie = 1e-12;           // both roots this good: keep the "+" root
  double closed_form_accept = 1e-10;   // above: also run the fallback search
  double fallback_residual = 1e-10;    // fallback search stopping residual
  double residual_max = 1e-6;          // ResidualTooLarge above this
  double g_bound_slack = 1e-9;
  double max_abs_g = 10.0;

  // fock oracle
  double leakage_max = 1e-4;
  double fock_norm = 1e-9;

  // oracle check
  double oracle_agreement = 1e-3;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace cpdc
