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

// First-order (single pair) analysis of the four-downconverter scheme: the
// pair state, the u/v vector geometry controlling the signal coherence, and
// the ideal two-outcome which-way measurement on the idler pair. Also the
// coherence formula of the two-downconverter interferometer.
//
// Kets are written |n_s1 n_i1 n_s2 n_i2>. Two-mode signal and idler states
// use |10> for a photon in mode 1 and |01> for a photon in mode 2.

#include <array>
#include <cmath>
#include <optional>

#include "cpdc/config.hpp"
#include "cpdc/decompose.hpp"
#include "cpdc/error.hpp"
#include "cpdc/numerics.hpp"

namespace cpdc {

/// Unnormalized single-pair state produced from vacuum.
struct PairState {
  Complex c_1001;  // s1 + i2
  Complex c_0110;  // i1 + s2
  Complex c_1100;  // s1 + i1
  Complex c_0011;  // s2 + i2

  std::array<Complex, 4> amplitudes() const { return {c_1001, c_0110, c_1100, c_0011}; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& z : amplitudes()) s += std::norm(z);
    return s;
  }
};

/// |<a|b>| / (|a| |b|); one exactly when the states agree up to a global phase.
inline double overlap(const PairState& a, const PairState& b) {
  Complex dot{};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t k = 0; k < 4; ++k) dot += std::conj(x[k]) * y[k];
  return std::abs(dot) / std::sqrt(a.norm_squared() * b.norm_squared());
}

inline PairState pair_state(const ZouScheme& s) {
  if (s.g1 == 0.0 && s.g2 == 0.0 && s.g4 == 0.0 && s.g5 == 0.0) {
    throw Error(ErrorKind::AllZero, "no downconverter active, no pair produced");
  }
  return {s.g4, s.g5, kI * s.g1, kI * s.g2};
}

/// u = (g1, g4) and v = (g5, -g2).
struct WhichWayGeometry {
  std::array<double, 2> u{};
  std::array<double, 2> v{};
  double dot = 0.0;
  double cross = 0.0;        // u_x v_y - u_y v_x
  double angle = 0.0;        // oriented angle from u to v, in (-pi, pi]
  double gamma_squared = 0;  // (u.v)^2 / (u^2 v^2)
  bool degenerate = false;   // u or v vanishes; gamma_squared is then 1

  double u_norm() const { return std::hypot(u[0], u[1]); }
  double v_norm() const { return std::hypot(v[0], v[1]); }
  double normalized_dot() const { return degenerate ? 0.0 : dot / (u_norm() * v_norm()); }
  double normalized_cross() const { return degenerate ? 0.0 : cross / (u_norm() * v_norm()); }
};

inline WhichWayGeometry geometry(const ZouScheme& s) {
  WhichWayGeometry g;
  g.u = {s.g1, s.g4};
  g.v = {s.g5, -s.g2};
  g.dot = g.u[0] * g.v[0] + g.u[1] * g.v[1];
  g.cross = g.u[0] * g.v[1] - g.u[1] * g.v[0];
  const double uu = g.u[0] * g.u[0] + g.u[1] * g.u[1];
  const double vv = g.v[0] * g.v[0] + g.v[1] * g.v[1];
  if (uu == 0.0 || vv == 0.0) {
    // One source only: the signal photon path is never ambiguous, yet every
    // detected photon comes from one crystal, so |gamma| is taken as 1.
    g.degenerate = true;
    g.gamma_squared = 1.0;
    return g;
  }
  g.angle = std::atan2(g.cross, g.dot);
  g.gamma_squared = g.dot * g.dot / (uu * vv);
  return g;
}

/// Normalized signal state (amplitude on |10>_s, amplitude on |01>_s).
using SignalState = std::array<Complex, 2>;

/// Ideal which-way measurement on the idler modes, eigenbasis
///   |phi1> = sin(phi)|10>_i + i cos(phi)|01>_i
///   |phi2> = i cos(phi)|10>_i + sin(phi)|01>_i
/// with sin(phi) = g4 / |u|.
struct WhichWayMeasurement {
  double phi = 0.0;
  std::array<Complex, 2> idler1{};  // |phi1> in (|10>_i, |01>_i)
  std::array<Complex, 2> idler2{};  // |phi2>
  double p1 = 0.0;
  double p2 = 0.0;
  std::optional<SignalState> signal1;  // empty when p1 == 0
  std::optional<SignalState> signal2;  // empty when p2 == 0
};

inline WhichWayMeasurement ideal_measurement(const ZouScheme& s, const PairState& ps) {
  const double u_norm = std::hypot(s.g1, s.g4);
  if (u_norm == 0.0) {
    throw Error(ErrorKind::DegenerateGeometry, "g1 = g4 = 0, measurement angle undefined");
  }
  WhichWayMeasurement w;
  w.phi = std::atan2(s.g4, s.g1);
  const double sp = s.g4 / u_norm;
  const double cp = s.g1 / u_norm;
  w.idler1 = {sp, kI * cp};
  w.idler2 = {kI * cp, sp};

  // Psi = |10>_s (c_1100 |10>_i + c_1001 |01>_i) + |01>_s (c_0110 |10>_i + c_0011 |01>_i)
  const std::array<Complex, 2> with_s1{ps.c_1100, ps.c_1001};
  const std::array<Complex, 2> with_s2{ps.c_0110, ps.c_0011};
  auto project = [](const std::array<Complex, 2>& idler, const std::array<Complex, 2>& x) {
    return std::conj(idler[0]) * x[0] + std::conj(idler[1]) * x[1];
  };
  const double total = ps.norm_squared();
  auto outcome = [&](const std::array<Complex, 2>& idler, double& p,
                     std::optional<SignalState>& cond) {
    const SignalState amp{project(idler, with_s1), project(idler, with_s2)};
    const double weight = std::norm(amp[0]) + std::norm(amp[1]);
    p = weight / total;
    if (weight > 0.0) {
      const double n = std::sqrt(weight);
      cond = SignalState{amp[0] / n, amp[1] / n};
    }
  };
  outcome(w.idler1, w.p1, w.signal1);
  outcome(w.idler2, w.p2, w.signal2);
  return w;
}

/// Signal coherence of the two-downconverter interferometer from its
/// squeezings and signal mixing angle.
inline double ou_gamma(const OuScheme& s, const Tolerances& tol = default_tolerances()) {
  const double n1 = std::sinh(s.g1) * std::sinh(s.g1);
  const double n2 = std::sinh(s.g2) * std::sinh(s.g2);
  const double c2 = std::cos(s.phi_s) * std::cos(s.phi_s);
  const double s2 = std::sin(s.phi_s) * std::sin(s.phi_s);
  const double big_n1 = n1 * c2 + n2 * s2;
  const double big_n2 = n1 * s2 + n2 * c2;
  if (!(big_n1 > tol.occupation_floor) || !(big_n2 > tol.occupation_floor)) {
    throw Error(ErrorKind::UndefinedCoherence, "mixed signal occupation vanishes");
  }
  return (n1 - n2) * std::sin(2 * s.phi_s) / std::sqrt(4 * big_n1 * big_n2);
}

}  // namespace cpdc
