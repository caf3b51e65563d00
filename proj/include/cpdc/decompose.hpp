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

// Parameters of the two substituting schemes, obtained by propagating the
// vacuum output state backwards through each scheme and demanding that the
// correlations removed by every stage vanish.
//
// Zou-type scheme (four downconverters):
//   forward  M = F45 * F12,   back-propagation  M12 * M45 * M = passive
// Ou-type scheme (two downconverters, then two beamsplitters):
//   forward  M = Fphi * F12,  back-propagation  M12 * Mphi * M = passive
// where Fx = Mx^{-1}. A passive remainder maps vacuum to vacuum, so the
// schemes are equivalent at the level of vacuum moments only.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cpdc/config.hpp"
#include "cpdc/device.hpp"
#include "cpdc/error.hpp"
#include "cpdc/moments.hpp"
#include "cpdc/numerics.hpp"

namespace cpdc {

struct ZouScheme {
  double g1 = 0.0;
  double g2 = 0.0;
  double g4 = 0.0;
  double g5 = 0.0;

  std::array<double, 4> params() const { return {g1, g2, g4, g5}; }
};

struct OuScheme {
  double g1 = 0.0;
  double g2 = 0.0;
  double phi_s = 0.0;  // signal beamsplitter, in (-pi/2, pi/2]
  double phi_i = 0.0;  // idler beamsplitter, in (-pi/2, pi/2]
};

/// How the scheme parameters were obtained.
enum class Branch { ClosedForm, PlusRoot, MinusRoot, Fallback };

constexpr std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::ClosedForm: return "closed_form";
    case Branch::PlusRoot: return "plus_root";
    case Branch::MinusRoot: return "minus_root";
    case Branch::Fallback: return "fallback";
  }
  return "unknown";
}

template <class Scheme>
struct ExtractionReport {
  Scheme scheme;
  double residual = 0.0;  // largest back-propagated moment that should vanish
  Branch branch = Branch::ClosedForm;
  bool fallback_used = false;
};

// ---------------------------------------------------------------------------
// Stage matrices (back-propagation direction).

/// Undoes the first downconverter pair (s1-i1 with g1, s2-i2 with g2).
inline TransferMatrix squeezer_pair_backward(double g1, double g2) {
  const double c1 = std::cosh(g1), s1 = std::sinh(g1);
  const double c2 = std::cosh(g2), s2 = std::sinh(g2);
  return TransferMatrix(ComplexMatrix(4, 4,
                                      {
                                          c1, 0.0, -kI * s1, 0.0,  //
                                          0.0, c2, 0.0, -kI * s2,  //
                                          kI * s1, 0.0, c1, 0.0,   //
                                          0.0, kI * s2, 0.0, c2,   //
                                      }));
}

/// Undoes the crossed downconverter pair (s1-i2 with g4, s2-i1 with g5).
inline TransferMatrix cross_squeezer_backward(double g4, double g5) {
  const double c4 = std::cosh(g4), s4 = std::sinh(g4);
  const double c5 = std::cosh(g5), s5 = std::sinh(g5);
  return TransferMatrix(ComplexMatrix(4, 4,
                                      {
                                          c4, 0.0, 0.0, -s4,  //
                                          0.0, c5, -s5, 0.0,  //
                                          0.0, -s5, c5, 0.0,  //
                                          -s4, 0.0, 0.0, c4,  //
                                      }));
}

/// Undoes the signal (phi_s) and idler (phi_i) beamsplitters.
inline TransferMatrix beamsplitters_backward(double phi_s, double phi_i) {
  const double cs = std::cos(phi_s), ss = std::sin(phi_s);
  const double ci = std::cos(phi_i), si = std::sin(phi_i);
  return TransferMatrix(ComplexMatrix(4, 4,
                                      {
                                          cs, -kI * ss, 0.0, 0.0,  //
                                          -kI * ss, cs, 0.0, 0.0,  //
                                          0.0, 0.0, ci, kI * si,   //
                                          0.0, 0.0, kI * si, ci,   //
                                      }));
}

// ---------------------------------------------------------------------------
// Forward synthesis.

inline TransferMatrix zou_forward_matrix(const ZouScheme& s) {
  return cross_squeezer_backward(-s.g4, -s.g5) * squeezer_pair_backward(-s.g1, -s.g2);
}

inline TransferMatrix ou_forward_matrix(const OuScheme& s) {
  return beamsplitters_backward(-s.phi_s, -s.phi_i) * squeezer_pair_backward(-s.g1, -s.g2);
}

// ---------------------------------------------------------------------------
// Residuals.

inline double equivalence_residual(const TransferMatrix& m, const ZouScheme& s) {
  return vacuum_moments(squeezer_pair_backward(s.g1, s.g2) *
                        cross_squeezer_backward(s.g4, s.g5) * m)
      .max_abs();
}

inline double equivalence_residual(const TransferMatrix& m, const OuScheme& s) {
  return vacuum_moments(squeezer_pair_backward(s.g1, s.g2) *
                        beamsplitters_backward(s.phi_s, s.phi_i) * m)
      .max_abs();
}

namespace detail {

/// Maps an angle into (-pi/2, pi/2].
inline double normalize_half_turn(double phi) {
  constexpr double pi = std::numbers::pi;
  double r = std::remainder(phi, pi);  // [-pi/2, pi/2]
  if (r <= -pi / 2) r += pi;
  return r;
}

/// g with tanh(2g) = t, for t that must be real up to tol.imag_correlation.
inline double half_atanh(Complex t, const Tolerances& tol, std::string_view what) {
  if (std::abs(t.imag()) > tol.imag_correlation) {
    throw Error(ErrorKind::NonRealCorrelation,
                std::string(what) + " has imaginary part " + std::to_string(t.imag()));
  }
  double x = t.real();
  if (!std::isfinite(x)) throw Error(ErrorKind::TanhDomain, std::string(what) + " not finite");
  if (std::abs(x) >= 1.0) {
    if (std::abs(x) - 1.0 > tol.tanh_overshoot) {
      throw Error(ErrorKind::TanhDomain,
                  std::string(what) + " = " + std::to_string(x) + " outside (-1, 1)");
    }
    x = std::copysign(1.0 - tol.tanh_clamp, x);
  }
  return 0.5 * std::atanh(x);
}

/// Squeezings of the (s1,i1) and (s2,i2) downconverters from the moments of
/// the state in front of the last stage.
inline std::pair<double, double> squeezer_pair_parameters(const MomentSet& c,
                                                          const Tolerances& tol) {
  const Complex t1 = -2.0 * kI * c.d_s1i1 / (c.b_s1 + c.b_i1 + 1.0);
  const Complex t2 = -2.0 * kI * c.d_s2i2 / (c.b_s2 + c.b_i2 + 1.0);
  return {half_atanh(t1, tol, "tanh(2 g1)"), half_atanh(t2, tol, "tanh(2 g2)")};
}

struct OuCandidate {
  OuScheme scheme;
  double residual = std::numeric_limits<double>::infinity();
  Branch branch = Branch::Fallback;
};

inline OuCandidate ou_from_angles(const TransferMatrix& m, double phi_s, double phi_i,
                                  Branch branch, const Tolerances& tol) {
  OuCandidate c;
  c.branch = branch;
  c.scheme.phi_s = normalize_half_turn(phi_s);
  c.scheme.phi_i = normalize_half_turn(phi_i);
  const TransferMatrix mc = beamsplitters_backward(c.scheme.phi_s, c.scheme.phi_i) * m;
  std::tie(c.scheme.g1, c.scheme.g2) = squeezer_pair_parameters(vacuum_moments(mc), tol);
  c.residual = equivalence_residual(m, c.scheme);
  return c;
}

// Conditions that vanish once the beamsplitters are undone: the two crossed
// pair correlations and the two normal-ordered cross correlations.
inline std::array<double, 8> beamsplitter_conditions(const TransferMatrix& m, double phi_s,
                                                     double phi_i) {
  const MomentSet c = vacuum_moments(beamsplitters_backward(phi_s, phi_i) * m);
  return {c.d_s1i2.real(), c.d_s1i2.imag(), c.d_s2i1.real(), c.d_s2i1.imag(),
          c.n_s1s2.real(), c.n_s1s2.imag(), c.n_i1i2.real(), c.n_i1i2.imag()};
}

inline double squared_norm(const std::array<double, 8>& r) {
  double s = 0.0;
  for (double x : r) s += x * x;
  return s;
}

/// Bounded 2-D search over the beamsplitter angles: grid seed, then
/// Levenberg-Marquardt with a central-difference Jacobian.
inline std::pair<double, double> search_beamsplitter_angles(const TransferMatrix& m,
                                                            const Tolerances& tol) {
  constexpr double pi = std::numbers::pi;
  constexpr int kGrid = 16;
  double best_s = 0.0, best_i = 0.0;
  double best = squared_norm(beamsplitter_conditions(m, 0.0, 0.0));
  for (int a = 0; a < kGrid; ++a) {
    for (int b = 0; b < kGrid; ++b) {
      const double ps = -pi / 2 + pi * (a + 1) / kGrid;
      const double pi_ = -pi / 2 + pi * (b + 1) / kGrid;
      const double f = squared_norm(beamsplitter_conditions(m, ps, pi_));
      if (f < best) {
        best = f;
        best_s = ps;
        best_i = pi_;
      }
    }
  }

  const double target = tol.fallback_residual * tol.fallback_residual;
  double lambda = 1e-3;
  constexpr double h = 1e-6;
  for (int iter = 0; iter < 200 && best > target * 1e-4; ++iter) {
    const auto r = beamsplitter_conditions(m, best_s, best_i);
    std::array<std::array<double, 8>, 2> jac{};
    for (int k = 0; k < 2; ++k) {
      const double ds = k == 0 ? h : 0.0;
      const double di = k == 1 ? h : 0.0;
      const auto up = beamsplitter_conditions(m, best_s + ds, best_i + di);
      const auto dn = beamsplitter_conditions(m, best_s - ds, best_i - di);
      for (int q = 0; q < 8; ++q) jac[k][q] = (up[q] - dn[q]) / (2 * h);
    }
    double a11 = 0, a12 = 0, a22 = 0, g1 = 0, g2 = 0;
    for (int q = 0; q < 8; ++q) {
      a11 += jac[0][q] * jac[0][q];
      a12 += jac[0][q] * jac[1][q];
      a22 += jac[1][q] * jac[1][q];
      g1 += jac[0][q] * r[q];
      g2 += jac[1][q] * r[q];
    }
    bool improved = false;
    for (int attempt = 0; attempt < 30 && !improved; ++attempt) {
      const double d11 = a11 * (1 + lambda) + 1e-300;
      const double d22 = a22 * (1 + lambda) + 1e-300;
      const double det = d11 * d22 - a12 * a12;
      if (det == 0.0) {
        lambda *= 10;
        continue;
      }
      const double step_s = -(d22 * g1 - a12 * g2) / det;
      const double step_i = -(d11 * g2 - a12 * g1) / det;
      const double f = squared_norm(beamsplitter_conditions(m, best_s + step_s, best_i + step_i));
      if (f < best) {
        best = f;
        best_s += step_s;
        best_i += step_i;
        lambda = std::max(lambda / 10, 1e-12);
        improved = true;
      } else {
        lambda *= 10;
      }
    }
    if (!improved) break;
  }
  return {best_s, best_i};
}

/// Shifting both angles by pi/2 exchanges the roles of the two squeezers and
/// solves the same conditions. The plus root always has 0 < phi_i < pi/2, so
/// search results are moved there; on the boundary phi_i = 0 or pi/2 the
/// representative with phi_s <= 0 is kept.
inline std::pair<double, double> plus_root_representative(double phi_s, double phi_i,
                                                          double eps) {
  constexpr double pi = std::numbers::pi;
  const std::array<std::pair<double, double>, 2> reps{
      std::pair{normalize_half_turn(phi_s), normalize_half_turn(phi_i)},
      std::pair{normalize_half_turn(phi_s + pi / 2), normalize_half_turn(phi_i + pi / 2)}};
  for (const auto& [s, i] : reps)
    if (i > eps && i < pi / 2 - eps) return {s, i};
  for (const auto& [s, i] : reps)
    if (s <= eps) return {s, i};
  return reps[0];
}

}  // namespace detail

/// Four-downconverter scheme: g4, g5 from the crossed correlations of the
/// output, then g1, g2 after undoing the crossed pair.
inline ExtractionReport<ZouScheme> extract_zou(const TransferMatrix& m,
                                               const Tolerances& tol = default_tolerances()) {
  const MomentSet out = vacuum_moments(m);
  ZouScheme s;
  // A6 is stated for real crossed correlations; reject anything else.
  const Complex t4 = 2.0 * out.d_s1i2 / (out.b_s1 + out.b_i2 + 1.0);
  const Complex t5 = 2.0 * out.d_s2i1 / (out.b_s2 + out.b_i1 + 1.0);
  s.g4 = detail::half_atanh(t4, tol, "tanh(2 g4)");
  s.g5 = detail::half_atanh(t5, tol, "tanh(2 g5)");

  const TransferMatrix mc = cross_squeezer_backward(s.g4, s.g5) * m;
  const MomentSet c = vacuum_moments(mc);
  if (std::abs(c.d_s1i1.real()) > tol.imag_correlation ||
      std::abs(c.d_s2i2.real()) > tol.imag_correlation) {
    throw Error(ErrorKind::NonRealCorrelation,
                "D_s1i1,c / D_s2i2,c not purely imaginary (real parts " +
                    std::to_string(c.d_s1i1.real()) + ", " + std::to_string(c.d_s2i2.real()) +
                    ")");
  }
  std::tie(s.g1, s.g2) = detail::squeezer_pair_parameters(c, tol);
  return {s, equivalence_residual(m, s), Branch::ClosedForm, false};
}

/// Two-downconverter interferometer: beamsplitter angles from the closed-form
/// root pair (both roots tried), then g1, g2 after undoing the beamsplitters.
/// Degenerate or inaccurate closed forms fall back to a 2-D angle search.
inline ExtractionReport<OuScheme> extract_ou(const TransferMatrix& m,
                                             const Tolerances& tol = default_tolerances()) {
  const MomentSet out = vacuum_moments(m);
  const Complex a = out.d_s1i1, b = out.d_s1i2, c = out.d_s2i1, e = out.d_s2i2;

  std::vector<detail::OuCandidate> found;
  const Complex den_p = a * b - c * e;
  if (std::abs(den_p) >= tol.degenerate_denominator) {
    const Complex p = kI * (a * a + b * b - c * c - e * e) / den_p;
    const Complex root = std::sqrt(p * p + 4.0);
    // Roots of t^2 + p t - 1 = 0; their product is -1, so compute the larger
    // one directly and the other from it.
    Complex plus = 0.5 * (-p + root);
    Complex minus = 0.5 * (-p - root);
    if (std::abs(plus) < std::abs(minus)) {
      plus = -1.0 / minus;
    } else {
      minus = -1.0 / plus;
    }
    for (auto [tan_i, branch] : {std::pair{plus, Branch::PlusRoot},
                                 std::pair{minus, Branch::MinusRoot}}) {
      const Complex den_s = c * tan_i + kI * e;
      if (std::abs(den_s) < tol.degenerate_denominator) continue;
      const Complex tan_s = (b - kI * a * tan_i) / den_s;
      if (std::abs(tan_i.imag()) > tol.imag_correlation * (1 + std::abs(tan_i)) ||
          std::abs(tan_s.imag()) > tol.imag_correlation * (1 + std::abs(tan_s))) {
        continue;
      }
      try {
        found.push_back(detail::ou_from_angles(m, std::atan(tan_s.real()),
                                               std::atan(tan_i.real()), branch, tol));
      } catch (const Error&) {
        // this root does not lead to a real squeezer pair; try the other
      }
    }
  }

  std::optional<detail::OuCandidate> best;
  if (found.size() == 2 && found[0].residual <= tol.branch_tie &&
      found[1].residual <= tol.branch_tie) {
    best = found[0];
  } else {
    for (const auto& cand : found)
      if (!best || cand.residual < best->residual) best = cand;
  }

  bool fallback_used = false;
  if (!best || best->residual > tol.closed_form_accept) {
    fallback_used = true;
    const auto [found_s, found_i] = detail::search_beamsplitter_angles(m, tol);
    const auto [phi_s, phi_i] =
        detail::plus_root_representative(found_s, found_i, tol.imag_correlation);
    // prefer the canonical representative; keep the raw search result only
    // if it is clearly better
    std::optional<detail::OuCandidate> cand;
    for (auto [s, i] : {std::pair{phi_s, phi_i}, std::pair{found_s, found_i}}) {
      try {
        auto c = detail::ou_from_angles(m, s, i, Branch::Fallback, tol);
        if (!cand || (cand->residual > tol.closed_form_accept && c.residual < cand->residual))
          cand = c;
      } catch (const Error&) {
        // this representative does not give a real squeezer pair
      }
    }
    if (!cand && !best) {
      throw Error(ErrorKind::ResidualTooLarge, "beamsplitter search found no usable angles");
    }
    if (cand && (!best || cand->residual < best->residual)) best = cand;
  }

  if (best->residual > tol.residual_max) {
    throw Error(ErrorKind::ResidualTooLarge,
                "best Ou-scheme residual " + std::to_string(best->residual));
  }
  return {best->scheme, best->residual, best->branch, fallback_used};
}

/// Left and right sides of the photon-number inequality
///   n_s1 + n_s2 >= sum_i sinh^2 g_i
/// and the resulting bound |g_i| <= asinh(sqrt(n_s1 + n_s2)).
struct GBound {
  double lhs = 0.0;
  double rhs = 0.0;
  double bound = 0.0;
  double max_abs_g = 0.0;
  bool violated = false;
};

inline GBound g_bound_check(const TransferMatrix& m, const ZouScheme& s,
                            const Tolerances& tol = default_tolerances()) {
  const Intensities n = intensities(m);
  GBound r;
  r.lhs = n.total_signal();
  for (double g : s.params()) {
    r.rhs += std::sinh(g) * std::sinh(g);
    r.max_abs_g = std::max(r.max_abs_g, std::abs(g));
  }
  r.bound = std::asinh(std::sqrt(r.lhs));
  r.violated = r.lhs < r.rhs - tol.g_bound_slack;
  return r;
}

}  // namespace cpdc
