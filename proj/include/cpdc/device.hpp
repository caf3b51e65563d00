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

// Transfer matrices of the continuously coupled downconverter pair and of the
// cascaded two-crystal device with a partially transmitting idler link.
//
// Every 4x4 matrix in this library acts on the operator vector
//   (A_s1, A_s2, A_i1^dagger, A_i2^dagger)
// so row/column 0 is signal 1, 1 is signal 2, 2 is idler 1 (creation part)
// and 3 is idler 2 (creation part).

#include <cmath>
#include <numbers>
#include <string>

#include "cpdc/config.hpp"
#include "cpdc/error.hpp"
#include "cpdc/numerics.hpp"

namespace cpdc {

/// Row/column index of each mode in a TransferMatrix.
enum Mode : std::size_t { kS1 = 0, kS2 = 1, kI1 = 2, kI2 = 3 };

/// Two downconverters (couplings gamma1, gamma2) whose idlers exchange
/// energy linearly at rate kappa over an interaction length `length`.
/// Couplings are real; units are inverse length.
struct ContinuousDevice {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double kappa = 0.0;
  double length = 0.0;

  void validate() const {
    if (!std::isfinite(gamma1) || !std::isfinite(gamma2) || !std::isfinite(kappa) ||
        !std::isfinite(length)) {
      throw Error(ErrorKind::InvalidDevice, "non-finite coupling or length");
    }
    if (length < 0.0) {
      throw Error(ErrorKind::InvalidDevice, "negative length " + std::to_string(length));
    }
  }

  ContinuousDevice with_length(double l) const {
    ContinuousDevice d = *this;
    d.length = l;
    return d;
  }
};

/// Two cascaded downconverters (squeezings r1, r2); the first idler reaches
/// the second crystal through a beamsplitter of mixing angle psi.
struct ZouDevice {
  double r1 = 0.0;
  double r2 = 0.0;
  double psi = 0.0;

  void validate() const {
    if (!std::isfinite(r1) || !std::isfinite(r2) || !std::isfinite(psi)) {
      throw Error(ErrorKind::InvalidDevice, "non-finite Zou device parameter");
    }
    if (psi < 0.0 || psi > std::numbers::pi / 2) {
      throw Error(ErrorKind::InvalidDevice,
                  "mixing angle psi=" + std::to_string(psi) + " outside [0, pi/2]");
    }
  }
};

/// 4x4 Bogoliubov matrix in the (s1, s2, i1^dagger, i2^dagger) basis.
class TransferMatrix {
 public:
  TransferMatrix() : m_(ComplexMatrix::identity(4)) {}

  explicit TransferMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() != 4 || m_.cols() != 4) {
      throw Error(ErrorKind::DimensionMismatch, "transfer matrix must be 4x4, got " + m_.shape());
    }
    if (!m_.all_finite()) throw Error(ErrorKind::NonFinite, "transfer matrix entries");
  }

  const ComplexMatrix& matrix() const noexcept { return m_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  /// Cascade: `later` applied after `earlier` gives later.matrix() * earlier.matrix().
  friend TransferMatrix operator*(const TransferMatrix& later, const TransferMatrix& earlier) {
    return TransferMatrix(later.m_ * earlier.m_);
  }

 private:
  ComplexMatrix m_;
};

enum class Regime { AboveThreshold, BelowThreshold, AtThreshold };

constexpr std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::AboveThreshold: return "above_threshold";
    case Regime::BelowThreshold: return "below_threshold";
    case Regime::AtThreshold: return "at_threshold";
  }
  return "unknown";
}

/// eta = diag(+1, +1, -1, -1).
inline ComplexMatrix symplectic_metric() {
  ComplexMatrix eta(4, 4);
  eta(0, 0) = 1.0;
  eta(1, 1) = 1.0;
  eta(2, 2) = -1.0;
  eta(3, 3) = -1.0;
  return eta;
}

/// max |M eta M^dagger - eta|; zero for a commutator-preserving matrix.
inline double symplectic_defect(const TransferMatrix& t) {
  const ComplexMatrix eta = symplectic_metric();
  return max_abs_diff(t.matrix() * eta * adjoint(t.matrix()), eta);
}

/// Generator H with M = exp(i H L).
inline ComplexMatrix build_hamiltonian(const ContinuousDevice& dev) {
  dev.validate();
  ComplexMatrix h(4, 4);
  h(kS1, kI1) = dev.gamma1;
  h(kS2, kI2) = dev.gamma2;
  h(kI1, kS1) = -dev.gamma1;
  h(kI1, kI2) = -dev.kappa;
  h(kI2, kS2) = -dev.gamma2;
  h(kI2, kI1) = -dev.kappa;
  return h;
}

inline TransferMatrix transfer_matrix(const ContinuousDevice& dev,
                                      const Tolerances& tol = default_tolerances()) {
  const ComplexMatrix h = build_hamiltonian(dev);
  return TransferMatrix(expm(h * Complex(0.0, dev.length), tol));
}

/// Input-output relations of the cascaded device, read row by row.
inline TransferMatrix zou_transfer_matrix(const ZouDevice& dev) {
  dev.validate();
  const double c1 = std::cosh(dev.r1), s1 = std::sinh(dev.r1);
  const double c2 = std::cosh(dev.r2), s2 = std::sinh(dev.r2);
  const double cp = std::cos(dev.psi), sp = std::sin(dev.psi);
  // A_i1,out and A_i2,out are given for annihilators; rows 2 and 3 hold
  // their adjoints, hence the conjugated coefficients.
  return TransferMatrix(ComplexMatrix(
      4, 4,
      {
          c1, 0.0, kI * s1, 0.0,                                            // s1
          -kI * (s1 * sp * s2), c2, c1 * sp * s2, kI * (cp * s2),           // s2
          -kI * (s1 * cp), 0.0, c1 * cp, -kI * sp,                          // i1^dagger
          -(s1 * sp * c2), -kI * s2, -kI * (c1 * sp * c2), cp * c2,         // i2^dagger
      }));
}

inline Regime classify_regime(const ContinuousDevice& dev,
                              const Tolerances& tol = default_tolerances()) {
  dev.validate();
  const double pump = std::abs(dev.gamma1) + std::abs(dev.gamma2);
  const double link = std::abs(dev.kappa);
  if (std::abs(link - pump) <= tol.threshold_equality) return Regime::AtThreshold;
  return link < pump ? Regime::AboveThreshold : Regime::BelowThreshold;
}

}  // namespace cpdc
