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

// Independent check of the transfer-matrix results: the vacuum is evolved
// under the interaction momentum operator
//   G = Gamma1 a_s1^+ a_i1^+ + Gamma2 a_s2^+ a_i2^+ + kappa a_i1 a_i2^+ + h.c.
// in a four-mode Fock space truncated at n_max photons per mode.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cpdc/config.hpp"
#include "cpdc/device.hpp"
#include "cpdc/error.hpp"
#include "cpdc/moments.hpp"
#include "cpdc/numerics.hpp"
#include "cpdc/whichway.hpp"

namespace cpdc {

/// Occupations in ket order (s1, i1, s2, i2).
using Occupation = std::array<int, 4>;

enum FockMode : std::size_t { kFockS1 = 0, kFockI1 = 1, kFockS2 = 2, kFockI2 = 3 };

class FockBasis {
 public:
  explicit FockBasis(int n_max = 4) : n_max_(n_max) {
    if (n_max < 1) {
      throw Error(ErrorKind::CutoffTooSmall, "n_max = " + std::to_string(n_max));
    }
    const std::size_t b = static_cast<std::size_t>(n_max) + 1;
    size_ = b * b * b * b;
  }

  int n_max() const noexcept { return n_max_; }
  std::size_t size() const noexcept { return size_; }

  std::size_t index(const Occupation& n) const {
    const std::size_t b = static_cast<std::size_t>(n_max_) + 1;
    std::size_t k = 0;
    for (int x : n) k = k * b + static_cast<std::size_t>(x);
    return k;
  }

  Occupation occupation(std::size_t k) const {
    const std::size_t b = static_cast<std::size_t>(n_max_) + 1;
    Occupation n{};
    for (std::size_t m = 4; m-- > 0;) {
      n[m] = static_cast<int>(k % b);
      k /= b;
    }
    return n;
  }

  bool contains(const Occupation& n) const {
    for (int x : n)
      if (x < 0 || x > n_max_) return false;
    return true;
  }

 private:
  int n_max_;
  std::size_t size_;
};

struct FockState {
  FockBasis basis;
  std::vector<Complex> amplitudes;
  double norm = 1.0;
  double leakage = 0.0;  // population on kets with some mode at n_max

  Complex amplitude(const Occupation& n) const {
    return basis.contains(n) ? amplitudes[basis.index(n)] : Complex{};
  }
};

/// Matrix of G/hbar in the truncated basis (Hermitian by construction).
inline ComplexMatrix build_generator(const ContinuousDevice& dev, const FockBasis& basis) {
  dev.validate();
  ComplexMatrix g(basis.size(), basis.size());
  auto couple = [&](std::size_t from, const Occupation& to, Complex value) {
    if (!basis.contains(to) || value == Complex{}) return;
    const std::size_t t = basis.index(to);
    g(t, from) += value;
    g(from, t) += std::conj(value);
  };
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Occupation n = basis.occupation(k);
    // pair creation in (s1, i1) and (s2, i2)
    couple(k, {n[0] + 1, n[1] + 1, n[2], n[3]},
           dev.gamma1 * std::sqrt(double(n[0] + 1) * double(n[1] + 1)));
    couple(k, {n[0], n[1], n[2] + 1, n[3] + 1},
           dev.gamma2 * std::sqrt(double(n[2] + 1) * double(n[3] + 1)));
    // idler exchange a_i1 a_i2^+
    if (n[kFockI1] > 0) {
      couple(k, {n[0], n[1] - 1, n[2], n[3] + 1},
             dev.kappa * std::sqrt(double(n[1]) * double(n[3] + 1)));
    }
  }
  return g;
}

namespace detail {

inline FockState finish_state(const FockBasis& basis, std::vector<Complex> amps,
                              const Tolerances& tol) {
  FockState st{basis, std::move(amps)};
  double norm2 = 0.0;
  double leak = 0.0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double p = std::norm(st.amplitudes[k]);
    norm2 += p;
    for (int x : basis.occupation(k)) {
      if (x == basis.n_max()) {
        leak += p;
        break;
      }
    }
  }
  st.norm = std::sqrt(norm2);
  st.leakage = leak;
  if (st.leakage > tol.leakage_max) {
    throw Error(ErrorKind::LeakageTooLarge,
                "boundary population " + std::to_string(st.leakage) + " at n_max=" +
                    std::to_string(basis.n_max()));
  }
  return st;
}

}  // namespace detail

/// exp(i G L / hbar) |vac>. G conserves n_s1 + n_s2 - n_i1 - n_i2, so the
/// exponential is taken on the block containing the vacuum; the result is
/// identical to exponentiating the whole generator.
inline FockState evolve(const ContinuousDevice& dev, const FockBasis& basis,
                        const Tolerances& tol = default_tolerances()) {
  const ComplexMatrix g = build_generator(dev, basis);
  std::vector<std::size_t> sector;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Occupation n = basis.occupation(k);
    if (n[kFockS1] + n[kFockS2] == n[kFockI1] + n[kFockI2]) sector.push_back(k);
  }
  ComplexMatrix block(sector.size(), sector.size());
  std::size_t vacuum_slot = 0;
  for (std::size_t a = 0; a < sector.size(); ++a) {
    if (sector[a] == 0) vacuum_slot = a;
    for (std::size_t b = 0; b < sector.size(); ++b)
      block(a, b) = g(sector[a], sector[b]) * Complex(0.0, dev.length);
  }
  const ComplexMatrix u = expm(block, tol);
  std::vector<Complex> amps(basis.size());
  for (std::size_t a = 0; a < sector.size(); ++a) amps[sector[a]] = u(a, vacuum_slot);
  return detail::finish_state(basis, std::move(amps), tol);
}

/// Same evolution through the full (n_max+1)^4 generator.
inline FockState evolve_dense(const ContinuousDevice& dev, const FockBasis& basis,
                              const Tolerances& tol = default_tolerances()) {
  const ComplexMatrix u = expm(build_generator(dev, basis) * Complex(0.0, dev.length), tol);
  std::vector<Complex> amps(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) amps[k] = u(k, 0);
  return detail::finish_state(basis, std::move(amps), tol);
}

inline Intensities fock_intensities(const FockState& st) {
  Intensities n;
  for (std::size_t k = 0; k < st.basis.size(); ++k) {
    const double p = std::norm(st.amplitudes[k]);
    if (p == 0.0) continue;
    const Occupation o = st.basis.occupation(k);
    n.s1 += p * o[kFockS1];
    n.i1 += p * o[kFockI1];
    n.s2 += p * o[kFockS2];
    n.i2 += p * o[kFockI2];
  }
  return n;
}

/// <a_s1^+ a_s2>.
inline Complex fock_signal_cross(const FockState& st) {
  Complex acc{};
  for (std::size_t k = 0; k < st.basis.size(); ++k) {
    const Complex amp = st.amplitudes[k];
    if (amp == Complex{}) continue;
    const Occupation o = st.basis.occupation(k);
    if (o[kFockS2] == 0) continue;
    const Occupation to{o[0] + 1, o[1], o[2] - 1, o[3]};
    if (!st.basis.contains(to)) continue;
    acc += std::conj(st.amplitude(to)) * amp *
           std::sqrt(double(o[kFockS2]) * double(o[kFockS1] + 1));
  }
  return acc;
}

struct FockObservables {
  Intensities n;
  std::optional<Coherence> coherence;  // empty when a signal beam is dark
};

inline Coherence fock_coherence(const FockState& st,
                                const Tolerances& tol = default_tolerances()) {
  const Intensities n = fock_intensities(st);
  return coherence_from(fock_signal_cross(st), n.s1, n.s2, tol);
}

inline FockObservables fock_observables(const FockState& st,
                                        const Tolerances& tol = default_tolerances()) {
  FockObservables r{fock_intensities(st), std::nullopt};
  try {
    r.coherence = coherence_from(fock_signal_cross(st), r.n.s1, r.n.s2, tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UndefinedCoherence) throw;
  }
  return r;
}

/// Amplitudes of the four single-pair kets, in PairState order.
inline PairState single_pair_component(const FockState& st) {
  return {st.amplitude({1, 0, 0, 1}), st.amplitude({0, 1, 1, 0}), st.amplitude({1, 1, 0, 0}),
          st.amplitude({0, 0, 1, 1})};
}

}  // namespace cpdc
