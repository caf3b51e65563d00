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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "cpdc/decompose.hpp"
#include "cpdc/device.hpp"
#include "cpdc/moments.hpp"
#include "cpdc/whichway.hpp"
#include "test_support.hpp"

namespace cpdc {
namespace {

using testing::fig2_device;
using testing::random_below_threshold;

ErrorKind kind_of(const TransferMatrix& m) {
  try {
    extract_zou(m);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidConfig;
}

TEST_CASE("the identity decomposes into nothing", "[decompose]") {
  const auto zou = extract_zou(TransferMatrix{});
  for (double g : zou.scheme.params()) CHECK(g == 0.0);
  CHECK(zou.residual == 0.0);
  const auto ou = extract_ou(TransferMatrix{});
  CHECK(std::abs(ou.scheme.g1) < 1e-12);
  CHECK(std::abs(ou.scheme.g2) < 1e-12);
  CHECK(ou.residual < 1e-10);
}

TEST_CASE("uncoupled squeezers are recovered", "[decompose]") {
  const TransferMatrix m = transfer_matrix({0.1, 0.3, 0.0, 1.0});
  const auto zou = extract_zou(m);
  CHECK(std::abs(zou.scheme.g1 - 0.1) < 1e-10);
  CHECK(std::abs(zou.scheme.g2 - 0.3) < 1e-10);
  CHECK(std::abs(zou.scheme.g4) < 1e-12);
  CHECK(std::abs(zou.scheme.g5) < 1e-12);
  CHECK(zou.residual < 1e-10);

  const auto ou = extract_ou(m);
  CHECK(ou.fallback_used);
  CHECK(ou.residual < 1e-10);
  CHECK(std::abs(std::sin(ou.scheme.phi_s)) < 1e-6);
  CHECK(std::abs(std::sin(ou.scheme.phi_i)) < 1e-6);
  CHECK(std::abs(ou.scheme.g1 - 0.1) < 1e-8);
  CHECK(std::abs(ou.scheme.g2 - 0.3) < 1e-8);
}

TEST_CASE("forward synthesis of a single squeezer", "[decompose]") {
  const TransferMatrix f = zou_forward_matrix({0.1, 0.0, 0.0, 0.0});
  CHECK(max_abs_diff(f.matrix(), transfer_matrix({0.1, 0.0, 0.0, 1.0}).matrix()) < 1e-15);
  CHECK(max_abs_diff(zou_forward_matrix({}).matrix(), ComplexMatrix::identity(4)) == 0.0);
  CHECK(max_abs_diff(ou_forward_matrix({}).matrix(), ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("stage matrices are symplectic", "[decompose]") {
  CHECK(symplectic_defect(squeezer_pair_backward(0.3, -0.7)) < 1e-15);
  CHECK(symplectic_defect(cross_squeezer_backward(0.2, 0.5)) < 1e-15);
  CHECK(symplectic_defect(beamsplitters_backward(0.4, -1.1)) < 1e-15);
}

TEST_CASE("both schemes reproduce the device moments", "[decompose][property]") {
  std::mt19937_64 rng(47);
  for (int rep = 0; rep < 150; ++rep) {
    ContinuousDevice d = random_below_threshold(rng, 2.0, 5.0, 0.2);
    d.length = std::max(d.length, 0.05);
    INFO(d.gamma1 << " " << d.gamma2 << " " << d.kappa << " " << d.length);
    const TransferMatrix m = transfer_matrix(d);
    const MomentSet target = vacuum_moments(m);

    const auto zou = extract_zou(m);
    CHECK(zou.residual < 1e-8);
    CHECK(max_abs_diff(vacuum_moments(zou_forward_matrix(zou.scheme)), target) < 1e-8);

    const auto ou = extract_ou(m);
    CHECK(ou.residual < 1e-8);
    CHECK(max_abs_diff(vacuum_moments(ou_forward_matrix(ou.scheme)), target) < 1e-8);
    CHECK(ou.scheme.phi_s > -std::numbers::pi / 2);
    CHECK(ou.scheme.phi_s <= std::numbers::pi / 2);

    const Intensities n = intensities(m);
    if (n.s1 > 1e-8 && n.s2 > 1e-8) {
      CHECK(std::abs(ou_gamma(ou.scheme) - signal_coherence(m).gamma) < 1e-6);
    }
  }
}

TEST_CASE("the extracted squeezings respect the photon-number bound", "[decompose]") {
  for (int k = 0; k <= 2000; ++k) {
    const TransferMatrix m = transfer_matrix(fig2_device(0.01 * k));
    const auto zou = extract_zou(m);
    const GBound b = g_bound_check(m, zou.scheme);
    INFO("L = " << 0.01 * k);
    CHECK_FALSE(b.violated);
    CHECK(b.max_abs_g <= b.bound + 1e-9);
  }
}

TEST_CASE("photon-number bound on the uncoupled device is tight", "[decompose]") {
  const TransferMatrix m = transfer_matrix({0.1, 0.3, 0.0, 1.0});
  const GBound b = g_bound_check(m, extract_zou(m).scheme);
  CHECK(std::abs(b.lhs - b.rhs) < 1e-12);
  CHECK(g_bound_check(TransferMatrix{}, ZouScheme{}).lhs == 0.0);
  CHECK(g_bound_check(m, ZouScheme{0.5, 0.5, 0.5, 0.5}).violated);
}

TEST_CASE("identical sources give equal squeezings", "[decompose]") {
  for (double length : {0.7, 2.0, 4.5}) {
    const TransferMatrix m = transfer_matrix({0.2, 0.2, 2.0, length});
    const auto ou = extract_ou(m);
    CHECK(std::abs(std::abs(ou.scheme.g1) - std::abs(ou.scheme.g2)) < 1e-8);
    CHECK(std::abs(ou_gamma(ou.scheme)) < 1e-8);
  }
}

TEST_CASE("the cascaded device decomposes as expected", "[decompose]") {
  SECTION("psi = pi/2") {
    const TransferMatrix m = zou_transfer_matrix({0.1, 0.1, std::numbers::pi / 2});
    const auto ou = extract_ou(m);
    CHECK(std::abs(ou.scheme.g2) < 1e-8);
    const auto zou = extract_zou(m);
    CHECK(std::abs(zou.scheme.g1) < 1e-8);
    CHECK(std::abs(zou.scheme.g5) < 1e-8);
    CHECK(zou.residual < 1e-10);
  }
  SECTION("psi = 0") {
    const auto zou = extract_zou(zou_transfer_matrix({0.1, 0.1, 0.0}));
    CHECK(std::abs(zou.scheme.g4) < 1e-12);
    CHECK(std::abs(zou.scheme.g5) < 1e-12);
    CHECK(std::abs(zou.scheme.g1 - 0.1) < 1e-12);
    CHECK(std::abs(zou.scheme.g2 - 0.1) < 1e-12);
  }
}

TEST_CASE("the closed-form root is preferred on the fig2 device", "[decompose]") {
  const auto ou = extract_ou(transfer_matrix(fig2_device(1.0)));
  CHECK(ou.branch == Branch::PlusRoot);
  CHECK_FALSE(ou.fallback_used);
  CHECK(to_string(ou.branch) == "plus_root");
}

TEST_CASE("a perturbed scheme is not equivalent", "[decompose]") {
  const TransferMatrix m = transfer_matrix(fig2_device(1.3));
  ZouScheme s = extract_zou(m).scheme;
  CHECK(equivalence_residual(m, s) < 1e-10);
  s.g1 += 0.05;
  CHECK(equivalence_residual(m, s) > 1e-3);
}

TEST_CASE("inconsistent moments are rejected", "[decompose]") {
  // 2 D_s1i2 exceeds B_s1 + B_i2 + 1
  ComplexMatrix big = ComplexMatrix::identity(4);
  big(kS1, kS1) = 2.0;
  big(kI2, kS1) = 1.0;
  CHECK(kind_of(TransferMatrix(big)) == ErrorKind::TanhDomain);

  ComplexMatrix complex_corr = ComplexMatrix::identity(4);
  complex_corr(kI2, kS1) = Complex(0.0, 0.1);
  CHECK(kind_of(TransferMatrix(complex_corr)) == ErrorKind::NonRealCorrelation);
}

TEST_CASE("angles are folded into a half turn", "[decompose]") {
  using detail::normalize_half_turn;
  constexpr double pi = std::numbers::pi;
  CHECK(std::abs(normalize_half_turn(pi) - 0.0) < 1e-15);
  CHECK(std::abs(normalize_half_turn(-pi / 2) - pi / 2) < 1e-15);
  CHECK(std::abs(normalize_half_turn(0.3 + 2 * pi) - 0.3) < 1e-14);
}

}  // namespace
}  // namespace cpdc
