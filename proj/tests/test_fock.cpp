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
#include <set>

#include "cpdc/decompose.hpp"
#include "cpdc/device.hpp"
#include "cpdc/fock.hpp"
#include "cpdc/moments.hpp"
#include "cpdc/whichway.hpp"
#include "test_support.hpp"

namespace cpdc {
namespace {

using testing::fig2_device;

TEST_CASE("Fock basis indexing", "[fock]") {
  const FockBasis b(3);
  CHECK(b.size() == 256);
  std::set<std::size_t> seen;
  for (std::size_t k = 0; k < b.size(); ++k) {
    CHECK(b.index(b.occupation(k)) == k);
    seen.insert(k);
  }
  CHECK(seen.size() == b.size());
  CHECK(b.contains({3, 0, 3, 0}));
  CHECK_FALSE(b.contains({4, 0, 0, 0}));
  CHECK_FALSE(b.contains({0, -1, 0, 0}));
  CHECK_THROWS_AS(FockBasis(0), Error);
}

TEST_CASE("generator matrix elements", "[fock]") {
  const FockBasis b(2);
  const ComplexMatrix g = build_generator(fig2_device(1.0), b);
  const std::size_t vac = b.index({0, 0, 0, 0});
  CHECK(g(b.index({1, 1, 0, 0}), vac) == Complex(0.1));
  CHECK(g(b.index({0, 0, 1, 1}), vac) == Complex(0.3));
  CHECK(std::abs(g(b.index({2, 2, 0, 0}), b.index({1, 1, 0, 0})) - 0.1 * 2.0) < 1e-15);
  CHECK(g(b.index({1, 0, 0, 1}), b.index({1, 1, 0, 0})) == Complex(3.0));
  CHECK(max_abs_diff(g, adjoint(g)) == 0.0);
}

TEST_CASE("zero length leaves the vacuum", "[fock]") {
  const FockState st = evolve(fig2_device(0.0), FockBasis(3));
  CHECK(std::abs(st.amplitude({0, 0, 0, 0}) - 1.0) < 1e-15);
  CHECK(st.leakage == 0.0);
  const FockObservables o = fock_observables(st);
  CHECK(o.n.total_signal() == 0.0);
  CHECK_FALSE(o.coherence);
}

TEST_CASE("single squeezer photon number", "[fock]") {
  const FockState st = evolve({0.1, 0.0, 0.0, 1.0}, FockBasis(4));
  CHECK(std::abs(fock_intensities(st).s1 - std::sinh(0.1) * std::sinh(0.1)) < 1e-6);
  CHECK(std::abs(st.norm - 1.0) < 1e-9);
}

TEST_CASE("the conserved block reproduces full evolution", "[fock]") {
  for (int n_max : {2, 3}) {
    for (double length : {0.1, 0.3}) {
      const FockBasis b(n_max);
      const FockState full = evolve_dense(fig2_device(length), b);
      const FockState block = evolve(fig2_device(length), b);
      double worst = 0.0;
      for (std::size_t k = 0; k < b.size(); ++k)
        worst = std::max(worst, std::abs(full.amplitudes[k] - block.amplitudes[k]));
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("truncated dynamics agree with the Gaussian model", "[fock]") {
  for (double length : {0.5, 1.0, 1.5, 2.0}) {
    const TransferMatrix m = transfer_matrix(fig2_device(length));
    const FockState st = evolve(fig2_device(length), FockBasis(4));
    CHECK(st.leakage < 1e-4);
    CHECK(std::abs(st.norm - 1.0) < 1e-9);
    const Intensities g = intensities(m);
    const FockObservables f = fock_observables(st);
    CHECK(std::abs(f.n.s1 - g.s1) < 1e-3);
    CHECK(std::abs(f.n.s2 - g.s2) < 1e-3);
    CHECK(std::abs(f.n.i1 - g.i1) < 1e-3);
    CHECK(std::abs(f.n.i2 - g.i2) < 1e-3);
    REQUIRE(f.coherence);
    CHECK(std::abs(f.coherence->gamma - signal_coherence(m).gamma) < 1e-3);
  }
}

TEST_CASE("a larger cutoff tightens the agreement", "[fock]") {
  const TransferMatrix m = transfer_matrix(fig2_device(1.0));
  const FockState st = evolve(fig2_device(1.0), FockBasis(6));
  CHECK(std::abs(fock_intensities(st).s2 - intensities(m).s2) < 1e-6);
  CHECK(std::abs(fock_coherence(st).gamma - signal_coherence(m).gamma) < 1e-6);
}

TEST_CASE("identical sources give no coherence in Fock space", "[fock]") {
  const FockState st = evolve({0.2, 0.2, 2.0, 1.3}, FockBasis(4));
  CHECK(std::abs(fock_coherence(st).gamma) < 1e-6);
}

TEST_CASE("too small a cutoff is reported", "[fock]") {
  try {
    evolve({1.0, 0.0, 0.0, 2.0}, FockBasis(2));
    FAIL("expected leakage error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LeakageTooLarge);
  }
}

TEST_CASE("the single-pair component matches the extracted pair state", "[fock]") {
  const ContinuousDevice d = fig2_device(0.1);
  const PairState fock_pairs = single_pair_component(evolve(d, FockBasis(4)));
  const PairState scheme_pairs = pair_state(extract_zou(transfer_matrix(d)).scheme);
  CHECK(overlap(fock_pairs, scheme_pairs) >= 0.999);
}

}  // namespace
}  // namespace cpdc
