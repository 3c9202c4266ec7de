// Copyright 2026 The tnm Authors
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

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tnm/error.hpp"
#include "tnm/hilbert.hpp"
#include "tnm/model.hpp"

using namespace tnm;

TEST_CASE("waveforms") {
  const CavityDrive sine{0.2, 0.5, Waveform::kSinusoid};
  const CavityDrive mem{0.2, 0.5, Waveform::kMemristor};
  CHECK(sine.value(1.0) == doctest::Approx(0.2 * std::sin(0.5)));
  CHECK(mem.value(0.0) == doctest::Approx(0.2 * (1.0 - std::sin(1.0))));
  CHECK(mem.period() == doctest::Approx(4.0 * M_PI));
  CHECK(parse_waveform("memristor") == Waveform::kMemristor);
  CHECK_THROWS_AS(parse_waveform("square"), Error);
  const QubitDrive q{0.5, 1.0};
  CHECK(q.coefficient(0.3) == doctest::Approx(0.5 * std::sin(0.3)));
}

TEST_CASE("Hamiltonian is Hermitian with all terms present") {
  ModelParams p;
  p.drive_q = QubitDrive{0.5, 0.7};
  p.drive_c = CavityDrive{0.2, 1.0, Waveform::kMemristor};
  for (int n : {1, 2, 3}) {
    const SystemLayout layout(n, 3);
    const OperatorSet ops = build_operators(layout);
    for (double t : {0.0, 0.4, 2.5}) CHECK(hamiltonian_at(t, p, ops).is_hermitian(1e-14));
  }
}

TEST_CASE("Hamiltonian matrix elements") {
  ModelParams p;
  p.omega_q = 0.9;
  p.g = 0.05;
  const SystemLayout layout(1, 2);
  const OperatorSet ops = build_operators(layout);
  const ComplexMatrix h = hamiltonian_tc(p, ops);
  // Indices: |0e>=0, |0g>=1, |1e>=2, |1g>=3.
  CHECK(h(0, 0).real() == doctest::Approx(0.45));
  CHECK(h(1, 1).real() == doctest::Approx(-0.45));
  CHECK(h(3, 3).real() == doctest::Approx(1.0 - 0.45));
  CHECK(h(0, 3).real() == doctest::Approx(0.05));  // <0e|H|1g> = g
  CHECK(h(3, 0).real() == doctest::Approx(0.05));
}

TEST_CASE("dissipator preserves trace and Hermiticity") {
  std::mt19937_64 rng(1);
  const SystemLayout layout(1, 3);
  const OperatorSet ops = build_operators(layout);
  const ComplexMatrix rho = oracle::random_density(layout.dim(), rng);
  const ComplexMatrix d = dissipator(ops.a, rho);
  CHECK(std::abs(d.trace()) < 1e-14);
  CHECK(d.is_hermitian(1e-14));
  ModelParams p;
  p.drive_q = QubitDrive{0.5, 1.0};
  const ComplexMatrix l = lindblad_rhs(0.3, rho, p, ops);
  CHECK(std::abs(l.trace()) < 1e-13);
  CHECK(l.is_hermitian(1e-13));
}

TEST_CASE("dissipator on a two-level cavity") {
  // D[a] |1><1| = |0><0| - |1><1|
  const SystemLayout layout(0, 2);
  const OperatorSet ops = build_operators(layout);
  ComplexMatrix one(2);
  one(1, 1) = 1.0;
  const ComplexMatrix d = dissipator(ops.a, one);
  CHECK(d(0, 0) == Complex(1.0));
  CHECK(d(1, 1) == Complex(-1.0));
}

TEST_CASE("parameter validation and validity warnings") {
  ModelParams p;
  CHECK_NOTHROW(validate(p));
  CHECK(validity_warnings(p).empty());
  p.g = 0.5;
  CHECK_FALSE(validity_warnings(p).empty());
  p.g = 0.05;
  p.gamma_r = -0.1;
  CHECK_THROWS_AS(validate(p), Error);
  p.gamma_r = 0.005;
  p.omega_q = 2.0;
  CHECK_FALSE(validity_warnings(p).empty());
}

TEST_CASE("time-dependent decay rate") {
  const DecayRateModel m{0.05, 0.023, 0.09};
  CHECK(m.rate(0.0) == doctest::Approx(0.0045));
  CHECK(m.rate(3 * M_PI / 2 / 0.023) < 0.0);
  const SystemLayout layout(1, 2);
  const OperatorSet ops = build_operators(layout);
  CHECK_THROWS_AS(lindblad_rhs_tdecay(0.0, ComplexMatrix(4), m, ModelParams{}, ops), Error);
}
