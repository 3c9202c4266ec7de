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

#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tnm/error.hpp"
#include "tnm/hilbert.hpp"

using namespace tnm;

TEST_CASE("layout dimensions") {
  CHECK(SystemLayout(0, 2).dim() == 2);
  CHECK(SystemLayout(1, 2).dim() == 4);
  CHECK(SystemLayout(3, 4).dim() == 32);
  for (int n = 1; n <= 8; ++n) {
    const SystemLayout capped(n, 2, 1);
    CHECK(capped.dim() == static_cast<std::size_t>(n + 2));
    CHECK(capped.truncated());
  }
  CHECK_FALSE(SystemLayout(2, 3).truncated());
}

TEST_CASE("layout rejects oversized and invalid requests") {
  try {
    SystemLayout(10, 8);  // 8192 > 4096
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCapacityExceeded);
  }
  CHECK_NOTHROW(SystemLayout(10, 8, std::nullopt, 10000));
  CHECK_THROWS_AS(SystemLayout(-1, 2), Error);
  CHECK_THROWS_AS(SystemLayout(1, 1), Error);
}

TEST_CASE("basis ordering: cavity first, qubit 1 most significant, excited before ground") {
  const SystemLayout layout(2, 2);
  const auto b = layout.basis();
  REQUIRE(b.size() == 8);
  CHECK(b[0].photons == 0);
  CHECK(b[0].ground_mask == 0u);  // |0, e, e>
  CHECK(b[1].ground_mask == 1u);  // |0, e, g>
  CHECK(b[2].ground_mask == 2u);  // |0, g, e>
  CHECK(b[4].photons == 1);
  const QubitLevel levels[] = {QubitLevel::kGround, QubitLevel::kExcited};
  const ComplexMatrix psi = basis_state(layout, 1, levels);
  CHECK(psi(6, 6) == Complex(1.0));
}

TEST_CASE("ladder operators on the full product space") {
  const SystemLayout layout(1, 4);
  const OperatorSet ops = build_operators(layout);
  const ComplexMatrix comm = commutator(ops.a, ops.a_dag);
  // [a, a^dag] = 1 except on the top Fock level.
  for (std::size_t i = 0; i < layout.dim(); ++i) {
    const double want = layout.basis()[i].photons == 3 ? -3.0 : 1.0;
    CHECK(comm(i, i).real() == doctest::Approx(want));
  }
  CHECK(oracle::max_abs_diff(ops.a_dag * ops.a, ops.number_op) < 1e-14);
  CHECK(oracle::max_abs_diff(commutator(ops.sigma_plus[0], ops.sigma_minus[0]), ops.sigma_z[0]) < 1e-14);
  CHECK(oracle::max_abs_diff(ops.exchange[0], ops.sigma_minus[0] * ops.a_dag) < 1e-14);
}

TEST_CASE("capped operators equal projections of the full operators") {
  const SystemLayout full(3, 2);
  const SystemLayout capped(3, 2, 1);
  const OperatorSet f = build_operators(full);
  const OperatorSet c = build_operators(capped);
  auto project = [&](const ComplexMatrix& m) {
    ComplexMatrix out(capped.dim());
    for (std::size_t i = 0; i < capped.dim(); ++i)
      for (std::size_t j = 0; j < capped.dim(); ++j)
        out(i, j) = m(full.product_index(capped.basis()[i]), full.product_index(capped.basis()[j]));
    return out;
  };
  CHECK(oracle::max_abs_diff(project(f.a), c.a) == 0.0);
  CHECK(oracle::max_abs_diff(project(f.number_op), c.number_op) == 0.0);
  for (int j = 0; j < 3; ++j) {
    CHECK(oracle::max_abs_diff(project(f.sigma_z[j]), c.sigma_z[j]) == 0.0);
    CHECK(oracle::max_abs_diff(project(f.sigma_minus[j]), c.sigma_minus[j]) == 0.0);
    CHECK(oracle::max_abs_diff(project(f.exchange[j]), c.exchange[j]) == 0.0);
  }
  // The excitation number commutes with the exchange terms.
  const ComplexMatrix ex = excitation_operator(c);
  for (int j = 0; j < 3; ++j) CHECK(commutator(ex, c.exchange[j] + c.exchange[j].adjoint()).max_abs() < 1e-14);
}

TEST_CASE("partial trace matches index summation on the product space") {
  std::mt19937_64 rng(11);
  for (int n : {0, 1, 2, 3}) {
    const SystemLayout layout(n, 3);
    const ComplexMatrix rho = oracle::random_density(layout.dim(), rng);
    const ComplexMatrix got = partial_trace_qubits(rho, layout);
    const ComplexMatrix want = oracle::trace_out_trailing(rho, 3, std::size_t{1} << n);
    CHECK(oracle::max_abs_diff(got, want) < 1e-14);
  }
}

TEST_CASE("partial trace of a product state returns the cavity factor") {
  std::mt19937_64 rng(5);
  const ComplexMatrix cav = oracle::random_density(3, rng);
  const ComplexMatrix q = oracle::random_density(4, rng);
  const SystemLayout layout(2, 3);
  const ComplexMatrix got = partial_trace_qubits(kron(cav, q), layout);
  CHECK(oracle::max_abs_diff(got, cav) < 1e-14);
}

TEST_CASE("partial trace on a capped layout") {
  const SystemLayout layout(2, 2, 1);
  const ComplexMatrix rho = cavity_fock_with_ground_qubits(layout, 1);
  const ComplexMatrix r = partial_trace_qubits(rho, layout);
  CHECK(r.dim() == 2);
  CHECK(r(1, 1) == Complex(1.0));
  CHECK(r(0, 0) == Complex(0.0));
}
