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
#include "tnm/linalg.hpp"

using namespace tnm;

TEST_CASE("matmul and kron on small matrices") {
  const ComplexMatrix x{{0, 1}, {1, 0}};
  const ComplexMatrix z{{1, 0}, {0, -1}};
  const ComplexMatrix y{{0, Complex(0, -1)}, {Complex(0, 1), 0}};
  // XZ = -iY
  CHECK(oracle::max_abs_diff(x * z, Complex(0, -1) * y) == 0.0);
  const ComplexMatrix xz = kron(x, z);
  CHECK(xz.dim() == 4);
  CHECK(xz(0, 2) == Complex(1));
  CHECK(xz(1, 3) == Complex(-1));
  CHECK(xz(0, 0) == Complex(0));
  CHECK(commutator(x, x).max_abs() == 0.0);
  CHECK(oracle::max_abs_diff(anticommutator(x, z), ComplexMatrix(2)) == 0.0);
}

TEST_CASE("dimension mismatch names both dimensions") {
  const ComplexMatrix a(2), b(3);
  try {
    (void)matmul(a, b);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDimensionMismatch);
    const std::string msg = e.what();
    CHECK(msg.find('2') != std::string::npos);
    CHECK(msg.find('3') != std::string::npos);
  }
}

TEST_CASE("trace, adjoint and expectation") {
  std::mt19937_64 rng(7);
  const ComplexMatrix rho = oracle::random_density(5, rng);
  CHECK(std::abs(rho.trace() - Complex(1.0)) < 1e-14);
  CHECK(rho.is_hermitian(1e-14));
  CHECK(std::abs(expectation(ComplexMatrix::identity(5), rho) - Complex(1.0)) < 1e-14);
  ComplexMatrix m = oracle::random_hermitian(5, rng);
  m(0, 1) += Complex(0.0, 0.3);
  CHECK_FALSE(m.is_hermitian());
  m.hermitize();
  CHECK(m.is_hermitian());
}

TEST_CASE("hermitian eigenvalues agree with the Jacobi oracle") {
  std::mt19937_64 rng(42);
  for (std::size_t n : {1u, 2u, 3u, 7u, 16u, 33u}) {
    const ComplexMatrix h = oracle::random_hermitian(n, rng);
    const auto got = hermitian_eigenvalues(h);
    const auto want = oracle::jacobi_eigenvalues(h);
    REQUIRE(got.size() == n);
    for (std::size_t i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-10));
  }
}

TEST_CASE("eigenvalues of degenerate and diagonal matrices") {
  const double d[] = {3.0, -1.0, 3.0, 0.5};
  const auto ev = hermitian_eigenvalues(ComplexMatrix::diagonal(d));
  CHECK(ev == std::vector<double>{-1.0, 0.5, 3.0, 3.0});
  const auto zero = hermitian_eigenvalues(ComplexMatrix(3));
  for (double v : zero) CHECK(v == 0.0);
}

TEST_CASE("eigenvalues reject non-Hermitian input") {
  ComplexMatrix m{{1, 2}, {0, 1}};
  CHECK_THROWS_AS(hermitian_eigenvalues(m), Error);
}

TEST_CASE("density matrix spectra are non-negative and sum to one") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    const auto ev = hermitian_eigenvalues(oracle::random_density(6, rng));
    double s = 0.0;
    for (double v : ev) {
      CHECK(v > -1e-14);
      s += v;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("vector projector is a rank-one projector") {
  ComplexVector v{Complex(1, 1), Complex(0, 2), 3.0};
  v.normalize();
  CHECK(v.norm_squared() == doctest::Approx(1.0));
  const ComplexMatrix p = v.projector();
  CHECK(oracle::max_abs_diff(p * p, p) < 1e-14);
  CHECK(std::abs(p.trace() - Complex(1.0)) < 1e-14);
}
