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

// Test-side reference implementations. Deliberately simple and independent of
// the library's algorithms.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "tnm/linalg.hpp"

namespace oracle {

// Eigenvalues of a Hermitian matrix via cyclic Jacobi on the real symmetric
// embedding [[Re, -Im], [Im, Re]]; each eigenvalue appears twice there.
inline std::vector<double> jacobi_eigenvalues(const tnm::ComplexMatrix& h) {
  const std::size_t n = h.dim(), m = 2 * n;
  std::vector<double> a(m * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto z = h(i, j);
      a[i * m + j] = z.real();
      a[(i + n) * m + (j + n)] = z.real();
      a[(i + n) * m + j] = z.imag();
      a[i * m + (j + n)] = -z.imag();
    }
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) off += a[p * m + q] * a[p * m + q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = a[p * m + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = a[k * m + p], akq = a[k * m + q];
          a[k * m + p] = c * akp - s * akq;
          a[k * m + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = a[p * m + k], aqk = a[q * m + k];
          a[p * m + k] = c * apk - s * aqk;
          a[q * m + k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> all(m);
  for (std::size_t i = 0; i < m; ++i) all[i] = a[i * m + i];
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < m; i += 2) out.push_back(0.5 * (all[i] + all[i + 1]));
  return out;
}

inline tnm::ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  tnm::ComplexMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = d(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = {d(rng), d(rng)};
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

// Random density matrix G G^dag / Tr, full rank with probability one.
inline tnm::ComplexMatrix random_density(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  tnm::ComplexMatrix g(n), rho(n);
  for (auto& z : g.entries()) z = {d(rng), d(rng)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::complex<double> s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += g(i, k) * std::conj(g(j, k));
      rho(i, j) = s;
    }
  std::complex<double> tr = 0.0;
  for (std::size_t i = 0; i < n; ++i) tr += rho(i, i);
  for (auto& z : rho.entries()) z /= tr.real();
  return rho;
}

// Partial trace over the trailing factor of dimension `rest` by index sums.
inline tnm::ComplexMatrix trace_out_trailing(const tnm::ComplexMatrix& rho, std::size_t lead, std::size_t rest) {
  tnm::ComplexMatrix out(lead);
  for (std::size_t m = 0; m < lead; ++m)
    for (std::size_t k = 0; k < lead; ++k) {
      std::complex<double> s = 0.0;
      for (std::size_t q = 0; q < rest; ++q) s += rho(m * rest + q, k * rest + q);
      out(m, k) = s;
    }
  return out;
}

inline double max_abs_diff(const tnm::ComplexMatrix& a, const tnm::ComplexMatrix& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) e = std::max(e, std::abs(a.entries()[i] - b.entries()[i]));
  return e;
}

}  // namespace oracle
