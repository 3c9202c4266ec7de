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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tnm {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. Carrier for density matrices,
/// Hamiltonians and every embedded operator.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t dim) { return ComplexMatrix(dim); }
  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return data_.size(); }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * dim_ + j];
  }

  Complex* data() noexcept { return data_.data(); }
  const Complex* data() const noexcept { return data_.data(); }
  std::span<Complex> entries() noexcept { return data_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  Complex trace() const;
  ComplexMatrix adjoint() const;
  /// max_ij |M_ij - conj(M_ji)|
  double max_asymmetry() const;
  bool is_hermitian(double tol = 1e-12) const { return max_asymmetry() < tol; }
  /// Replaces M with (M + M^dagger) / 2.
  void hermitize();
  double max_abs() const;
  void set_zero();

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Pure state amplitudes.
class ComplexVector {
 public:
  explicit ComplexVector(std::size_t dim) : data_(dim) {}
  ComplexVector(std::initializer_list<Complex> values) : data_(values) {}

  std::size_t dim() const noexcept { return data_.size(); }
  Complex& operator[](std::size_t i) noexcept { return data_[i]; }
  const Complex& operator[](std::size_t i) const noexcept { return data_[i]; }
  std::span<const Complex> entries() const noexcept { return data_; }

  double norm_squared() const;
  void normalize();
  /// |v><v|
  ComplexMatrix projector() const;

 private:
  std::vector<Complex> data_;
};

/// Exact dense product. Throws kDimensionMismatch naming both dims.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product, (A (x) B)[i*Bd + k][j*Bd + l] = A[i][j] B[k][l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr[M rho], computed without forming the product.
Complex expectation(const ComplexMatrix& m, const ComplexMatrix& rho);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// The input is symmetrized first; asymmetry above `tolerance` is rejected
/// with kNotHermitian. Householder reduction to a complex Hermitian
/// tridiagonal, a diagonal phase similarity to make it real, then implicit
/// QL with Wilkinson shifts.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tolerance = 1e-10);

}  // namespace tnm
