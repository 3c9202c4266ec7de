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

#include "tnm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tnm/error.hpp"

namespace tnm {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << op << ": left operand is " << a.dim() << "x" << a.dim() << ", right operand is "
        << b.dim() << "x" << b.dim();
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
}

// Symmetric tridiagonal eigenvalues by implicit QL. `off[i]` couples i and i+1;
// off[n-1] is unused.
void tridiagonal_ql(std::vector<double>& diag, std::vector<double>& off) {
  const int n = static_cast<int>(diag.size());
  if (n == 0) return;
  off[n - 1] = 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(off[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 100) {
          throw Error(ErrorCode::kInvalidArgument, "tridiagonal QL failed to converge");
        }
        double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
        double r = std::hypot(g, 1.0);
        g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * off[i];
          const double b = c * off[i];
          r = std::hypot(f, g);
          off[i + 1] = r;
          if (r == 0.0) {
            diag[i + 1] -= p;
            off[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = diag[i + 1] - p;
          r = (diag[i] - g) * s + 2.0 * c * b;
          p = s * r;
          diag[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        diag[l] -= p;
        off[l] = g;
        off[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()), data_() {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) {
      throw Error(ErrorCode::kDimensionMismatch, "matrix literal is not square");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

double ComplexMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
  }
  return worst;
}

void ComplexMatrix::hermitize() {
  for (std::size_t i = 0; i < dim_; ++i) {
    (*this)(i, i) = Complex((*this)(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const Complex avg = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
      (*this)(i, j) = avg;
      (*this)(j, i) = std::conj(avg);
    }
  }
}

double ComplexMatrix::max_abs() const {
  double worst = 0.0;
  for (const auto& z : data_) worst = std::max(worst, std::abs(z));
  return worst;
}

void ComplexMatrix::set_zero() { std::fill(data_.begin(), data_.end(), Complex{}); }

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "add");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "subtract");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

double ComplexVector::norm_squared() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return s;
}

void ComplexVector::normalize() {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) throw Error(ErrorCode::kInvalidArgument, "cannot normalize the zero vector");
  for (auto& z : data_) z /= n;
}

ComplexMatrix ComplexVector::projector() const {
  ComplexMatrix p(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) p(i, j) = data_[i] * std::conj(data_[j]);
  }
  return p;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "matmul");
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex* crow = c.data() + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      const Complex* brow = b.data() + k * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t ad = a.dim();
  const std::size_t bd = b.dim();
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  if (bd != 0 && ad > kMax / bd) {
    throw Error(ErrorCode::kCapacityExceeded, "kron: dimension product overflows");
  }
  const std::size_t n = ad * bd;
  if (n != 0 && n > kMax / n / sizeof(Complex)) {
    std::ostringstream msg;
    msg << "kron: " << ad << " x " << bd << " = " << n << " has too many entries to store";
    throw Error(ErrorCode::kCapacityExceeded, msg.str());
  }
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < ad; ++i) {
    for (std::size_t j = 0; j < ad; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < bd; ++k) {
        for (std::size_t l = 0; l < bd; ++l) out(i * bd + k, j * bd + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b) - matmul(b, a);
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b) + matmul(b, a);
}

Complex expectation(const ComplexMatrix& m, const ComplexMatrix& rho) {
  require_same_dim(m, rho, "expectation");
  const std::size_t n = m.dim();
  Complex acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * rho(j, i);
  }
  return acc;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "frobenius_distance");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::norm(a.data()[k] - b.data()[k]);
  return std::sqrt(s);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tolerance) {
  const double asym = m.max_asymmetry();
  if (asym > tolerance) {
    std::ostringstream msg;
    msg << "max |M_ij - conj(M_ji)| = " << asym << " exceeds " << tolerance;
    throw Error(ErrorCode::kNotHermitian, msg.str());
  }
  const std::size_t n = m.dim();
  ComplexMatrix a = m;
  a.hermitize();

  // Householder: zero column k below the subdiagonal.
  std::vector<Complex> v(n);
  std::vector<Complex> p(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
    const double xnorm = std::sqrt(xnorm2);
    double tail = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(a(i, k));
    if (tail == 0.0) continue;

    const Complex x0 = a(k + 1, k);
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
    std::fill(v.begin(), v.end(), Complex{});
    v[k + 1] = x0 + phase * xnorm;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    const double vnorm = std::sqrt(vnorm2);
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;

    // A <- A - 2 v q^H - 2 q v^H with p = A v, K = v^H p, q = p - K v.
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
      p[i] = s;
    }
    Complex kk = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) kk += std::conj(v[i]) * p[i];
    for (std::size_t i = 0; i < n; ++i) p[i] -= kk.real() * v[i];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= 2.0 * (v[i] * std::conj(p[j]) + p[i] * std::conj(v[j]));
      }
    }
  }

  std::vector<double> diag(n);
  std::vector<double> off(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  // A diagonal unitary maps each complex subdiagonal entry to its modulus.
  for (std::size_t i = 0; i + 1 < n; ++i) off[i] = std::abs(a(i + 1, i));
  tridiagonal_ql(diag, off);
  std::sort(diag.begin(), diag.end());
  return diag;
}

}  // namespace tnm
