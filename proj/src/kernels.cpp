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

#include "tnm/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "tnm/error.hpp"

namespace tnm {

namespace {

constexpr Complex kMinusI{0.0, -1.0};

void accumulate_row(const SparseRows& m, std::size_t i, Complex scale, const ComplexMatrix& rho,
                    Complex* out_row) {
  const std::size_t n = rho.dim();
  for (std::size_t p = m.offsets[i]; p < m.offsets[i + 1]; ++p) {
    const Complex c = scale * m.values[p];
    const Complex* src = rho.data() + m.cols[p] * n;
    for (std::size_t j = 0; j < n; ++j) out_row[j] += c * src[j];
  }
}

// Small systems skip the OpenMP runtime entirely.
template <typename Fn>
void for_rows(std::size_t n, bool parallel, Fn&& fn) {
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) fn(i);
  } else {
    for (std::size_t i = 0; i < n; ++i) fn(i);
  }
}

}  // namespace

SparseRows SparseRows::from_dense(const ComplexMatrix& m) {
  SparseRows s;
  s.offsets.reserve(m.dim() + 1);
  s.offsets.push_back(0);
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (m(i, j) != Complex{}) {
        s.cols.push_back(j);
        s.values.push_back(m(i, j));
      }
    }
    s.offsets.push_back(s.cols.size());
  }
  return s;
}

LindbladKernel LindbladKernel::full_model(const ModelParams& params, const OperatorSet& ops) {
  validate(params);
  LindbladKernel k;
  k.dim_ = ops.dim();
  k.params_ = params;
  k.h_static_ = SparseRows::from_dense(hamiltonian_tc(params, ops));
  k.z_sum_.assign(k.dim_, 0.0);
  for (const auto& sz : ops.sigma_z) {
    for (std::size_t i = 0; i < k.dim_; ++i) k.z_sum_[i] += sz(i, i).real();
  }
  k.drive_x_ = SparseRows::from_dense(ops.a + ops.a_dag);

  ComplexMatrix damping(k.dim_);
  if (params.gamma_r != 0.0) {
    k.channels_.push_back({SparseRows::from_dense(ops.a), params.gamma_r, false});
    damping += Complex(params.gamma_r) * ops.number_op;
  }
  if (params.gamma_q != 0.0) {
    for (std::size_t j = 0; j < ops.sigma_minus.size(); ++j) {
      k.channels_.push_back({SparseRows::from_dense(ops.sigma_minus[j]), params.gamma_q, false});
      damping += Complex(params.gamma_q) * matmul(ops.sigma_plus[j], ops.sigma_minus[j]);
    }
  }
  k.damping_const_ = SparseRows::from_dense(damping);
  k.damping_decay_ = SparseRows::from_dense(ComplexMatrix(k.dim_));
  return k;
}

LindbladKernel LindbladKernel::decay_model(const DecayRateModel& decay, const ModelParams& params,
                                           const OperatorSet& ops) {
  if (ops.n_qubits() != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "time-dependent decay model is cavity-only; layout has " +
                    std::to_string(ops.n_qubits()) + " qubits");
  }
  LindbladKernel k;
  k.dim_ = ops.dim();
  k.params_ = params;
  k.params_.drive_q.reset();
  k.params_.drive_c.reset();
  k.decay_ = decay;
  k.h_static_ = SparseRows::from_dense(Complex(params.omega_r) * ops.number_op);
  k.z_sum_.assign(k.dim_, 0.0);
  k.drive_x_ = SparseRows::from_dense(ComplexMatrix(k.dim_));
  k.channels_.push_back({SparseRows::from_dense(ops.a), 1.0, true});
  k.damping_const_ = SparseRows::from_dense(ComplexMatrix(k.dim_));
  k.damping_decay_ = SparseRows::from_dense(ops.number_op);
  return k;
}

bool LindbladKernel::completely_positive() const {
  if (!decay_) return true;
  return decay_->a == 0.0 || decay_->c >= 1.0;
}

template <bool kParallel>
void LindbladKernel::evaluate_impl(double t, const ComplexMatrix& rho, ComplexMatrix& out) const {
  if (rho.dim() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "kernel is " + std::to_string(dim_) + "-dimensional, state is " +
                    std::to_string(rho.dim()));
  }
  if (out.dim() != dim_) out = ComplexMatrix(dim_);
  const std::size_t n = dim_;
  const double qubit_coeff = params_.qubit_drive_coefficient(t);
  const double cavity_coeff = params_.cavity_drive_value(t);
  const double decay_rate = decay_ ? decay_->rate(t) : 0.0;
  const bool parallel = kParallel && n >= kParallelMinDim;

  // W = -i H_eff rho, row by row.
  for_rows(n, parallel, [&](std::size_t i) {
    Complex* row = out.data() + i * n;
    std::fill(row, row + n, Complex{});
    accumulate_row(h_static_, i, 1.0, rho, row);
    if (qubit_coeff != 0.0 && z_sum_[i] != 0.0) {
      const Complex c = qubit_coeff * z_sum_[i];
      const Complex* src = rho.data() + i * n;
      for (std::size_t j = 0; j < n; ++j) row[j] += c * src[j];
    }
    if (cavity_coeff != 0.0) accumulate_row(drive_x_, i, cavity_coeff, rho, row);
    accumulate_row(damping_const_, i, Complex(0.0, -0.5), rho, row);
    if (decay_rate != 0.0) {
      accumulate_row(damping_decay_, i, Complex(0.0, -0.5 * decay_rate), rho, row);
    }
    for (std::size_t j = 0; j < n; ++j) row[j] *= kMinusI;
  });

  // out = W + W^dag in place; pair (i, j) belongs to row min(i, j).
  for_rows(n, parallel, [&](std::size_t i) {
    out(i, i) = Complex(2.0 * out(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex upper = out(i, j);
      const Complex lower = out(j, i);
      out(i, j) = upper + std::conj(lower);
      out(j, i) = lower + std::conj(upper);
    }
  });

  // Jump terms gamma O rho O^dag.
  for (const auto& ch : channels_) {
    const double rate = ch.scaled_by_decay ? ch.rate * decay_rate : ch.rate;
    if (rate == 0.0) continue;
    const SparseRows& op = ch.op;
    for_rows(n, parallel, [&](std::size_t i) {
      Complex* row = out.data() + i * n;
      for (std::size_t p = op.offsets[i]; p < op.offsets[i + 1]; ++p) {
        const Complex left = rate * op.values[p];
        const Complex* rho_row = rho.data() + op.cols[p] * n;
        for (std::size_t j = 0; j < n; ++j) {
          Complex acc{};
          for (std::size_t q = op.offsets[j]; q < op.offsets[j + 1]; ++q) {
            acc += rho_row[op.cols[q]] * std::conj(op.values[q]);
          }
          row[j] += left * acc;
        }
      }
    });
  }
}

template void LindbladKernel::evaluate_impl<true>(double, const ComplexMatrix&, ComplexMatrix&) const;
template void LindbladKernel::evaluate_impl<false>(double, const ComplexMatrix&, ComplexMatrix&) const;

}  // namespace tnm
