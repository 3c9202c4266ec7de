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

#include <cstddef>
#include <optional>
#include <vector>

#include "tnm/hilbert.hpp"
#include "tnm/linalg.hpp"
#include "tnm/model.hpp"

namespace tnm {

/// d rho / dt = L(t) rho for some generator L.
class RightHandSide {
 public:
  virtual ~RightHandSide() = default;
  virtual std::size_t dim() const = 0;
  /// Writes L(t) rho into `out` (resized by the caller to dim()).
  virtual void evaluate(double t, const ComplexMatrix& rho, ComplexMatrix& out) const = 0;
  /// False when some decay rate can go negative, so positivity is not guaranteed.
  virtual bool completely_positive() const = 0;
};

/// Compressed-row operator; only used inside the kernel.
struct SparseRows {
  std::vector<std::size_t> offsets;  // size dim + 1
  std::vector<std::size_t> cols;
  std::vector<Complex> values;

  static SparseRows from_dense(const ComplexMatrix& m);
  std::size_t dim() const noexcept { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::size_t nonzeros() const noexcept { return values.size(); }
};

/// Production Lindblad generator.
///
/// Operators are compiled once into compressed rows and the commutator plus
/// anticommutator are folded into a non-Hermitian effective Hamiltonian:
///   W = -i H_eff rho,   H_eff = H(t) - (i/2) sum_k gamma_k O_k^dag O_k
///   L rho = W + W^dag + sum_k gamma_k O_k rho O_k^dag.
/// This needs rho Hermitian, which every caller guarantees. Row loops run
/// under OpenMP when dim >= kParallelMinDim; nested calls from sweep workers
/// stay serial because nested parallelism is off.
class LindbladKernel final : public RightHandSide {
 public:
  static constexpr std::size_t kParallelMinDim = 96;

  /// Full model: H_TC with optional qubit and cavity drives, Gamma_R D[a],
  /// Gamma_Q D[sigma-_j].
  static LindbladKernel full_model(const ModelParams& params, const OperatorSet& ops);
  /// Cavity-only model with Gamma(t) D[a]; rejects layouts with qubits.
  static LindbladKernel decay_model(const DecayRateModel& decay, const ModelParams& params,
                                    const OperatorSet& ops);

  std::size_t dim() const override { return dim_; }
  void evaluate(double t, const ComplexMatrix& rho, ComplexMatrix& out) const override {
    evaluate_impl<true>(t, rho, out);
  }
  /// Same arithmetic with the OpenMP loops disabled.
  void evaluate_serial(double t, const ComplexMatrix& rho, ComplexMatrix& out) const {
    evaluate_impl<false>(t, rho, out);
  }
  bool completely_positive() const override;

  const ModelParams& params() const noexcept { return params_; }

 private:
  struct Channel {
    SparseRows op;
    double rate = 0.0;
    bool scaled_by_decay = false;
  };

  LindbladKernel() = default;
  template <bool kParallel>
  void evaluate_impl(double t, const ComplexMatrix& rho, ComplexMatrix& out) const;

  std::size_t dim_ = 0;
  ModelParams params_;
  std::optional<DecayRateModel> decay_;
  SparseRows h_static_;
  std::vector<double> z_sum_;  // diagonal of sum_j sigma_z,j
  SparseRows drive_x_;         // a + a^dag
  SparseRows damping_const_;   // sum of constant-rate gamma O^dag O
  SparseRows damping_decay_;   // O^dag O for decay-scaled channels
  std::vector<Channel> channels_;
};

/// Wraps the dense reference lindblad_rhs for testing and benchmarks.
class ReferenceRhs final : public RightHandSide {
 public:
  ReferenceRhs(ModelParams params, const OperatorSet& ops) : params_(params), ops_(ops) {}
  std::size_t dim() const override { return ops_.dim(); }
  void evaluate(double t, const ComplexMatrix& rho, ComplexMatrix& out) const override {
    out = lindblad_rhs(t, rho, params_, ops_);
  }
  bool completely_positive() const override { return true; }

 private:
  ModelParams params_;
  const OperatorSet& ops_;
};

}  // namespace tnm
