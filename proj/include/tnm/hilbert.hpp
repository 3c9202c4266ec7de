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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tnm/linalg.hpp"

namespace tnm {

enum class QubitLevel { kExcited, kGround };

/// One product-basis state: cavity photon number and a bitmask over qubits
/// (bit set = ground, so |e> sorts before |g> within each factor).
struct BasisState {
  int photons = 0;
  std::uint32_t ground_mask = 0;
};

/// Cavity Fock truncation (x) n qubits.
///
/// Tensor order is cavity first, then qubit 1..n; qubit j is bit (n - j) of the
/// qubit index so qubit 1 is the most significant. The full product dimension
/// is fock_dim * 2^n_qubits. An optional cap on the total excitation number
/// (photons + excited qubits) keeps only the product states at or below it;
/// this is exact whenever the dynamics never raise the excitation number above
/// the cap (Tavis-Cummings with sigma_z driving and zero-temperature decay).
class SystemLayout {
 public:
  static constexpr std::size_t kDefaultDimCap = 4096;

  SystemLayout(int n_qubits, int fock_dim, std::optional<int> max_excitations = std::nullopt,
               std::size_t dim_cap = kDefaultDimCap);

  int n_qubits() const noexcept { return n_qubits_; }
  int fock_dim() const noexcept { return fock_dim_; }
  std::optional<int> max_excitations() const noexcept { return max_excitations_; }
  std::size_t product_dim() const noexcept { return product_dim_; }
  /// Dimension of the kept basis (equals product_dim without a cap).
  std::size_t dim() const noexcept { return basis_.size(); }
  bool truncated() const noexcept { return basis_.size() != product_dim_; }

  std::span<const BasisState> basis() const noexcept { return basis_; }
  std::size_t product_index(const BasisState& s) const;
  /// Index in the kept basis, or nullopt if the state was cut.
  std::optional<std::size_t> index_of(const BasisState& s) const;
  static int excitations(const BasisState& s, int n_qubits);

  /// Kept basis indices grouped by qubit configuration; each entry is
  /// (photon number, kept index). Drives the partial trace.
  const std::vector<std::vector<std::pair<int, std::size_t>>>& by_qubit_config() const noexcept {
    return by_qubit_config_;
  }

  friend bool operator==(const SystemLayout& a, const SystemLayout& b) {
    return a.n_qubits_ == b.n_qubits_ && a.fock_dim_ == b.fock_dim_ &&
           a.max_excitations_ == b.max_excitations_;
  }

 private:
  int n_qubits_;
  int fock_dim_;
  std::optional<int> max_excitations_;
  std::size_t product_dim_;
  std::vector<BasisState> basis_;
  std::vector<std::ptrdiff_t> kept_index_;  // product index -> kept index or -1
  std::vector<std::vector<std::pair<int, std::size_t>>> by_qubit_config_;
};

/// Operators embedded in the layout's (kept) basis.
///
/// On an excitation-capped layout a product of embedded operators is exact
/// only if no intermediate state leaves the kept basis, i.e. lowering before
/// raising. The exchange term sigma-_j a^dag raises first, so it is embedded
/// directly in `exchange`.
struct OperatorSet {
  ComplexMatrix a;
  ComplexMatrix a_dag;
  ComplexMatrix number_op;
  std::vector<ComplexMatrix> sigma_minus;
  std::vector<ComplexMatrix> sigma_plus;
  std::vector<ComplexMatrix> sigma_z;
  /// sigma-_j a^dag
  std::vector<ComplexMatrix> exchange;
  ComplexMatrix identity;

  int n_qubits() const noexcept { return static_cast<int>(sigma_z.size()); }
  std::size_t dim() const noexcept { return identity.dim(); }
};

OperatorSet build_operators(const SystemLayout& layout);

/// a^dagger a + sum_j sigma+_j sigma-_j
ComplexMatrix excitation_operator(const OperatorSet& ops);

/// |m, q_1 ... q_n><m, q_1 ... q_n|
ComplexMatrix basis_state(const SystemLayout& layout, int cavity_excitation,
                          std::span<const QubitLevel> qubit_levels);

/// |m> (x) |g>^n, the initial condition used throughout the experiments.
ComplexMatrix cavity_fock_with_ground_qubits(const SystemLayout& layout, int cavity_excitation);

/// rho_R = Tr_Q rho, a fock_dim x fock_dim matrix.
ComplexMatrix partial_trace_qubits(const ComplexMatrix& rho, const SystemLayout& layout);

}  // namespace tnm
