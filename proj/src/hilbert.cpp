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

#include "tnm/hilbert.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "tnm/error.hpp"

namespace tnm {

namespace {

constexpr int kMaxQubits = 20;

// Applies `fn(state) -> optional<(target, coefficient)>` to every kept basis
// state and stores the image in a matrix, dropping images outside the basis.
template <typename Fn>
ComplexMatrix embed(const SystemLayout& layout, Fn&& fn) {
  ComplexMatrix out(layout.dim());
  const auto basis = layout.basis();
  for (std::size_t col = 0; col < basis.size(); ++col) {
    if (auto image = fn(basis[col])) {
      if (auto row = layout.index_of(image->first)) out(*row, col) += image->second;
    }
  }
  return out;
}

struct Image {
  BasisState first;
  double second;
};

}  // namespace

SystemLayout::SystemLayout(int n_qubits, int fock_dim, std::optional<int> max_excitations,
                           std::size_t dim_cap)
    : n_qubits_(n_qubits), fock_dim_(fock_dim), max_excitations_(max_excitations) {
  if (n_qubits < 0 || n_qubits > kMaxQubits) {
    throw Error(ErrorCode::kInvalidArgument,
                "n_qubits must be in [0, " + std::to_string(kMaxQubits) + "], got " +
                    std::to_string(n_qubits));
  }
  if (fock_dim < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "fock_dim must be >= 2, got " + std::to_string(fock_dim));
  }
  if (max_excitations && *max_excitations < 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_excitations must be non-negative");
  }
  const std::size_t qdim = std::size_t{1} << n_qubits;
  product_dim_ = static_cast<std::size_t>(fock_dim) * qdim;

  kept_index_.assign(product_dim_, -1);
  by_qubit_config_.assign(qdim, {});
  for (int m = 0; m < fock_dim; ++m) {
    for (std::uint32_t q = 0; q < qdim; ++q) {
      const BasisState s{m, q};
      if (max_excitations_ && excitations(s, n_qubits_) > *max_excitations_) continue;
      kept_index_[product_index(s)] = static_cast<std::ptrdiff_t>(basis_.size());
      by_qubit_config_[q].emplace_back(m, basis_.size());
      basis_.push_back(s);
    }
  }
  if (basis_.size() > dim_cap) {
    std::ostringstream msg;
    msg << "layout (n_qubits=" << n_qubits << ", fock_dim=" << fock_dim << ") has dimension "
        << basis_.size() << " above the cap " << dim_cap
        << "; reduce fock_dim or n_qubits, or set an excitation cap";
    throw Error(ErrorCode::kCapacityExceeded, msg.str());
  }
}

std::size_t SystemLayout::product_index(const BasisState& s) const {
  return static_cast<std::size_t>(s.photons) * (std::size_t{1} << n_qubits_) + s.ground_mask;
}

std::optional<std::size_t> SystemLayout::index_of(const BasisState& s) const {
  if (s.photons < 0 || s.photons >= fock_dim_) return std::nullopt;
  const auto k = kept_index_[product_index(s)];
  if (k < 0) return std::nullopt;
  return static_cast<std::size_t>(k);
}

int SystemLayout::excitations(const BasisState& s, int n_qubits) {
  const std::uint32_t all = n_qubits == 0 ? 0u : ((1u << n_qubits) - 1u);
  const std::uint32_t excited = ~s.ground_mask & all;
  return s.photons + std::popcount(excited);
}

OperatorSet build_operators(const SystemLayout& layout) {
  const int n = layout.n_qubits();
  OperatorSet ops;
  ops.identity = ComplexMatrix::identity(layout.dim());
  ops.a = embed(layout, [](const BasisState& s) -> std::optional<Image> {
    if (s.photons == 0) return std::nullopt;
    return Image{{s.photons - 1, s.ground_mask}, std::sqrt(static_cast<double>(s.photons))};
  });
  ops.a_dag = ops.a.adjoint();
  ops.number_op = embed(layout, [](const BasisState& s) -> std::optional<Image> {
    return Image{s, static_cast<double>(s.photons)};
  });
  for (int j = 1; j <= n; ++j) {
    const std::uint32_t bit = 1u << (n - j);
    ops.sigma_minus.push_back(embed(layout, [bit](const BasisState& s) -> std::optional<Image> {
      if (s.ground_mask & bit) return std::nullopt;
      return Image{{s.photons, s.ground_mask | bit}, 1.0};
    }));
    ops.sigma_plus.push_back(ops.sigma_minus.back().adjoint());
    ops.sigma_z.push_back(embed(layout, [bit](const BasisState& s) -> std::optional<Image> {
      return Image{s, (s.ground_mask & bit) ? -1.0 : 1.0};
    }));
    const int fock = layout.fock_dim();
    ops.exchange.push_back(embed(layout, [bit, fock](const BasisState& s) -> std::optional<Image> {
      if ((s.ground_mask & bit) || s.photons + 1 >= fock) return std::nullopt;
      return Image{{s.photons + 1, s.ground_mask | bit}, std::sqrt(static_cast<double>(s.photons + 1))};
    }));
  }
  return ops;
}

ComplexMatrix excitation_operator(const OperatorSet& ops) {
  ComplexMatrix n_exc = ops.number_op;
  for (std::size_t j = 0; j < ops.sigma_minus.size(); ++j) {
    n_exc += matmul(ops.sigma_plus[j], ops.sigma_minus[j]);
  }
  return n_exc;
}

ComplexMatrix basis_state(const SystemLayout& layout, int cavity_excitation,
                          std::span<const QubitLevel> qubit_levels) {
  if (cavity_excitation < 0 || cavity_excitation >= layout.fock_dim()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cavity excitation " + std::to_string(cavity_excitation) +
                    " outside the truncation [0, " + std::to_string(layout.fock_dim() - 1) + "]");
  }
  if (static_cast<int>(qubit_levels.size()) != layout.n_qubits()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(layout.n_qubits()) + " qubit levels, got " +
                    std::to_string(qubit_levels.size()));
  }
  BasisState s{cavity_excitation, 0};
  const int n = layout.n_qubits();
  for (int j = 1; j <= n; ++j) {
    if (qubit_levels[j - 1] == QubitLevel::kGround) s.ground_mask |= 1u << (n - j);
  }
  const auto idx = layout.index_of(s);
  if (!idx) {
    throw Error(ErrorCode::kInvalidArgument,
                "basis state exceeds the layout's excitation cap of " +
                    std::to_string(*layout.max_excitations()));
  }
  ComplexMatrix rho(layout.dim());
  rho(*idx, *idx) = 1.0;
  return rho;
}

ComplexMatrix cavity_fock_with_ground_qubits(const SystemLayout& layout, int cavity_excitation) {
  const std::vector<QubitLevel> ground(layout.n_qubits(), QubitLevel::kGround);
  return basis_state(layout, cavity_excitation, ground);
}

ComplexMatrix partial_trace_qubits(const ComplexMatrix& rho, const SystemLayout& layout) {
  if (rho.dim() != layout.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "partial trace: state is " + std::to_string(rho.dim()) + "-dimensional, layout is " +
                    std::to_string(layout.dim()));
  }
  ComplexMatrix reduced(layout.fock_dim());
  for (const auto& group : layout.by_qubit_config()) {
    for (const auto& [m, i] : group) {
      for (const auto& [mp, j] : group) reduced(m, mp) += rho(i, j);
    }
  }
  return reduced;
}

}  // namespace tnm
