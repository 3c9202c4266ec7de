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

#include <span>
#include <string>
#include <vector>

#include "tnm/dynamics.hpp"
#include "tnm/hilbert.hpp"
#include "tnm/linalg.hpp"
#include "tnm/model.hpp"

namespace tnm {

/// (1/2) sum |lambda_i| over the eigenvalues of rho - sigma.
double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Trace distance between a reduced cavity state and the vacuum |0><0|, the
/// zero-temperature steady state.
double trace_distance_to_vacuum(const ComplexMatrix& rho_cavity);

struct DnmResult {
  double n_d = 0.0;
  std::vector<double> times;
  std::vector<double> d_series;
  /// Identical to n_d: the integral of the positive part of dD_S/dt.
  double zeta_positive_mass = 0.0;
  /// Number of increments that were positive.
  std::size_t positive_increments = 0;
  bool reached_steady = false;
};

/// Dynamical non-Markovianity of a sampled trace-distance curve: the sum of
/// the positive increments max(0, D_{k+1} - D_k). Needs at least 2 samples.
DnmResult dnm(std::span<const double> times, std::span<const double> d_series,
              bool reached_steady = false);

/// Positive-increment mass restricted to samples [begin, end).
double positive_increment_mass(std::span<const double> d_series, std::size_t begin,
                               std::size_t end, double threshold = 0.0,
                               std::size_t* count = nullptr);

struct MemristorRecord {
  double t = 0.0;
  /// I = <i (a - a^dag)> = -2 Im<a>
  double input = 0.0;
  /// O = d<N>/dt + alpha <N>
  double output = 0.0;
  double f_value = 0.0;
  /// G = sum_j g <i (sigma+_j a - sigma-_j a^dag)>, the qubit-exchange part of d<N>/dt
  double g_value = 0.0;
  double photon_number = 0.0;
  double photon_rate = 0.0;
  double alpha = 0.0;

  /// O - F I - G; vanishes identically for the full model.
  double residual() const { return output - f_value * input - g_value; }
};

/// Precomputed operators for evaluating memristor records on one layout.
class MemristorProbe {
 public:
  MemristorProbe(const ModelParams& params, const OperatorSet& ops);
  /// `rhs_value` must be the master-equation right-hand side at (t, rho).
  MemristorRecord evaluate(double t, const ComplexMatrix& rho, const ComplexMatrix& rhs_value) const;

 private:
  ModelParams params_;
  ComplexMatrix input_op_;
  ComplexMatrix exchange_op_;
  std::vector<double> photons_;  // diagonal of a^dag a
};

MemristorRecord memristor_observables(const ComplexMatrix& rho, const ComplexMatrix& rhs_value,
                                      const ModelParams& params, const OperatorSet& ops, double t);

/// Records N, D_S, trace, purity, min_eigenvalue and top_fock (all on the
/// reduced cavity state except trace and purity).
class CavityObserver final : public Observer {
 public:
  explicit CavityObserver(const SystemLayout& layout) : layout_(layout) {}
  std::vector<std::string> names() const override;
  void observe(double t, const ComplexMatrix& rho, const ComplexMatrix* rhs,
               std::vector<double>& values) const override;

 private:
  const SystemLayout& layout_;
};

/// Records I, O, F, G, Ndot and residual at each sample.
class MemristorObserver final : public Observer {
 public:
  MemristorObserver(const ModelParams& params, const OperatorSet& ops) : probe_(params, ops) {}
  std::vector<std::string> names() const override;
  bool needs_rhs() const override { return true; }
  void observe(double t, const ComplexMatrix& rho, const ComplexMatrix* rhs,
               std::vector<double>& values) const override;

 private:
  MemristorProbe probe_;
};

}  // namespace tnm
