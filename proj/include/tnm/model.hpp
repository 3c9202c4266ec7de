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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tnm/hilbert.hpp"
#include "tnm/linalg.hpp"

namespace tnm {

// Units throughout: hbar = 1, omega_R = 1. Times are in 1/omega_R, rates and
// frequencies in omega_R.

enum class Waveform {
  kSinusoid,   // F(t) = amplitude * sin(frequency * t)
  kMemristor,  // F(t) = amplitude * (1 - sin(cos(frequency * t)))
};

Waveform parse_waveform(std::string_view tag);
std::string_view to_string(Waveform w);

/// Omega_Q sin(mu_Q t) sum_j sigma_z,j
struct QubitDrive {
  double amplitude = 0.0;
  double frequency = 0.0;

  double coefficient(double t) const;
  friend bool operator==(const QubitDrive&, const QubitDrive&) = default;
};

/// F(t) (a + a^dagger)
struct CavityDrive {
  double amplitude = 0.0;
  double frequency = 0.0;
  Waveform waveform = Waveform::kMemristor;

  double value(double t) const;
  /// Period of F(t); the memristor waveform repeats with 2 pi / frequency.
  double period() const;
  friend bool operator==(const CavityDrive&, const CavityDrive&) = default;
};

struct ModelParams {
  double omega_r = 1.0;
  double omega_q = 1.0;
  double g = 0.05;
  double gamma_r = 0.005;
  double gamma_q = 0.005;
  std::optional<QubitDrive> drive_q;
  std::optional<CavityDrive> drive_c;
  /// Output offset rate for the memristor observable; defaults to gamma_r.
  std::optional<double> alpha;

  double alpha_or_default() const { return alpha.value_or(gamma_r); }
  double qubit_drive_coefficient(double t) const { return drive_q ? drive_q->coefficient(t) : 0.0; }
  double cavity_drive_value(double t) const { return drive_c ? drive_c->value(t) : 0.0; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Throws kInvalidArgument on negative rates or non-finite values.
void validate(const ModelParams& params);

/// Regime warnings (not errors): g/omega_R >= 0.1 or omega_Q far from omega_R.
std::vector<std::string> validity_warnings(const ModelParams& params);

/// Gamma(t) = A (sin(B t) + C); may be negative.
struct DecayRateModel {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double rate(double t) const;
  friend bool operator==(const DecayRateModel&, const DecayRateModel&) = default;
};

/// omega_R a^dag a + (omega_Q / 2) sum sigma_z + g sum (sigma-_j a^dag + sigma+_j a)
ComplexMatrix hamiltonian_tc(const ModelParams& params, const OperatorSet& ops);

/// H_TC + Omega_Q sin(mu_Q t) sum sigma_z + F(t) (a + a^dag)
ComplexMatrix hamiltonian_at(double t, const ModelParams& params, const OperatorSet& ops);

/// Dense reference Lindblad right-hand side,
///   -i[H(t), rho] + Gamma_R D[a] rho + Gamma_Q sum_j D[sigma-_j] rho.
/// Straight matrix algebra; the production path is LindbladKernel.
ComplexMatrix lindblad_rhs(double t, const ComplexMatrix& rho, const ModelParams& params,
                           const OperatorSet& ops);

/// Cavity-only right-hand side with a time-dependent (possibly negative) rate,
///   -i[omega_R a^dag a, rho] + Gamma(t) D[a] rho.
/// Throws kInvalidArgument if `ops` has qubits.
ComplexMatrix lindblad_rhs_tdecay(double t, const ComplexMatrix& rho, const DecayRateModel& decay,
                                  const ModelParams& params, const OperatorSet& ops);

/// D[O] rho = O rho O^dag - {O^dag O, rho} / 2
ComplexMatrix dissipator(const ComplexMatrix& op, const ComplexMatrix& rho);

}  // namespace tnm
