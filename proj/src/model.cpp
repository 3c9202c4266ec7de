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

#include "tnm/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tnm/error.hpp"

namespace tnm {

Waveform parse_waveform(std::string_view tag) {
  if (tag == "sinusoid") return Waveform::kSinusoid;
  if (tag == "memristor") return Waveform::kMemristor;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown waveform '" + std::string(tag) + "' (expected sinusoid or memristor)");
}

std::string_view to_string(Waveform w) {
  return w == Waveform::kSinusoid ? "sinusoid" : "memristor";
}

double QubitDrive::coefficient(double t) const { return amplitude * std::sin(frequency * t); }

double CavityDrive::value(double t) const {
  switch (waveform) {
    case Waveform::kSinusoid: return amplitude * std::sin(frequency * t);
    case Waveform::kMemristor: return amplitude * (1.0 - std::sin(std::cos(frequency * t)));
  }
  return 0.0;
}

double CavityDrive::period() const {
  if (frequency <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "cavity drive period needs a positive frequency");
  }
  return 2.0 * std::numbers::pi / frequency;
}

double DecayRateModel::rate(double t) const { return a * (std::sin(b * t) + c); }

void validate(const ModelParams& p) {
  const double values[] = {p.omega_r, p.omega_q, p.g, p.gamma_r, p.gamma_q};
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "model parameter is not finite");
  }
  if (p.gamma_r < 0.0 || p.gamma_q < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "decay rates must be non-negative");
  }
  if (p.alpha && *p.alpha < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be non-negative");
  }
  if (p.omega_r <= 0.0) throw Error(ErrorCode::kInvalidArgument, "omega_r must be positive");
}

std::vector<std::string> validity_warnings(const ModelParams& p) {
  std::vector<std::string> out;
  const double ratio = p.g / p.omega_r;
  if (ratio >= 0.1) {
    std::ostringstream msg;
    msg << "g/omega_R = " << ratio << " is outside the weak-coupling regime g/omega_R < 0.1";
    out.push_back(msg.str());
  }
  const double detuning = std::abs(p.omega_q / p.omega_r - 1.0);
  if (detuning > 0.5) {
    std::ostringstream msg;
    msg << "omega_Q/omega_R = " << p.omega_q / p.omega_r
        << " is far from 1; the rotating-wave coupling may not hold";
    out.push_back(msg.str());
  }
  return out;
}

ComplexMatrix hamiltonian_tc(const ModelParams& p, const OperatorSet& ops) {
  ComplexMatrix h = Complex(p.omega_r) * ops.number_op;
  for (int j = 0; j < ops.n_qubits(); ++j) {
    h += Complex(0.5 * p.omega_q) * ops.sigma_z[j];
    h += Complex(p.g) * (ops.exchange[j] + ops.exchange[j].adjoint());
  }
  return h;
}

ComplexMatrix hamiltonian_at(double t, const ModelParams& p, const OperatorSet& ops) {
  ComplexMatrix h = hamiltonian_tc(p, ops);
  if (p.drive_q) {
    const double c = p.drive_q->coefficient(t);
    for (const auto& sz : ops.sigma_z) h += Complex(c) * sz;
  }
  if (p.drive_c) h += Complex(p.drive_c->value(t)) * (ops.a + ops.a_dag);
  return h;
}

ComplexMatrix dissipator(const ComplexMatrix& op, const ComplexMatrix& rho) {
  const ComplexMatrix op_dag = op.adjoint();
  return matmul(matmul(op, rho), op_dag) - Complex(0.5) * anticommutator(matmul(op_dag, op), rho);
}

ComplexMatrix lindblad_rhs(double t, const ComplexMatrix& rho, const ModelParams& p,
                           const OperatorSet& ops) {
  if (rho.dim() != ops.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "lindblad_rhs: state is " + std::to_string(rho.dim()) + ", operators are " +
                    std::to_string(ops.dim()));
  }
  const ComplexMatrix h = hamiltonian_at(t, p, ops);
  ComplexMatrix out = Complex(0.0, -1.0) * commutator(h, rho);
  if (p.gamma_r != 0.0) out += Complex(p.gamma_r) * dissipator(ops.a, rho);
  if (p.gamma_q != 0.0) {
    for (const auto& sm : ops.sigma_minus) out += Complex(p.gamma_q) * dissipator(sm, rho);
  }
  return out;
}

ComplexMatrix lindblad_rhs_tdecay(double t, const ComplexMatrix& rho, const DecayRateModel& decay,
                                  const ModelParams& p, const OperatorSet& ops) {
  if (ops.n_qubits() != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "time-dependent decay model is cavity-only; layout has " +
                    std::to_string(ops.n_qubits()) + " qubits");
  }
  if (rho.dim() != ops.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "lindblad_rhs_tdecay: state is " + std::to_string(rho.dim()) +
                    ", operators are " + std::to_string(ops.dim()));
  }
  const ComplexMatrix h = Complex(p.omega_r) * ops.number_op;
  ComplexMatrix out = Complex(0.0, -1.0) * commutator(h, rho);
  out += Complex(decay.rate(t)) * dissipator(ops.a, rho);
  return out;
}

}  // namespace tnm
