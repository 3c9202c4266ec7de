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

#include "tnm/measures.hpp"

#include <algorithm>
#include <cmath>

#include "tnm/error.hpp"

namespace tnm {

double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  const auto eig = hermitian_eigenvalues(rho - sigma, 1e-8);
  double s = 0.0;
  for (double l : eig) s += std::abs(l);
  return 0.5 * s;
}

double trace_distance_to_vacuum(const ComplexMatrix& rho_cavity) {
  ComplexMatrix vacuum(rho_cavity.dim());
  vacuum(0, 0) = 1.0;
  return trace_distance(rho_cavity, vacuum);
}

double positive_increment_mass(std::span<const double> d, std::size_t begin, std::size_t end,
                               double threshold, std::size_t* count) {
  end = std::min(end, d.size());
  double mass = 0.0;
  std::size_t n = 0;
  for (std::size_t k = begin; k + 1 < end; ++k) {
    const double inc = d[k + 1] - d[k];
    if (inc > 0.0) mass += inc;
    if (inc > threshold) ++n;
  }
  if (count != nullptr) *count = n;
  return mass;
}

DnmResult dnm(std::span<const double> times, std::span<const double> d_series, bool reached_steady) {
  if (d_series.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "dnm needs at least 2 samples");
  }
  if (times.size() != d_series.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "dnm: times and series differ in length");
  }
  DnmResult r;
  r.times.assign(times.begin(), times.end());
  r.d_series.assign(d_series.begin(), d_series.end());
  r.n_d = positive_increment_mass(d_series, 0, d_series.size(), 0.0, &r.positive_increments);
  r.zeta_positive_mass = r.n_d;
  r.reached_steady = reached_steady;
  return r;
}

MemristorProbe::MemristorProbe(const ModelParams& params, const OperatorSet& ops)
    : params_(params) {
  const Complex i{0.0, 1.0};
  input_op_ = i * (ops.a - ops.a_dag);
  exchange_op_ = ComplexMatrix(ops.dim());
  for (int j = 0; j < ops.n_qubits(); ++j) {
    exchange_op_ += (i * params.g) * (ops.exchange[j].adjoint() - ops.exchange[j]);
  }
  photons_.resize(ops.dim());
  for (std::size_t k = 0; k < ops.dim(); ++k) photons_[k] = ops.number_op(k, k).real();
}

MemristorRecord MemristorProbe::evaluate(double t, const ComplexMatrix& rho,
                                         const ComplexMatrix& rhs_value) const {
  if (rho.dim() != photons_.size() || rhs_value.dim() != photons_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "memristor observables: state/operator dims differ");
  }
  MemristorRecord r;
  r.t = t;
  r.alpha = params_.alpha_or_default();
  for (std::size_t k = 0; k < photons_.size(); ++k) {
    r.photon_number += photons_[k] * rho(k, k).real();
    r.photon_rate += photons_[k] * rhs_value(k, k).real();
  }
  r.input = expectation(input_op_, rho).real();
  r.g_value = expectation(exchange_op_, rho).real();
  r.f_value = params_.cavity_drive_value(t);
  r.output = r.photon_rate + r.alpha * r.photon_number;
  return r;
}

MemristorRecord memristor_observables(const ComplexMatrix& rho, const ComplexMatrix& rhs_value,
                                      const ModelParams& params, const OperatorSet& ops, double t) {
  return MemristorProbe(params, ops).evaluate(t, rho, rhs_value);
}

std::vector<std::string> CavityObserver::names() const {
  return {"N", "D_S", "trace", "purity", "min_eigenvalue", "top_fock"};
}

void CavityObserver::observe(double, const ComplexMatrix& rho, const ComplexMatrix*,
                             std::vector<double>& values) const {
  const ComplexMatrix reduced = partial_trace_qubits(rho, layout_);
  double n = 0.0;
  for (std::size_t m = 0; m < reduced.dim(); ++m) n += static_cast<double>(m) * reduced(m, m).real();
  double purity = 0.0;
  for (std::size_t k = 0; k < rho.size(); ++k) purity += std::norm(rho.data()[k]);
  const auto eig = hermitian_eigenvalues(reduced, 1e-8);
  ComplexMatrix vacuum(reduced.dim());
  vacuum(0, 0) = 1.0;
  values.push_back(n);
  values.push_back(trace_distance(reduced, vacuum));
  values.push_back(rho.trace().real());
  values.push_back(purity);
  values.push_back(eig.front());
  values.push_back(reduced(reduced.dim() - 1, reduced.dim() - 1).real());
}

std::vector<std::string> MemristorObserver::names() const {
  return {"I", "O", "F", "G", "Ndot", "residual"};
}

void MemristorObserver::observe(double t, const ComplexMatrix& rho, const ComplexMatrix* rhs,
                                std::vector<double>& values) const {
  const MemristorRecord r = probe_.evaluate(t, rho, *rhs);
  values.push_back(r.input);
  values.push_back(r.output);
  values.push_back(r.f_value);
  values.push_back(r.g_value);
  values.push_back(r.photon_rate);
  values.push_back(r.residual());
}

}  // namespace tnm
