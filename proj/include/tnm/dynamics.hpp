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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tnm/hilbert.hpp"
#include "tnm/kernels.hpp"
#include "tnm/linalg.hpp"
#include "tnm/model.hpp"

namespace tnm {

struct IntegrationConfig {
  double dt = 0.01;
  double t_max = 3000.0;
  int record_every = 10;
  /// Early stop once the steady metric stays below steady_eps for steady_window.
  bool stop_when_steady = false;
  double steady_eps = 1e-3;
  double steady_window = 50.0;

  void validate() const;
  friend bool operator==(const IntegrationConfig&, const IntegrationConfig&) = default;
};

/// Computes named scalars from the state at each sample instant.
class Observer {
 public:
  virtual ~Observer() = default;
  virtual std::vector<std::string> names() const = 0;
  /// When true, `rhs` passed to observe() is L(t) rho at the sample instant.
  virtual bool needs_rhs() const { return false; }
  virtual void observe(double t, const ComplexMatrix& rho, const ComplexMatrix* rhs,
                       std::vector<double>& values) const = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::string> names;
  std::vector<std::vector<double>> series;
  /// Reduced cavity states at the sample instants, when requested.
  std::vector<ComplexMatrix> snapshots;
  std::size_t steps = 0;
  std::size_t renormalizations = 0;
  bool reached_steady = false;
  /// Sample indices where a piecewise schedule switched segments.
  std::vector<std::size_t> segment_starts;

  bool has(std::string_view name) const;
  const std::vector<double>& operator[](std::string_view name) const;
  std::size_t size() const noexcept { return times.size(); }
};

struct EvolveOptions {
  /// Re-Hermitize after every step and renormalize the trace when it drifts
  /// above 1e-9. Off for the negative-rate model, which is integrated as is.
  bool project_state = true;
  /// Series used for steady-state detection.
  std::string steady_series = "D_S";
  /// Store partial_trace_qubits(rho) at every sample.
  const SystemLayout* snapshot_layout = nullptr;
};

/// Fixed-step classic RK4 on d rho/dt = L(t) rho.
///
/// Samples are taken at t = 0, every record_every steps, and at the final
/// step. Trace drift above 1e-4 or a non-finite entry aborts with
/// kIntegrationFailure; with project_state off, growth beyond 1e6 aborts with
/// kDivergence instead.
Trajectory evolve(const ComplexMatrix& rho0, const RightHandSide& rhs,
                  const IntegrationConfig& config, std::span<const Observer* const> observers,
                  const EvolveOptions& options = {});

struct ScheduleSegment {
  ModelParams params;
  double duration = 0.0;
};

/// Runs the full model through consecutive parameter segments on one layout.
/// The state is continuous across boundaries, time is global (drive phases
/// continue), and every boundary instant is a sample point.
Trajectory evolve_piecewise(const ComplexMatrix& rho0, std::span<const ScheduleSegment> schedule,
                            const SystemLayout& layout, const OperatorSet& ops,
                            const IntegrationConfig& config,
                            std::span<const Observer* const> observers,
                            const EvolveOptions& options = {});

/// Lower-level entry point shared by both: each segment is (generator, duration).
struct RhsSegment {
  const RightHandSide* rhs = nullptr;
  double duration = 0.0;
};
Trajectory evolve_segments(const ComplexMatrix& rho0, std::span<const RhsSegment> segments,
                           const IntegrationConfig& config,
                           std::span<const Observer* const> observers,
                           const EvolveOptions& options = {});

}  // namespace tnm
