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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tnm/dynamics.hpp"
#include "tnm/linalg.hpp"
#include "tnm/model.hpp"

namespace tnm {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
  /// SS_tot == 0; r_squared is then reported as 1 by convention.
  bool degenerate = false;
};

/// Ordinary least squares y = slope x + intercept.
LinearFit fit_linear(std::span<const double> x, std::span<const double> y);

struct PowerLawFit {
  double k = 0.0;
  double log_prefactor = 0.0;
  double r_squared = 1.0;
  bool degenerate = false;
};

/// N_D ~ exp(log_prefactor) n^k by least squares on (ln n, ln N_D).
/// Needs >= 3 points, n >= 1 and N_D > 0.
PowerLawFit fit_power_law(std::span<const double> ns, std::span<const double> nds);

enum class Termination { kConverged, kMaxEvaluations };
std::string_view to_string(Termination t);

struct NelderMeadOptions {
  /// Simplex diameter threshold, in the caller's coordinates.
  double tolerance = 1e-6;
  std::size_t max_evaluations = 2000;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  Termination termination = Termination::kMaxEvaluations;
};

/// Downhill simplex minimization. `initial_step[i]` offsets vertex i+1 along
/// axis i. Non-finite objective values are treated as +inf.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> x0, std::span<const double> initial_step,
                             const NelderMeadOptions& options = {});

struct DecayBounds {
  double a_min = 0.0, a_max = 0.5;
  double b_min = 0.001, b_max = 0.2;
  double c_min = 0.0, c_max = 2.0;

  void validate() const;
  friend bool operator==(const DecayBounds&, const DecayBounds&) = default;
};

struct DecayFitOptions {
  DecayBounds bounds;
  // The frequency axis is sampled more finely: the objective has a local
  // minimum near every subharmonic of the true modulation frequency.
  int grid_a = 9;
  int grid_b = 17;
  int grid_c = 9;
  /// Simplex runs started from the best grid points, best result kept.
  int starts = 3;
  NelderMeadOptions simplex;
};

struct DecayFit {
  DecayRateModel decay;
  /// Sum of squared trace-distance differences at the optimum.
  double residual = 0.0;
  double best_grid_residual = 0.0;
  DecayRateModel best_grid_seed;
  std::size_t evaluations = 0;
  std::size_t diverged_evaluations = 0;
  Termination termination = Termination::kMaxEvaluations;

  /// Peak-to-peak swing of the oscillating part of the integrated rate, 2A/B.
  double ripple() const;
  /// Long-time mean rate A C.
  double mean_rate() const { return decay.a * decay.c; }
  /// min_t Gamma(t) = A (C - 1) when A > 0.
  double min_rate() const { return decay.a * (decay.c - 1.0); }
  /// The modulation changes the trace-distance curve by less than ~10%.
  bool effectively_constant() const { return ripple() < 0.1; }
};

/// Trace-distance curve of the cavity-only model with Gamma(t), sampled on the
/// config's recording grid out to config.t_max. Negative-rate excursions are
/// integrated as written.
Trajectory evolve_decay_model(const ComplexMatrix& rho0_cavity, const DecayRateModel& decay,
                              const ModelParams& params, const IntegrationConfig& config);

/// Finds (A, B, C) minimizing sum_k (D_target(t_k) - D_model(t_k))^2.
///
/// The target must be sampled on the recording grid implied by `config`
/// (dt * record_every spacing from t = 0, as produced by evolve). A full
/// grid over the bounds seeds a bounded Nelder-Mead run in coordinates scaled
/// to the unit cube. Candidates whose evolution diverges score +inf.
DecayFit fit_decay_rate(std::span<const double> target_times, std::span<const double> target_d,
                        const ComplexMatrix& rho0_cavity, const ModelParams& params,
                        const IntegrationConfig& config, const DecayFitOptions& options = {});

}  // namespace tnm
