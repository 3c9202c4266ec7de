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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tnm/dynamics.hpp"
#include "tnm/fitting.hpp"
#include "tnm/model.hpp"

namespace tnm {

enum class Experiment { kSimulate, kDnmMap, kScaling, kExtremal, kSwitch, kFitDecay, kMemristor };

Experiment parse_experiment(std::string_view tag);
std::string_view to_string(Experiment e);
const std::vector<std::string>& experiment_tags();

/// Sweepable model parameters, by config key.
const std::vector<std::string>& sweepable_parameters();
/// Sets a sweepable parameter; drives are created on first use.
void set_model_parameter(ModelParams& params, std::string_view name, double value);
double get_model_parameter(const ModelParams& params, std::string_view name);

struct Axis {
  std::string parameter;
  double min = 0.0;
  double max = 1.0;
  int steps = 2;

  double value(int i) const;
  friend bool operator==(const Axis&, const Axis&) = default;
};

/// Up to two axes over model parameters; `axisN = none` removes one.
struct SweepSpec {
  std::vector<Axis> axes{{"g", 0.0, 0.1, 21}, {"omega_q", 0.5, 1.5, 21}};
  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct LayoutConfig {
  static constexpr int kAuto = -2;
  static constexpr int kNone = -1;

  int n_qubits = 1;
  int fock_dim = kAuto;          // resolved per experiment
  int max_excitations = kAuto;   // kNone: full product space
  int initial_photons = kAuto;  // resolved: 0 for memristor runs, else 1
  std::size_t dim_cap = 4096;

  friend bool operator==(const LayoutConfig&, const LayoutConfig&) = default;
};

struct ScalingConfig {
  std::vector<int> n_list{1, 2, 3, 4, 5};
  std::vector<double> g_list{0.01, 0.05, 0.1};
  friend bool operator==(const ScalingConfig&, const ScalingConfig&) = default;
};

struct ExtremalConfig {
  std::vector<double> g_list{0.01, 0.02, 0.03, 0.05, 0.07, 0.1};
  std::vector<int> n_list{1};
  Axis mu{"mu_q", 0.0, 1.0, 11};
  Axis amplitude{"amp_q", 0.0, 1.0, 11};
  double linear_fit_g_min = 0.03;
  friend bool operator==(const ExtremalConfig&, const ExtremalConfig&) = default;
};

struct SwitchConfig {
  double switch_time = 350.0;
  double mu_before = 1.0;
  double mu_after = 0.75;
  double amplitude = 0.5;
  double increment_threshold = 1e-6;
  friend bool operator==(const SwitchConfig&, const SwitchConfig&) = default;
};

struct FitConfig {
  std::vector<double> mu_list{0.2, 0.419, 1.0};
  double amplitude = 0.5;
  double horizon = 1000.0;
  double dt = 0.05;
  int record_every = 20;
  DecayFitOptions options;
  friend bool operator==(const FitConfig& l, const FitConfig& r) {
    return l.mu_list == r.mu_list && l.amplitude == r.amplitude && l.horizon == r.horizon &&
           l.dt == r.dt && l.record_every == r.record_every && l.options.bounds == r.options.bounds &&
           l.options.grid_a == r.options.grid_a && l.options.grid_b == r.options.grid_b &&
           l.options.grid_c == r.options.grid_c && l.options.starts == r.options.starts &&
           l.options.simplex.tolerance == r.options.simplex.tolerance &&
           l.options.simplex.max_evaluations == r.options.simplex.max_evaluations;
  }
};

struct MemristorConfig {
  double amplitude = 0.2;
  double frequency = 1.0;
  Waveform waveform = Waveform::kMemristor;
  double transient_periods = 2.0;
  int cycles = 1;
  int record_every = 1;
  double truncation_threshold = 1e-4;
  friend bool operator==(const MemristorConfig&, const MemristorConfig&) = default;
};

struct OutputConfig {
  std::string dir = "results";
  std::vector<std::string> formats{"csv", "json", "svg"};
  int workers = 0;  // 0: all hardware threads
  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RunConfig {
  Experiment experiment = Experiment::kSimulate;
  bool full_scale = false;
  ModelParams model;
  LayoutConfig layout;
  IntegrationConfig integration;
  SweepSpec sweep;
  ScalingConfig scaling;
  ExtremalConfig extremal;
  SwitchConfig switching;
  FitConfig fit;
  MemristorConfig memristor;
  OutputConfig output;
  /// Non-fatal diagnostics collected while resolving (validity regime etc.).
  std::vector<std::string> warnings;

  friend bool operator==(const RunConfig& l, const RunConfig& r) {
    return l.experiment == r.experiment && l.full_scale == r.full_scale && l.model == r.model &&
           l.layout == r.layout && l.integration == r.integration && l.sweep == r.sweep &&
           l.scaling == r.scaling && l.extremal == r.extremal && l.switching == r.switching &&
           l.fit == r.fit && l.memristor == r.memristor && l.output == r.output;
  }
};

/// Parses `key = value` text with `[section]` headers; `#` and `;` start
/// comments. Overrides are `key=value` or `section.key=value` and apply after
/// the text. When `experiment` is given it replaces [experiment] tag. The
/// result is resolved: automatic values filled in, frequencies, rates and
/// times rescaled so that omega_r = 1.
RunConfig parse_config(std::string_view text, std::span<const std::string> overrides = {},
                       std::optional<Experiment> experiment = std::nullopt,
                       std::string_view source = "<config>");
RunConfig load_config(const std::string& path, std::span<const std::string> overrides = {},
                      std::optional<Experiment> experiment = std::nullopt);

/// Resolved config as parseable text; parsing it back yields an equal config.
std::string echo_config(const RunConfig& config);

/// One line per key: `section.key  default  description`.
std::string config_reference();

}  // namespace tnm
