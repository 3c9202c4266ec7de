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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tnm/config.hpp"
#include "tnm/hilbert.hpp"
#include "tnm/measures.hpp"

namespace tnm {

struct Column {
  std::string name;
  std::string unit;  // empty for dimensionless quantities
};

/// Row-major numeric table; NaN marks a missing cell.
struct Table {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(std::string_view name) const;
  std::vector<double> values(std::string_view name) const;
};

enum class PlotKind { kHeatmap, kLines, kLogLog, kParametric };

struct PlotSpec {
  std::string name;
  std::string title;
  PlotKind kind = PlotKind::kLines;
  std::string table;
  std::string x;
  std::string y;
  /// Heatmap value column, or the column whose distinct values split lines.
  std::string z;
};

struct Failure {
  std::string point;
  std::string message;
};

struct ExperimentResult {
  std::string tag;
  std::vector<Table> tables;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::string> notes;
  std::vector<Failure> failures;
  std::vector<PlotSpec> plots;
  std::string config_echo;
  std::string version;
  std::string timestamp;

  const Table& table(std::string_view name) const;
  double scalar(std::string_view name) const;
  bool has_scalar(std::string_view name) const;
};

/// Layout implied by the resolved config for n qubits.
SystemLayout make_layout(const RunConfig& config, int n_qubits);

/// One DnM evaluation from |initial_photons, g...g>.
DnmResult compute_dnm(const ModelParams& params, const RunConfig& config, int n_qubits);

ExperimentResult run_simulate(const RunConfig& config);
ExperimentResult run_dnm_map(const RunConfig& config);
ExperimentResult run_scaling(const RunConfig& config);
ExperimentResult run_extremal_dnm(const RunConfig& config);
ExperimentResult run_switching(const RunConfig& config);
ExperimentResult run_decay_fit(const RunConfig& config);
ExperimentResult run_memristor(const RunConfig& config);

/// Dispatches on config.experiment and stamps provenance.
ExperimentResult run_experiment(const RunConfig& config);

std::string version_string();

}  // namespace tnm
