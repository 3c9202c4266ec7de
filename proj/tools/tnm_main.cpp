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

// Command-line front end: one subcommand per experiment.

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tnm/config.hpp"
#include "tnm/error.hpp"
#include "tnm/experiments.hpp"
#include "tnm/output.hpp"

namespace {

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::string> out_dir;
  std::optional<int> workers;
  std::optional<std::string> formats;
  bool full_scale = false;
  bool print_config = false;
};

const char* describe(tnm::Experiment e) {
  switch (e) {
    case tnm::Experiment::kSimulate: return "Single trajectory: D_S, photon number, purity and N_D";
    case tnm::Experiment::kDnmMap: return "Grid of N_D over one or two model parameters";
    case tnm::Experiment::kScaling: return "N_D versus qubit number with power-law fits";
    case tnm::Experiment::kExtremal: return "Minimum and maximum N_D over the qubit driving grid";
    case tnm::Experiment::kSwitch: return "Switch the qubit drive frequency mid-run";
    case tnm::Experiment::kFitDecay: return "Fit a time-dependent cavity decay rate to the full model";
    case tnm::Experiment::kMemristor: return "Cavity-driven input-output loop and memristor identity";
  }
  return "";
}

int run(tnm::Experiment experiment, const Options& opt) {
  std::vector<std::string> overrides = opt.overrides;
  if (opt.out_dir) overrides.push_back("output.dir=" + *opt.out_dir);
  if (opt.workers) overrides.push_back("output.workers=" + std::to_string(*opt.workers));
  if (opt.formats) overrides.push_back("output.formats=" + *opt.formats);
  if (opt.full_scale) overrides.push_back("experiment.full_scale=true");

  const tnm::RunConfig config = opt.config_path.empty()
                                    ? tnm::parse_config("", overrides, experiment, "<defaults>")
                                    : tnm::load_config(opt.config_path, overrides, experiment);
  if (opt.print_config) {
    std::cout << tnm::echo_config(config);
    return 0;
  }
  for (const auto& w : config.warnings) std::cerr << "warning: " << w << "\n";
  if (config.output.workers > 0) omp_set_num_threads(config.output.workers);

  const tnm::ExperimentResult result = tnm::run_experiment(config);
  const auto files = tnm::emit_results(result, config.output);
  for (const auto& [name, value] : result.scalars) {
    std::printf("%-32s %.10g\n", name.c_str(), value);
  }
  for (const auto& note : result.notes) {
    if (std::find(config.warnings.begin(), config.warnings.end(), note) == config.warnings.end()) {
      std::cerr << "note: " << note << "\n";
    }
  }
  for (const auto& f : files) std::printf("wrote %s\n", f.string().c_str());
  if (!result.failures.empty()) {
    std::cerr << result.failures.size() << " grid point(s) failed; see "
              << (std::filesystem::path(config.output.dir) / "failures.json").string() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical non-Markovianity of a lossy cavity coupled to driven qubits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tnm::version_string());
  app.footer("Config keys ([default] description):\n" + tnm::config_reference());

  Options opt;
  std::optional<tnm::Experiment> chosen;
  for (const auto& tag : tnm::experiment_tags()) {
    const tnm::Experiment e = tnm::parse_experiment(tag);
    CLI::App* sub = app.add_subcommand(tag, describe(e));
    sub->add_option("--config", opt.config_path, "INI-style config file (sections documented below)")
        ->check(CLI::ExistingFile);
    sub->add_option("--set", opt.overrides, "Override, key=value or section.key=value (repeatable)");
    sub->add_option("--out", opt.out_dir, "Output directory [results]");
    sub->add_option("--workers", opt.workers, "Worker threads, 0 = all hardware threads [0]")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--formats", opt.formats, "Comma-separated subset of csv,json,svg [csv,json,svg]");
    sub->add_flag("--full-scale", opt.full_scale, "Figure-fidelity grids (100x100 maps, n up to 8)");
    sub->add_flag("--print-config", opt.print_config, "Print the resolved config and exit");
    sub->callback([&chosen, e] { chosen = e; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    return run(*chosen, opt);
  } catch (const tnm::Error& e) {
    std::cerr << "error (" << tnm::to_string(e.code()) << "): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
