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

#include "tnm/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "tnm/error.hpp"

namespace tnm {

namespace {

struct ValueError {
  std::string message;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(std::string_view s) {
  const std::string t = trim(s);
  double v = 0.0;
  const char* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end) throw ValueError{"expected a number, got '" + t + "'"};
  if (!std::isfinite(v)) throw ValueError{"value must be finite"};
  return v;
}

long long to_integer(std::string_view s) {
  const std::string t = trim(s);
  long long v = 0;
  const char* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end) throw ValueError{"expected an integer, got '" + t + "'"};
  return v;
}

int to_int(std::string_view s, long long lo, long long hi) {
  const long long v = to_integer(s);
  if (v < lo || v > hi) {
    throw ValueError{"value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]"};
  }
  return static_cast<int>(v);
}

bool to_bool(std::string_view s) {
  const std::string t = trim(s);
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  throw ValueError{"expected true or false, got '" + t + "'"};
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(s)};
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ValueError{"empty list element"};
    out.push_back(item);
  }
  if (out.empty()) throw ValueError{"list must not be empty"};
  return out;
}

std::vector<double> to_double_list(std::string_view s) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) out.push_back(to_double(item));
  return out;
}

std::vector<int> to_int_list(std::string_view s, long long lo, long long hi) {
  std::vector<int> out;
  for (const auto& item : split_list(s)) out.push_back(to_int(item, lo, hi));
  return out;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_same_v<T, double>) {
      out += fmt(v[i]);
    } else if constexpr (std::is_same_v<T, std::string>) {
      out += v[i];
    } else {
      out += std::to_string(v[i]);
    }
  }
  return out;
}

double non_negative(double v) {
  if (v < 0.0) throw ValueError{"value must be >= 0"};
  return v;
}

double positive(double v) {
  if (!(v > 0.0)) throw ValueError{"value must be > 0"};
  return v;
}

QubitDrive& qubit_drive(ModelParams& p) {
  if (!p.drive_q) p.drive_q = QubitDrive{};
  return *p.drive_q;
}

CavityDrive& cavity_drive(ModelParams& p) {
  if (!p.drive_c) p.drive_c = CavityDrive{};
  return *p.drive_c;
}

Axis& axis_slot(RunConfig& c, std::size_t i) {
  while (c.sweep.axes.size() <= i) c.sweep.axes.push_back(Axis{"", 0.0, 1.0, 2});
  return c.sweep.axes[i];
}

using Setter = std::function<void(RunConfig&, std::string_view)>;
using Getter = std::function<std::optional<std::string>(const RunConfig&)>;

struct Field {
  std::string section;
  std::string key;
  std::string help;
  Setter set;
  Getter get;
};

std::vector<Field> make_fields() {
  std::vector<Field> f;
  auto num = [&](std::string section, std::string key, std::string help, auto member,
                 double (*check)(double) = nullptr) {
    f.push_back({std::move(section), std::move(key), std::move(help),
                 [member, check](RunConfig& c, std::string_view v) {
                   const double x = to_double(v);
                   member(c) = check ? check(x) : x;
                 },
                 [member](const RunConfig& c) -> std::optional<std::string> {
                   return fmt(member(const_cast<RunConfig&>(c)));
                 }});
  };
  auto integer = [&](std::string section, std::string key, std::string help, auto member,
                     long long lo, long long hi) {
    f.push_back({std::move(section), std::move(key), std::move(help),
                 [member, lo, hi](RunConfig& c, std::string_view v) { member(c) = to_int(v, lo, hi); },
                 [member](const RunConfig& c) -> std::optional<std::string> {
                   return std::to_string(member(const_cast<RunConfig&>(c)));
                 }});
  };
  auto boolean = [&](std::string section, std::string key, std::string help, auto member) {
    f.push_back({std::move(section), std::move(key), std::move(help),
                 [member](RunConfig& c, std::string_view v) { member(c) = to_bool(v); },
                 [member](const RunConfig& c) -> std::optional<std::string> {
                   return member(const_cast<RunConfig&>(c)) ? "true" : "false";
                 }});
  };

  // [experiment]
  f.push_back({"experiment", "tag", "simulate | dnm-map | scaling | extremal | switch | fit-decay | memristor",
               [](RunConfig& c, std::string_view v) {
                 try {
                   c.experiment = parse_experiment(trim(v));
                 } catch (const Error& e) {
                   throw ValueError{e.what()};
                 }
               },
               [](const RunConfig& c) -> std::optional<std::string> {
                 return std::string(to_string(c.experiment));
               }});
  boolean("experiment", "full_scale", "figure-fidelity grids (100x100 maps, n up to 8)",
          [](RunConfig& c) -> bool& { return c.full_scale; });

  // [model]
  num("model", "omega_r", "cavity frequency; everything is rescaled so that omega_r = 1",
      [](RunConfig& c) -> double& { return c.model.omega_r; }, positive);
  num("model", "omega_q", "qubit frequency", [](RunConfig& c) -> double& { return c.model.omega_q; });
  num("model", "g", "qubit-cavity coupling", [](RunConfig& c) -> double& { return c.model.g; },
      non_negative);
  num("model", "gamma_r", "cavity decay rate", [](RunConfig& c) -> double& { return c.model.gamma_r; },
      non_negative);
  num("model", "gamma_q", "qubit decay rate", [](RunConfig& c) -> double& { return c.model.gamma_q; },
      non_negative);
  f.push_back({"model", "alpha", "memristor output damping; auto = gamma_r",
               [](RunConfig& c, std::string_view v) {
                 if (trim(v) == "auto") {
                   c.model.alpha.reset();
                 } else {
                   c.model.alpha = to_double(v);
                 }
               },
               [](const RunConfig& c) -> std::optional<std::string> {
                 return c.model.alpha ? fmt(*c.model.alpha) : std::string("auto");
               }});
  f.push_back({"model", "amp_q", "qubit drive amplitude Omega_Q (0: undriven)",
               [](RunConfig& c, std::string_view v) { qubit_drive(c.model).amplitude = to_double(v); },
               [](const RunConfig& c) -> std::optional<std::string> {
                 return fmt(c.model.drive_q ? c.model.drive_q->amplitude : 0.0);
               }});
  f.push_back({"model", "mu_q", "qubit drive frequency mu_Q",
               [](RunConfig& c, std::string_view v) { qubit_drive(c.model).frequency = to_double(v); },
               [](const RunConfig& c) -> std::optional<std::string> {
                 return fmt(c.model.drive_q ? c.model.drive_q->frequency : 0.0);
               }});
  f.push_back({"model", "amp_c", "cavity drive amplitude (0: undriven)",
               [](RunConfig& c, std::string_view v) { cavity_drive(c.model).amplitude = to_double(v); },
               [](const RunConfig& c) -> std::optional<std::string> {
                 return fmt(c.model.drive_c ? c.model.drive_c->amplitude : 0.0);
               }});
  f.push_back({"model", "mu_c", "cavity drive frequency",
               [](RunConfig& c, std::string_view v) { cavity_drive(c.model).frequency = to_double(v); },
               [](const RunConfig& c) -> std::optional<std::string> {
                 return fmt(c.model.drive_c ? c.model.drive_c->frequency : 0.0);
               }});
  f.push_back({"model", "waveform_c", "cavity drive waveform: sinusoid | memristor",
               [](RunConfig& c, std::string_view v) {
                 try {
                   cavity_drive(c.model).waveform = parse_waveform(trim(v));
                 } catch (const Error& e) {
                   throw ValueError{e.what()};
                 }
               },
               [](const RunConfig& c) -> std::optional<std::string> {
                 return std::string(to_string(c.model.drive_c ? c.model.drive_c->waveform
                                                              : Waveform::kMemristor));
               }});

  // [layout]
  integer("layout", "n_qubits", "number of qubits", [](RunConfig& c) -> int& { return c.layout.n_qubits; },
          0, 20);
  f.push_back({"layout", "fock_dim", "cavity levels kept; auto = 8 with a cavity drive, else initial_photons + 1",
               [](RunConfig& c, std::string_view v) {
                 c.layout.fock_dim = trim(v) == "auto" ? LayoutConfig::kAuto : to_int(v, 2, 4096);
               },
               [](const RunConfig& c) -> std::optional<std::string> {
                 return c.layout.fock_dim == LayoutConfig::kAuto ? std::string("auto")
                                                                 : std::to_string(c.layout.fock_dim);
               }});
  f.push_back({"layout", "max_excitations",
               "excitation cap on the basis (exact without a cavity drive); auto | none | integer",
               [](RunConfig& c, std::string_view v) {
                 const std::string t = trim(v);
                 if (t == "auto") {
                   c.layout.max_excitations = LayoutConfig::kAuto;
                 } else if (t == "none") {
                   c.layout.max_excitations = LayoutConfig::kNone;
                 } else {
                   c.layout.max_excitations = to_int(t, 0, 1 << 20);
                 }
               },
               [](const RunConfig& c) -> std::optional<std::string> {
                 switch (c.layout.max_excitations) {
                   case LayoutConfig::kAuto: return std::string("auto");
                   case LayoutConfig::kNone: return std::string("none");
                   default: return std::to_string(c.layout.max_excitations);
                 }
               }});
  f.push_back({"layout", "initial_photons", "cavity Fock state at t = 0, qubits in ground; auto = 0 for memristor, else 1",
               [](RunConfig& c, std::string_view v) {
                 c.layout.initial_photons = trim(v) == "auto" ? LayoutConfig::kAuto : to_int(v, 0, 4095);
               },
               [](const RunConfig& c) -> std::optional<std::string> {
                 return c.layout.initial_photons == LayoutConfig::kAuto
                            ? std::string("auto")
                            : std::to_string(c.layout.initial_photons);
               }});
  f.push_back({"layout", "dim_cap", "largest Hilbert-space dimension accepted",
               [](RunConfig& c, std::string_view v) {
                 c.layout.dim_cap = static_cast<std::size_t>(to_int(v, 1, 1 << 20));
               },
               [](const RunConfig& c) -> std::optional<std::string> {
                 return std::to_string(c.layout.dim_cap);
               }});

  // [integration]
  num("integration", "dt", "RK4 step", [](RunConfig& c) -> double& { return c.integration.dt; }, positive);
  num("integration", "t_max", "end time", [](RunConfig& c) -> double& { return c.integration.t_max; },
      positive);
  integer("integration", "record_every", "steps between recorded samples",
          [](RunConfig& c) -> int& { return c.integration.record_every; }, 1, 1 << 30);
  boolean("integration", "stop_when_steady", "stop once D_S stays below steady_eps for steady_window",
          [](RunConfig& c) -> bool& { return c.integration.stop_when_steady; });
  num("integration", "steady_eps", "steady-state threshold on D_S",
      [](RunConfig& c) -> double& { return c.integration.steady_eps; }, positive);
  num("integration", "steady_window", "time D_S must stay below steady_eps",
      [](RunConfig& c) -> double& { return c.integration.steady_window; }, non_negative);

  // [sweep]
  for (std::size_t i = 0; i < 2; ++i) {
    const std::string p = "axis" + std::to_string(i + 1);
    f.push_back({"sweep", p, "swept model parameter (omega_q, g, gamma_r, gamma_q, alpha, mu_q, amp_q, mu_c, amp_c) or none",
                 [i](RunConfig& c, std::string_view v) {
                   const std::string t = trim(v);
                   if (t != "none") {
                     const auto& names = sweepable_parameters();
                     if (std::find(names.begin(), names.end(), t) == names.end()) {
                       throw ValueError{"'" + t + "' is not a sweepable parameter (" + join(names) + ")"};
                     }
                   }
                   axis_slot(c, i).parameter = t;
                 },
                 [i](const RunConfig& c) -> std::optional<std::string> {
                   if (c.sweep.axes.size() <= i) return std::nullopt;
                   return c.sweep.axes[i].parameter;
                 }});
    f.push_back({"sweep", p + "_min", "axis start",
                 [i](RunConfig& c, std::string_view v) { axis_slot(c, i).min = to_double(v); },
                 [i](const RunConfig& c) -> std::optional<std::string> {
                   if (c.sweep.axes.size() <= i) return std::nullopt;
                   return fmt(c.sweep.axes[i].min);
                 }});
    f.push_back({"sweep", p + "_max", "axis end",
                 [i](RunConfig& c, std::string_view v) { axis_slot(c, i).max = to_double(v); },
                 [i](const RunConfig& c) -> std::optional<std::string> {
                   if (c.sweep.axes.size() <= i) return std::nullopt;
                   return fmt(c.sweep.axes[i].max);
                 }});
    f.push_back({"sweep", p + "_steps", "grid points, >= 2",
                 [i](RunConfig& c, std::string_view v) { axis_slot(c, i).steps = to_int(v, 2, 100000); },
                 [i](const RunConfig& c) -> std::optional<std::string> {
                   if (c.sweep.axes.size() <= i) return std::nullopt;
                   return std::to_string(c.sweep.axes[i].steps);
                 }});
  }

  // [scaling]
  f.push_back({"scaling", "n_list", "qubit numbers",
               [](RunConfig& c, std::string_view v) { c.scaling.n_list = to_int_list(v, 1, 20); },
               [](const RunConfig& c) -> std::optional<std::string> { return join(c.scaling.n_list); }});
  f.push_back({"scaling", "g_list", "couplings",
               [](RunConfig& c, std::string_view v) { c.scaling.g_list = to_double_list(v); },
               [](const RunConfig& c) -> std::optional<std::string> { return join(c.scaling.g_list); }});

  // [extremal]
  f.push_back({"extremal", "g_list", "couplings",
               [](RunConfig& c, std::string_view v) { c.extremal.g_list = to_double_list(v); },
               [](const RunConfig& c) -> std::optional<std::string> { return join(c.extremal.g_list); }});
  f.push_back({"extremal", "n_list", "qubit numbers",
               [](RunConfig& c, std::string_view v) { c.extremal.n_list = to_int_list(v, 1, 20); },
               [](const RunConfig& c) -> std::optional<std::string> { return join(c.extremal.n_list); }});
  num("extremal", "mu_min", "driving-frequency grid start", [](RunConfig& c) -> double& { return c.extremal.mu.min; });
  num("extremal", "mu_max", "driving-frequency grid end", [](RunConfig& c) -> double& { return c.extremal.mu.max; });
  integer("extremal", "mu_steps", "driving-frequency grid points",
          [](RunConfig& c) -> int& { return c.extremal.mu.steps; }, 2, 100000);
  num("extremal", "amp_min", "driving-amplitude grid start", [](RunConfig& c) -> double& { return c.extremal.amplitude.min; });
  num("extremal", "amp_max", "driving-amplitude grid end", [](RunConfig& c) -> double& { return c.extremal.amplitude.max; });
  integer("extremal", "amp_steps", "driving-amplitude grid points",
          [](RunConfig& c) -> int& { return c.extremal.amplitude.steps; }, 2, 100000);
  num("extremal", "linear_fit_g_min", "smallest g in the linear fit of max N_D",
      [](RunConfig& c) -> double& { return c.extremal.linear_fit_g_min; }, non_negative);

  // [switch]
  num("switch", "switch_time", "time of the frequency switch",
      [](RunConfig& c) -> double& { return c.switching.switch_time; }, positive);
  num("switch", "mu_before", "qubit drive frequency before the switch",
      [](RunConfig& c) -> double& { return c.switching.mu_before; });
  num("switch", "mu_after", "qubit drive frequency after the switch",
      [](RunConfig& c) -> double& { return c.switching.mu_after; });
  num("switch", "amplitude", "qubit drive amplitude", [](RunConfig& c) -> double& { return c.switching.amplitude; });
  num("switch", "increment_threshold", "D_S rises above this count as increments",
      [](RunConfig& c) -> double& { return c.switching.increment_threshold; }, non_negative);

  // [fit]
  f.push_back({"fit", "mu_list", "qubit drive frequencies to fit",
               [](RunConfig& c, std::string_view v) { c.fit.mu_list = to_double_list(v); },
               [](const RunConfig& c) -> std::optional<std::string> { return join(c.fit.mu_list); }});
  num("fit", "amplitude", "qubit drive amplitude", [](RunConfig& c) -> double& { return c.fit.amplitude; });
  num("fit", "horizon", "fitted time window", [](RunConfig& c) -> double& { return c.fit.horizon; }, positive);
  num("fit", "dt", "RK4 step for target and model", [](RunConfig& c) -> double& { return c.fit.dt; }, positive);
  integer("fit", "record_every", "steps between fitted samples",
          [](RunConfig& c) -> int& { return c.fit.record_every; }, 1, 1 << 30);
  num("fit", "a_min", "lower bound on A", [](RunConfig& c) -> double& { return c.fit.options.bounds.a_min; });
  num("fit", "a_max", "upper bound on A", [](RunConfig& c) -> double& { return c.fit.options.bounds.a_max; });
  num("fit", "b_min", "lower bound on B", [](RunConfig& c) -> double& { return c.fit.options.bounds.b_min; });
  num("fit", "b_max", "upper bound on B", [](RunConfig& c) -> double& { return c.fit.options.bounds.b_max; });
  num("fit", "c_min", "lower bound on C", [](RunConfig& c) -> double& { return c.fit.options.bounds.c_min; });
  num("fit", "c_max", "upper bound on C", [](RunConfig& c) -> double& { return c.fit.options.bounds.c_max; });
  integer("fit", "grid_a", "seed grid points along A", [](RunConfig& c) -> int& { return c.fit.options.grid_a; }, 5, 1000);
  integer("fit", "grid_b", "seed grid points along B", [](RunConfig& c) -> int& { return c.fit.options.grid_b; }, 5, 1000);
  integer("fit", "grid_c", "seed grid points along C", [](RunConfig& c) -> int& { return c.fit.options.grid_c; }, 5, 1000);
  integer("fit", "starts", "simplex runs from the best seeds", [](RunConfig& c) -> int& { return c.fit.options.starts; },
          1, 1000);
  num("fit", "tolerance", "simplex diameter at convergence (unit-cube coordinates)",
      [](RunConfig& c) -> double& { return c.fit.options.simplex.tolerance; }, positive);
  f.push_back({"fit", "max_evaluations", "objective evaluations per simplex run",
               [](RunConfig& c, std::string_view v) {
                 c.fit.options.simplex.max_evaluations = static_cast<std::size_t>(to_int(v, 1, 1 << 30));
               },
               [](const RunConfig& c) -> std::optional<std::string> {
                 return std::to_string(c.fit.options.simplex.max_evaluations);
               }});

  // [memristor]
  num("memristor", "amplitude", "cavity drive amplitude", [](RunConfig& c) -> double& { return c.memristor.amplitude; });
  num("memristor", "frequency", "cavity drive frequency",
      [](RunConfig& c) -> double& { return c.memristor.frequency; }, positive);
  f.push_back({"memristor", "waveform", "sinusoid | memristor",
               [](RunConfig& c, std::string_view v) {
                 try {
                   c.memristor.waveform = parse_waveform(trim(v));
                 } catch (const Error& e) {
                   throw ValueError{e.what()};
                 }
               },
               [](const RunConfig& c) -> std::optional<std::string> {
                 return std::string(to_string(c.memristor.waveform));
               }});
  num("memristor", "transient_periods", "drive periods discarded before the loop",
      [](RunConfig& c) -> double& { return c.memristor.transient_periods; }, non_negative);
  integer("memristor", "cycles", "drive periods analysed", [](RunConfig& c) -> int& { return c.memristor.cycles; },
          1, 100000);
  integer("memristor", "record_every", "steps between loop samples",
          [](RunConfig& c) -> int& { return c.memristor.record_every; }, 1, 1 << 30);
  num("memristor", "truncation_threshold", "warn when the top Fock level exceeds this population",
      [](RunConfig& c) -> double& { return c.memristor.truncation_threshold; }, positive);

  // [output]
  f.push_back({"output", "dir", "output directory", [](RunConfig& c, std::string_view v) { c.output.dir = trim(v); },
               [](const RunConfig& c) -> std::optional<std::string> { return c.output.dir; }});
  f.push_back({"output", "formats", "subset of csv, json, svg",
               [](RunConfig& c, std::string_view v) {
                 auto items = split_list(v);
                 for (const auto& s : items) {
                   if (s != "csv" && s != "json" && s != "svg") throw ValueError{"unknown format '" + s + "'"};
                 }
                 c.output.formats = items;
               },
               [](const RunConfig& c) -> std::optional<std::string> { return join(c.output.formats); }});
  integer("output", "workers", "worker threads; 0 = all hardware threads",
          [](RunConfig& c) -> int& { return c.output.workers; }, 0, 4096);
  return f;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> f = make_fields();
  return f;
}

const Field& lookup(std::string_view section, std::string_view key, const std::string& where) {
  std::vector<const Field*> hits;
  for (const auto& fld : fields()) {
    if (fld.key == key && (section.empty() || fld.section == section)) hits.push_back(&fld);
  }
  const std::string name = section.empty() ? std::string(key) : std::string(section) + "." + std::string(key);
  if (hits.empty()) throw Error(ErrorCode::kConfig, where + ": unknown key '" + name + "'");
  if (hits.size() > 1) {
    std::string options;
    for (const auto* h : hits) options += " " + h->section + "." + h->key;
    throw Error(ErrorCode::kConfig, where + ": key '" + name + "' is ambiguous; use one of" + options);
  }
  return *hits.front();
}

void apply(RunConfig& c, const Field& fld, std::string_view value, const std::string& where) {
  try {
    fld.set(c, value);
  } catch (const ValueError& e) {
    throw Error(ErrorCode::kConfig, where + ": " + fld.section + "." + fld.key + ": " + e.message);
  }
}

bool section_exists(std::string_view s) {
  return std::any_of(fields().begin(), fields().end(), [&](const Field& f) { return f.section == s; });
}

void rescale(RunConfig& c) {
  const double w = c.model.omega_r;
  if (w == 1.0) return;
  auto& m = c.model;
  m.omega_q /= w;
  m.g /= w;
  m.gamma_r /= w;
  m.gamma_q /= w;
  if (m.alpha) *m.alpha /= w;
  if (m.drive_q) {
    m.drive_q->amplitude /= w;
    m.drive_q->frequency /= w;
  }
  if (m.drive_c) {
    m.drive_c->amplitude /= w;
    m.drive_c->frequency /= w;
  }
  m.omega_r = 1.0;
  for (auto& ax : c.sweep.axes) {
    ax.min /= w;
    ax.max /= w;
  }
  for (auto& g : c.scaling.g_list) g /= w;
  for (auto& g : c.extremal.g_list) g /= w;
  c.extremal.linear_fit_g_min /= w;
  for (Axis* ax : {&c.extremal.mu, &c.extremal.amplitude}) {
    ax->min /= w;
    ax->max /= w;
  }
  c.integration.dt *= w;
  c.integration.t_max *= w;
  c.integration.steady_window *= w;
  c.switching.switch_time *= w;
  c.switching.mu_before /= w;
  c.switching.mu_after /= w;
  c.switching.amplitude /= w;
  for (auto& mu : c.fit.mu_list) mu /= w;
  c.fit.amplitude /= w;
  c.fit.horizon *= w;
  c.fit.dt *= w;
  auto& b = c.fit.options.bounds;
  b.a_min /= w;
  b.a_max /= w;
  b.b_min /= w;
  b.b_max /= w;
  c.memristor.amplitude /= w;
  c.memristor.frequency /= w;
  char buf[128];
  std::snprintf(buf, sizeof buf, "omega_r = %.17g: parameters rescaled to units of omega_r", w);
  c.warnings.emplace_back(buf);
}

void resolve(RunConfig& c) {
  rescale(c);
  auto& m = c.model;
  if (m.drive_q && m.drive_q->amplitude == 0.0) m.drive_q.reset();
  if (m.drive_c && m.drive_c->amplitude == 0.0) m.drive_c.reset();

  // Sweep axes: drop "none", require names.
  std::vector<Axis> axes;
  for (const auto& ax : c.sweep.axes) {
    if (ax.parameter == "none") continue;
    if (ax.parameter.empty()) throw Error(ErrorCode::kConfig, "sweep axis has bounds but no parameter name");
    axes.push_back(ax);
  }
  c.sweep.axes = axes;
  if (c.full_scale) {
    if (c.experiment == Experiment::kDnmMap) {
      for (auto& ax : c.sweep.axes) ax.steps = std::max(ax.steps, 100);
    }
    if (c.experiment == Experiment::kScaling) c.scaling.n_list = {1, 2, 3, 4, 5, 6, 7, 8};
    if (c.experiment == Experiment::kExtremal) {
      c.extremal.mu.steps = std::max(c.extremal.mu.steps, 101);
      c.extremal.amplitude.steps = std::max(c.extremal.amplitude.steps, 101);
    }
  }

  const bool cavity_driven =
      c.experiment == Experiment::kMemristor || m.drive_c.has_value() ||
      std::any_of(c.sweep.axes.begin(), c.sweep.axes.end(),
                  [](const Axis& a) { return a.parameter == "amp_c"; });
  if (c.layout.initial_photons == LayoutConfig::kAuto) {
    c.layout.initial_photons = c.experiment == Experiment::kMemristor ? 0 : 1;
  }
  if (c.layout.fock_dim == LayoutConfig::kAuto) {
    c.layout.fock_dim = cavity_driven ? 8 : std::max(2, c.layout.initial_photons + 1);
  }
  if (c.layout.max_excitations == LayoutConfig::kAuto) {
    c.layout.max_excitations = cavity_driven ? LayoutConfig::kNone : c.layout.initial_photons;
  }
  if (c.layout.initial_photons >= c.layout.fock_dim) {
    throw Error(ErrorCode::kConfig, "layout.initial_photons must be below layout.fock_dim");
  }
  if (c.layout.max_excitations != LayoutConfig::kNone &&
      c.layout.max_excitations < c.layout.initial_photons) {
    throw Error(ErrorCode::kConfig, "layout.max_excitations excludes the initial state");
  }

  try {
    validate(m);
    c.integration.validate();
    c.fit.options.bounds.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  for (const auto& w : validity_warnings(m)) c.warnings.push_back(w);
}

}  // namespace

Experiment parse_experiment(std::string_view tag) {
  const auto& tags = experiment_tags();
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i] == tag) return static_cast<Experiment>(i);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown experiment '" + std::string(tag) + "' (expected " + join(tags) + ")");
}

std::string_view to_string(Experiment e) { return experiment_tags().at(static_cast<std::size_t>(e)); }

const std::vector<std::string>& experiment_tags() {
  static const std::vector<std::string> tags{"simulate", "dnm-map",   "scaling",  "extremal",
                                             "switch",   "fit-decay", "memristor"};
  return tags;
}

const std::vector<std::string>& sweepable_parameters() {
  static const std::vector<std::string> names{"omega_q", "g",     "gamma_r", "gamma_q", "alpha",
                                              "mu_q",    "amp_q", "mu_c",    "amp_c"};
  return names;
}

void set_model_parameter(ModelParams& p, std::string_view name, double value) {
  if (name == "omega_q") p.omega_q = value;
  else if (name == "g") p.g = value;
  else if (name == "gamma_r") p.gamma_r = value;
  else if (name == "gamma_q") p.gamma_q = value;
  else if (name == "alpha") p.alpha = value;
  else if (name == "mu_q") qubit_drive(p).frequency = value;
  else if (name == "amp_q") qubit_drive(p).amplitude = value;
  else if (name == "mu_c") cavity_drive(p).frequency = value;
  else if (name == "amp_c") cavity_drive(p).amplitude = value;
  else throw Error(ErrorCode::kInvalidArgument, "unknown model parameter '" + std::string(name) + "'");
}

double get_model_parameter(const ModelParams& p, std::string_view name) {
  if (name == "omega_q") return p.omega_q;
  if (name == "g") return p.g;
  if (name == "gamma_r") return p.gamma_r;
  if (name == "gamma_q") return p.gamma_q;
  if (name == "alpha") return p.alpha_or_default();
  if (name == "mu_q") return p.drive_q ? p.drive_q->frequency : 0.0;
  if (name == "amp_q") return p.drive_q ? p.drive_q->amplitude : 0.0;
  if (name == "mu_c") return p.drive_c ? p.drive_c->frequency : 0.0;
  if (name == "amp_c") return p.drive_c ? p.drive_c->amplitude : 0.0;
  throw Error(ErrorCode::kInvalidArgument, "unknown model parameter '" + std::string(name) + "'");
}

double Axis::value(int i) const {
  if (i == steps - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

RunConfig parse_config(std::string_view text, std::span<const std::string> overrides,
                       std::optional<Experiment> experiment, std::string_view source) {
  RunConfig c;
  std::string section;
  std::vector<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    const auto comment = line.find_first_of("#;");
    const std::string body = trim(comment == std::string::npos ? line : line.substr(0, comment));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw Error(ErrorCode::kConfig, where + ": malformed section header '" + body + "'");
      section = trim(std::string_view(body).substr(1, body.size() - 2));
      if (!section_exists(section)) throw Error(ErrorCode::kConfig, where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kConfig, where + ": expected key = value, got '" + body + "'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const Field& fld = lookup(section, key, where);
    const std::string full = fld.section + "." + fld.key;
    if (std::find(seen.begin(), seen.end(), full) != seen.end()) {
      throw Error(ErrorCode::kConfig, where + ": duplicate key '" + full + "'");
    }
    seen.push_back(full);
    apply(c, fld, std::string_view(body).substr(eq + 1), where);
  }
  for (const auto& ov : overrides) {
    const std::string where = "--set " + ov;
    const auto eq = ov.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kConfig, where + ": expected key=value");
    const std::string path = trim(std::string_view(ov).substr(0, eq));
    const auto dot = path.find('.');
    const std::string sec = dot == std::string::npos ? std::string() : path.substr(0, dot);
    const std::string key = dot == std::string::npos ? path : path.substr(dot + 1);
    apply(c, lookup(sec, key, where), std::string_view(ov).substr(eq + 1), where);
  }
  if (experiment) c.experiment = *experiment;
  resolve(c);
  return c;
}

RunConfig load_config(const std::string& path, std::span<const std::string> overrides,
                      std::optional<Experiment> experiment) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides, experiment, path);
}

std::string echo_config(const RunConfig& c) {
  std::string out;
  std::string section;
  for (const auto& fld : fields()) {
    const auto value = fld.get(c);
    if (!value) continue;
    if (fld.section != section) {
      if (!section.empty()) out += "\n";
      section = fld.section;
      out += "[" + section + "]\n";
    }
    out += fld.key + " = " + *value + "\n";
  }
  return out;
}

std::string config_reference() {
  const RunConfig defaults;
  std::string out;
  for (const auto& fld : fields()) {
    const auto value = fld.get(defaults);
    char buf[64];
    std::snprintf(buf, sizeof buf, "  %-32s ", (fld.section + "." + fld.key).c_str());
    out += buf;
    out += "[" + value.value_or("none") + "] " + fld.help + "\n";
  }
  return out;
}

}  // namespace tnm
