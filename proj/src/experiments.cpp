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

#include "tnm/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <numbers>

#include "tnm/error.hpp"
#include "tnm/fitting.hpp"
#include "tnm/kernels.hpp"

#ifndef TNM_VERSION
#define TNM_VERSION "0.0.0"
#endif

namespace tnm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int worker_count(const RunConfig& c) {
  return c.output.workers > 0 ? c.output.workers : omp_get_max_threads();
}

std::string describe(std::initializer_list<std::pair<std::string_view, double>> coords) {
  std::string out;
  for (const auto& [name, value] : coords) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%.*s=%.17g", out.empty() ? "" : ", ",
                  static_cast<int>(name.size()), name.data(), value);
    out += buf;
  }
  return out;
}

void add_scalar(ExperimentResult& r, std::string name, double v) { r.scalars.emplace_back(std::move(name), v); }

std::string g_label(double g) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", g);
  return buf;
}

struct Cell {
  double n_d = kNaN;
  std::string error;
};

}  // namespace

std::size_t Table::column(std::string_view n) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == n) return i;
  }
  throw Error(ErrorCode::kInvalidArgument, "table '" + name + "' has no column '" + std::string(n) + "'");
}

std::vector<double> Table::values(std::string_view n) const {
  const std::size_t c = column(n);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[c]);
  return out;
}

const Table& ExperimentResult::table(std::string_view name) const {
  for (const auto& t : tables) {
    if (t.name == name) return t;
  }
  throw Error(ErrorCode::kInvalidArgument, "result has no table '" + std::string(name) + "'");
}

double ExperimentResult::scalar(std::string_view name) const {
  for (const auto& [k, v] : scalars) {
    if (k == name) return v;
  }
  throw Error(ErrorCode::kInvalidArgument, "result has no scalar '" + std::string(name) + "'");
}

bool ExperimentResult::has_scalar(std::string_view name) const {
  return std::any_of(scalars.begin(), scalars.end(), [&](const auto& kv) { return kv.first == name; });
}

std::string version_string() { return TNM_VERSION; }

SystemLayout make_layout(const RunConfig& c, int n_qubits) {
  std::optional<int> cap;
  if (c.layout.max_excitations >= 0) cap = c.layout.max_excitations;
  return SystemLayout(n_qubits, c.layout.fock_dim, cap, c.layout.dim_cap);
}

DnmResult compute_dnm(const ModelParams& params, const RunConfig& c, int n_qubits) {
  const SystemLayout layout = make_layout(c, n_qubits);
  const OperatorSet ops = build_operators(layout);
  const LindbladKernel kernel = LindbladKernel::full_model(params, ops);
  const CavityObserver observer(layout);
  const Observer* observers[] = {&observer};
  const Trajectory traj = evolve(cavity_fock_with_ground_qubits(layout, c.layout.initial_photons), kernel,
                                 c.integration, observers);
  return dnm(traj.times, traj["D_S"], traj.reached_steady);
}

ExperimentResult run_simulate(const RunConfig& c) {
  ExperimentResult r;
  r.tag = "simulate";
  const SystemLayout layout = make_layout(c, c.layout.n_qubits);
  const OperatorSet ops = build_operators(layout);
  const LindbladKernel kernel = LindbladKernel::full_model(c.model, ops);
  const CavityObserver cavity(layout);
  const MemristorObserver memristor(c.model, ops);
  std::vector<const Observer*> observers{&cavity};
  if (c.model.drive_c) observers.push_back(&memristor);
  const Trajectory traj = evolve(cavity_fock_with_ground_qubits(layout, c.layout.initial_photons), kernel,
                                 c.integration, observers);

  Table t{"series", {{"t", "1/omega_r"}}, {}};
  for (const auto& name : traj.names) {
    t.columns.push_back({name, name == "Ndot" || name == "O" ? "omega_r" : ""});
  }
  for (std::size_t k = 0; k < traj.size(); ++k) {
    std::vector<double> row{traj.times[k]};
    for (const auto& s : traj.series) row.push_back(s[k]);
    t.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(t));
  const DnmResult d = dnm(traj.times, traj["D_S"], traj.reached_steady);
  add_scalar(r, "N_D", d.n_d);
  add_scalar(r, "dim", static_cast<double>(layout.dim()));
  add_scalar(r, "steps", static_cast<double>(traj.steps));
  add_scalar(r, "renormalizations", static_cast<double>(traj.renormalizations));
  add_scalar(r, "reached_steady", traj.reached_steady ? 1.0 : 0.0);
  if (traj.renormalizations > 0) {
    r.notes.push_back("trace renormalized " + std::to_string(traj.renormalizations) + " times");
  }
  r.plots.push_back({"trace_distance", "Cavity trace distance to vacuum", PlotKind::kLines, "series", "t", "D_S", ""});
  r.plots.push_back({"photons", "Cavity photon number", PlotKind::kLines, "series", "t", "N", ""});
  return r;
}

ExperimentResult run_dnm_map(const RunConfig& c) {
  if (c.sweep.axes.empty() || c.sweep.axes.size() > 2) {
    throw Error(ErrorCode::kConfig, "dnm-map needs one or two sweep axes");
  }
  ExperimentResult r;
  r.tag = "dnm-map";
  const auto& axes = c.sweep.axes;
  const int s1 = axes[0].steps;
  const int s2 = axes.size() > 1 ? axes[1].steps : 1;
  const std::size_t cells = static_cast<std::size_t>(s1) * static_cast<std::size_t>(s2);
  std::vector<Cell> out(cells);

#pragma omp parallel for schedule(dynamic) num_threads(worker_count(c))
  for (std::size_t idx = 0; idx < cells; ++idx) {
    const int i = static_cast<int>(idx / static_cast<std::size_t>(s2));
    const int j = static_cast<int>(idx % static_cast<std::size_t>(s2));
    try {
      ModelParams p = c.model;
      set_model_parameter(p, axes[0].parameter, axes[0].value(i));
      if (axes.size() > 1) set_model_parameter(p, axes[1].parameter, axes[1].value(j));
      if (p.drive_q && p.drive_q->amplitude == 0.0) p.drive_q.reset();
      if (p.drive_c && p.drive_c->amplitude == 0.0) p.drive_c.reset();
      out[idx].n_d = compute_dnm(p, c, c.layout.n_qubits).n_d;
    } catch (const std::exception& e) {
      out[idx].error = e.what();
    }
  }

  Table t{"map", {{axes[0].parameter, "omega_r"}}, {}};
  if (axes.size() > 1) t.columns.push_back({axes[1].parameter, "omega_r"});
  t.columns.push_back({"N_D", ""});
  for (std::size_t idx = 0; idx < cells; ++idx) {
    const int i = static_cast<int>(idx / static_cast<std::size_t>(s2));
    const int j = static_cast<int>(idx % static_cast<std::size_t>(s2));
    std::vector<double> row{axes[0].value(i)};
    if (axes.size() > 1) row.push_back(axes[1].value(j));
    row.push_back(out[idx].n_d);
    if (!out[idx].error.empty()) {
      r.failures.push_back({axes.size() > 1 ? describe({{axes[0].parameter, row[0]}, {axes[1].parameter, row[1]}})
                                            : describe({{axes[0].parameter, row[0]}}),
                            out[idx].error});
    }
    t.rows.push_back(std::move(row));
  }
  const auto nd = t.values("N_D");
  std::size_t arg = 0;
  for (std::size_t k = 0; k < nd.size(); ++k) {
    if (!std::isnan(nd[k]) && (std::isnan(nd[arg]) || nd[k] > nd[arg])) arg = k;
  }
  add_scalar(r, "max_N_D", nd[arg]);
  add_scalar(r, "argmax_" + axes[0].parameter, t.rows[arg][0]);
  if (axes.size() > 1) add_scalar(r, "argmax_" + axes[1].parameter, t.rows[arg][1]);
  add_scalar(r, "failed_points", static_cast<double>(r.failures.size()));
  if (axes.size() > 1) {
    r.plots.push_back({"dnm_map", "Dynamical non-Markovianity N_D", PlotKind::kHeatmap, "map", axes[1].parameter,
                       axes[0].parameter, "N_D"});
  } else {
    r.plots.push_back({"dnm_map", "Dynamical non-Markovianity N_D", PlotKind::kLines, "map", axes[0].parameter,
                       "N_D", ""});
  }
  r.tables.push_back(std::move(t));
  return r;
}

ExperimentResult run_scaling(const RunConfig& c) {
  ExperimentResult r;
  r.tag = "scaling";
  const auto& gs = c.scaling.g_list;
  const auto& ns = c.scaling.n_list;
  const std::size_t cells = gs.size() * ns.size();
  std::vector<Cell> out(cells);
#pragma omp parallel for schedule(dynamic) num_threads(worker_count(c))
  for (std::size_t idx = 0; idx < cells; ++idx) {
    try {
      ModelParams p = c.model;
      p.g = gs[idx / ns.size()];
      out[idx].n_d = compute_dnm(p, c, ns[idx % ns.size()]).n_d;
    } catch (const std::exception& e) {
      out[idx].error = e.what();
    }
  }
  Table data{"scaling", {{"g", "omega_r"}, {"n", ""}, {"N_D", ""}}, {}};
  Table fits{"fits", {{"g", "omega_r"}, {"k", ""}, {"log_prefactor", ""}, {"r_squared", ""}, {"monotonic", ""}}, {}};
  for (std::size_t gi = 0; gi < gs.size(); ++gi) {
    std::vector<double> nv, dv;
    bool complete = true;
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
      const Cell& cell = out[gi * ns.size() + ni];
      data.rows.push_back({gs[gi], static_cast<double>(ns[ni]), cell.n_d});
      if (!cell.error.empty()) {
        complete = false;
        r.failures.push_back({describe({{"g", gs[gi]}, {"n", static_cast<double>(ns[ni])}}), cell.error});
      }
      nv.push_back(ns[ni]);
      dv.push_back(cell.n_d);
    }
    bool monotonic = complete;
    for (std::size_t k = 1; k < dv.size() && monotonic; ++k) monotonic = dv[k] > dv[k - 1] && nv[k] > nv[k - 1];
    PowerLawFit fit{kNaN, kNaN, kNaN, false};
    if (complete) {
      try {
        fit = fit_power_law(nv, dv);
      } catch (const Error& e) {
        r.notes.push_back("g=" + g_label(gs[gi]) + ": power-law fit skipped: " + e.what());
      }
    }
    fits.rows.push_back({gs[gi], fit.k, fit.log_prefactor, fit.r_squared, monotonic ? 1.0 : 0.0});
    add_scalar(r, "k_g" + g_label(gs[gi]), fit.k);
    add_scalar(r, "r_squared_g" + g_label(gs[gi]), fit.r_squared);
    add_scalar(r, "monotonic_g" + g_label(gs[gi]), monotonic ? 1.0 : 0.0);
    if (fit.degenerate) r.notes.push_back("g=" + g_label(gs[gi]) + ": N_D constant in n, R^2 reported as 1");
  }
  r.tables.push_back(std::move(data));
  r.tables.push_back(std::move(fits));
  r.plots.push_back({"scaling", "N_D versus qubit number", PlotKind::kLines, "scaling", "n", "N_D", "g"});
  r.plots.push_back({"scaling_loglog", "N_D versus qubit number (log-log)", PlotKind::kLogLog, "scaling", "n", "N_D",
                     "g"});
  return r;
}

ExperimentResult run_extremal_dnm(const RunConfig& c) {
  ExperimentResult r;
  r.tag = "extremal";
  const auto& gs = c.extremal.g_list;
  const auto& ns = c.extremal.n_list;
  const Axis& mu = c.extremal.mu;
  const Axis& amp = c.extremal.amplitude;
  // Per (g, n): the undriven point first, then the driving grid.
  const std::size_t per = 1 + static_cast<std::size_t>(mu.steps) * static_cast<std::size_t>(amp.steps);
  const std::size_t cells = gs.size() * ns.size() * per;
  std::vector<Cell> out(cells);
#pragma omp parallel for schedule(dynamic) num_threads(worker_count(c))
  for (std::size_t idx = 0; idx < cells; ++idx) {
    const std::size_t block = idx / per;
    const std::size_t local = idx % per;
    try {
      ModelParams p = c.model;
      p.g = gs[block / ns.size()];
      p.drive_q.reset();
      if (local > 0) {
        const int i = static_cast<int>((local - 1) / static_cast<std::size_t>(amp.steps));
        const int j = static_cast<int>((local - 1) % static_cast<std::size_t>(amp.steps));
        if (amp.value(j) != 0.0) p.drive_q = QubitDrive{amp.value(j), mu.value(i)};
      }
      out[idx].n_d = compute_dnm(p, c, ns[block % ns.size()]).n_d;
    } catch (const std::exception& e) {
      out[idx].error = e.what();
    }
  }

  Table grid{"grid", {{"g", "omega_r"}, {"n", ""}, {"mu_q", "omega_r"}, {"amp_q", "omega_r"}, {"N_D", ""}}, {}};
  Table ext{"extremal",
            {{"g", "omega_r"},
             {"n", ""},
             {"undriven_N_D", ""},
             {"min_N_D", ""},
             {"argmin_mu_q", "omega_r"},
             {"argmin_amp_q", "omega_r"},
             {"max_N_D", ""},
             {"argmax_mu_q", "omega_r"},
             {"argmax_amp_q", "omega_r"}},
            {}};
  for (std::size_t block = 0; block < gs.size() * ns.size(); ++block) {
    const double g = gs[block / ns.size()];
    const double n = ns[block % ns.size()];
    const Cell& undriven = out[block * per];
    if (!undriven.error.empty()) r.failures.push_back({describe({{"g", g}, {"n", n}, {"amp_q", 0.0}}), undriven.error});
    double lo = kNaN, hi = kNaN, lo_mu = kNaN, lo_amp = kNaN, hi_mu = kNaN, hi_amp = kNaN;
    for (std::size_t local = 1; local < per; ++local) {
      const Cell& cell = out[block * per + local];
      const int i = static_cast<int>((local - 1) / static_cast<std::size_t>(amp.steps));
      const int j = static_cast<int>((local - 1) % static_cast<std::size_t>(amp.steps));
      grid.rows.push_back({g, n, mu.value(i), amp.value(j), cell.n_d});
      if (!cell.error.empty()) {
        r.failures.push_back(
            {describe({{"g", g}, {"n", n}, {"mu_q", mu.value(i)}, {"amp_q", amp.value(j)}}), cell.error});
        continue;
      }
      if (std::isnan(lo) || cell.n_d < lo) {
        lo = cell.n_d;
        lo_mu = mu.value(i);
        lo_amp = amp.value(j);
      }
      if (std::isnan(hi) || cell.n_d > hi) {
        hi = cell.n_d;
        hi_mu = mu.value(i);
        hi_amp = amp.value(j);
      }
    }
    ext.rows.push_back({g, n, undriven.n_d, lo, lo_mu, lo_amp, hi, hi_mu, hi_amp});
  }
  for (int n : ns) {
    std::vector<double> xs, ys;
    for (const auto& row : ext.rows) {
      if (row[1] == n && row[0] >= c.extremal.linear_fit_g_min && !std::isnan(row[6])) {
        xs.push_back(row[0]);
        ys.push_back(row[6]);
      }
    }
    if (xs.size() >= 3) {
      const LinearFit lf = fit_linear(xs, ys);
      add_scalar(r, "max_linear_slope_n" + std::to_string(n), lf.slope);
      add_scalar(r, "max_linear_r_squared_n" + std::to_string(n), lf.r_squared);
    } else {
      r.notes.push_back("n=" + std::to_string(n) + ": fewer than 3 couplings above linear_fit_g_min, no linear fit");
    }
  }
  r.tables.push_back(std::move(ext));
  r.tables.push_back(std::move(grid));
  r.plots.push_back({"extremal_min", "Minimum N_D over the driving grid", PlotKind::kLines, "extremal", "g", "min_N_D", "n"});
  r.plots.push_back({"extremal_max", "Maximum N_D over the driving grid", PlotKind::kLines, "extremal", "g", "max_N_D", "n"});
  return r;
}

ExperimentResult run_switching(const RunConfig& c) {
  ExperimentResult r;
  r.tag = "switch";
  const auto& s = c.switching;
  const SystemLayout layout = make_layout(c, c.layout.n_qubits);
  const OperatorSet ops = build_operators(layout);
  std::vector<ScheduleSegment> schedule;
  ModelParams before = c.model;
  before.drive_q = QubitDrive{s.amplitude, s.mu_before};
  ModelParams after = c.model;
  after.drive_q = QubitDrive{s.amplitude, s.mu_after};
  for (ModelParams* p : {&before, &after}) {
    if (p->drive_q->amplitude == 0.0) p->drive_q.reset();
  }
  const double t_switch = std::min(s.switch_time, c.integration.t_max);
  schedule.push_back({before, t_switch});
  if (c.integration.t_max > t_switch) schedule.push_back({after, c.integration.t_max - t_switch});
  else r.notes.push_back("t_max does not exceed switch_time; single segment");

  const CavityObserver observer(layout);
  const Observer* observers[] = {&observer};
  const Trajectory traj = evolve_piecewise(cavity_fock_with_ground_qubits(layout, c.layout.initial_photons),
                                           schedule, layout, ops, c.integration, observers);
  const auto& d = traj["D_S"];
  Table series{"series", {{"t", "1/omega_r"}, {"D_S", ""}, {"N", ""}}, {}};
  for (std::size_t k = 0; k < traj.size(); ++k) series.rows.push_back({traj.times[k], d[k], traj["N"][k]});

  Table segs{"segments",
             {{"segment", ""},
              {"t_start", "1/omega_r"},
              {"t_end", "1/omega_r"},
              {"mu_q", "omega_r"},
              {"positive_increments", ""},
              {"positive_mass", ""},
              {"monotonic", ""}},
             {}};
  std::vector<double> masses;
  for (std::size_t k = 0; k < traj.segment_starts.size(); ++k) {
    const std::size_t begin = traj.segment_starts[k];
    const std::size_t end = k + 1 < traj.segment_starts.size() ? traj.segment_starts[k + 1] + 1 : d.size();
    std::size_t count = 0;
    const double mass = positive_increment_mass(d, begin, end, s.increment_threshold, &count);
    masses.push_back(mass);
    segs.rows.push_back({static_cast<double>(k), traj.times[begin], traj.times[end - 1],
                         k == 0 ? s.mu_before : s.mu_after, static_cast<double>(count), mass,
                         count == 0 ? 1.0 : 0.0});
    add_scalar(r, "positive_mass_segment" + std::to_string(k + 1), mass);
    add_scalar(r, "positive_increments_segment" + std::to_string(k + 1), static_cast<double>(count));
  }
  if (masses.size() == 2) add_scalar(r, "mass_ratio", masses[0] > 0.0 ? masses[1] / masses[0] : kNaN);
  add_scalar(r, "N_D", dnm(traj.times, d).n_d);
  r.tables.push_back(std::move(series));
  r.tables.push_back(std::move(segs));
  r.plots.push_back({"switch", "Trace distance across the frequency switch", PlotKind::kLines, "series", "t", "D_S", ""});
  return r;
}

ExperimentResult run_decay_fit(const RunConfig& c) {
  ExperimentResult r;
  r.tag = "fit-decay";
  const auto& f = c.fit;
  IntegrationConfig cfg;
  cfg.dt = f.dt;
  cfg.t_max = f.horizon;
  cfg.record_every = f.record_every;
  const SystemLayout layout = make_layout(c, c.layout.n_qubits);
  const OperatorSet ops = build_operators(layout);
  const ComplexMatrix rho0 = cavity_fock_with_ground_qubits(layout, c.layout.initial_photons);
  const ComplexMatrix rho0_cavity = partial_trace_qubits(rho0, layout);

  Table series{"series", {{"mu_q", "omega_r"}, {"t", "1/omega_r"}, {"D_S", ""}, {"D_fit", ""}}, {}};
  Table fits{"fits",
             {{"mu_q", "omega_r"},
              {"A", "omega_r"},
              {"B", "omega_r"},
              {"C", ""},
              {"residual", ""},
              {"ripple", ""},
              {"mean_rate", "omega_r"},
              {"min_rate", "omega_r"},
              {"effectively_constant", ""},
              {"negative_rate", ""},
              {"N_D", ""},
              {"evaluations", ""},
              {"converged", ""}},
             {}};
  // Fits run one after another; each fit parallelizes its seed grid.
  omp_set_num_threads(worker_count(c));
  for (double mu : f.mu_list) {
    try {
      ModelParams p = c.model;
      p.drive_q = QubitDrive{f.amplitude, mu};
      if (f.amplitude == 0.0) p.drive_q.reset();
      const LindbladKernel kernel = LindbladKernel::full_model(p, ops);
      const CavityObserver observer(layout);
      const Observer* observers[] = {&observer};
      const Trajectory target = evolve(rho0, kernel, cfg, observers);
      const auto& d = target["D_S"];
      const DecayFit fit = fit_decay_rate(target.times, d, rho0_cavity, c.model, cfg, f.options);
      const Trajectory model = evolve_decay_model(rho0_cavity, fit.decay, c.model, cfg);
      const auto& dm = model["D_S"];
      for (std::size_t k = 0; k < target.size(); ++k) series.rows.push_back({mu, target.times[k], d[k], dm[k]});
      const bool constant = fit.effectively_constant();
      fits.rows.push_back({mu, fit.decay.a, fit.decay.b, fit.decay.c, fit.residual, fit.ripple(), fit.mean_rate(),
                           fit.min_rate(), constant ? 1.0 : 0.0, fit.min_rate() < 0.0 ? 1.0 : 0.0,
                           dnm(target.times, d).n_d, static_cast<double>(fit.evaluations),
                           fit.termination == Termination::kConverged ? 1.0 : 0.0});
      if (fit.termination != Termination::kConverged) {
        r.notes.push_back("mu_q=" + g_label(mu) + ": simplex stopped at the evaluation limit");
      }
      if (fit.diverged_evaluations > 0) {
        r.notes.push_back("mu_q=" + g_label(mu) + ": " + std::to_string(fit.diverged_evaluations) +
                          " candidate rates diverged and were scored +inf");
      }
    } catch (const std::exception& e) {
      r.failures.push_back({describe({{"mu_q", mu}}), e.what()});
      fits.rows.push_back({mu, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN});
    }
  }
  r.tables.push_back(std::move(series));
  r.tables.push_back(std::move(fits));
  r.plots.push_back({"fit_target", "Full-model trace distance", PlotKind::kLines, "series", "t", "D_S", "mu_q"});
  r.plots.push_back({"fit_model", "Fitted time-dependent decay model", PlotKind::kLines, "series", "t", "D_fit", "mu_q"});
  return r;
}

ExperimentResult run_memristor(const RunConfig& c) {
  ExperimentResult r;
  r.tag = "memristor";
  const auto& m = c.memristor;
  ModelParams p = c.model;
  p.drive_c = CavityDrive{m.amplitude, m.frequency, m.waveform};
  const double period = p.drive_c->period();
  const double t_start = m.transient_periods * period;
  IntegrationConfig cfg = c.integration;
  cfg.t_max = t_start + m.cycles * period;
  cfg.record_every = m.record_every;
  cfg.stop_when_steady = false;

  const SystemLayout layout = make_layout(c, c.layout.n_qubits);
  const OperatorSet ops = build_operators(layout);
  const LindbladKernel kernel = LindbladKernel::full_model(p, ops);
  const CavityObserver cavity(layout);
  const MemristorObserver mem(p, ops);
  const Observer* observers[] = {&cavity, &mem};
  const Trajectory traj = evolve(cavity_fock_with_ground_qubits(layout, c.layout.initial_photons), kernel, cfg,
                                 observers);
  const auto &I = traj["I"], &O = traj["O"], &F = traj["F"], &G = traj["G"], &res = traj["residual"];
  const auto& top = traj["top_fock"];

  double max_top = 0.0, max_res = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    max_top = std::max(max_top, top[k]);
    max_res = std::max(max_res, std::abs(res[k]));
  }
  std::size_t s0 = 0;
  while (s0 < traj.size() && traj.times[s0] < t_start - 1e-9 * std::max(1.0, t_start)) ++s0;

  Table series{"series", {{"t", "1/omega_r"}, {"I", ""}, {"O", "omega_r"}, {"F", "omega_r"}, {"G", "omega_r"}}, {}};
  double max_i = 0.0, max_o = 0.0, max_g = 0.0;
  for (std::size_t k = s0; k < traj.size(); ++k) {
    series.rows.push_back({traj.times[k], I[k], O[k], F[k], G[k]});
    max_i = std::max(max_i, std::abs(I[k]));
    max_o = std::max(max_o, std::abs(O[k]));
    max_g = std::max(max_g, std::abs(G[k]));
  }
  double pinch = kNaN;
  if (max_i > 0.0 && max_o > 0.0) {
    pinch = std::numeric_limits<double>::infinity();
    for (std::size_t k = s0; k < traj.size(); ++k) {
      pinch = std::min(pinch, I[k] * I[k] / (max_i * max_i) + O[k] * O[k] / (max_o * max_o));
    }
  } else {
    r.notes.push_back("I or O vanishes identically over the loop; pinch metric undefined");
  }

  Table cycles{"cycles", {{"cycle", ""}, {"t_start", "1/omega_r"}, {"loop_area", "omega_r"}}, {}};
  for (int cyc = 0; cyc < m.cycles; ++cyc) {
    const double a = t_start + cyc * period;
    const double b = a + period;
    double area = 0.0;
    for (std::size_t k = s0; k + 1 < traj.size(); ++k) {
      if (traj.times[k] < a - 1e-9 || traj.times[k + 1] > b + 1e-9) continue;
      area += 0.5 * (O[k] + O[k + 1]) * (I[k + 1] - I[k]);
    }
    cycles.rows.push_back({static_cast<double>(cyc), a, area});
    add_scalar(r, "loop_area_cycle" + std::to_string(cyc + 1), area);
  }
  add_scalar(r, "pinch_metric", pinch);
  add_scalar(r, "g_over_o", max_o > 0.0 ? max_g / max_o : kNaN);
  add_scalar(r, "max_abs_I", max_i);
  add_scalar(r, "max_abs_O", max_o);
  add_scalar(r, "max_abs_G", max_g);
  add_scalar(r, "max_identity_residual", max_res);
  add_scalar(r, "top_fock_population", max_top);
  add_scalar(r, "drive_period", period);
  if (max_top > m.truncation_threshold) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "truncation: top Fock level population %.3g exceeds %.3g; increase layout.fock_dim", max_top,
                  m.truncation_threshold);
    r.notes.emplace_back(buf);
  }
  r.tables.push_back(std::move(series));
  r.tables.push_back(std::move(cycles));
  r.plots.push_back({"memristor_loop", "Input-output loop", PlotKind::kParametric, "series", "I", "O", ""});
  r.plots.push_back({"memristor_series", "Output O(t)", PlotKind::kLines, "series", "t", "O", ""});
  return r;
}

ExperimentResult run_experiment(const RunConfig& c) {
  ExperimentResult r;
  switch (c.experiment) {
    case Experiment::kSimulate: r = run_simulate(c); break;
    case Experiment::kDnmMap: r = run_dnm_map(c); break;
    case Experiment::kScaling: r = run_scaling(c); break;
    case Experiment::kExtremal: r = run_extremal_dnm(c); break;
    case Experiment::kSwitch: r = run_switching(c); break;
    case Experiment::kFitDecay: r = run_decay_fit(c); break;
    case Experiment::kMemristor: r = run_memristor(c); break;
  }
  r.config_echo = echo_config(c);
  r.version = version_string();
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  r.timestamp = buf;
  for (const auto& w : c.warnings) r.notes.insert(r.notes.begin(), w);
  return r;
}

}  // namespace tnm
