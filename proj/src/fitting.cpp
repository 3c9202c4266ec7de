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

#include "tnm/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "tnm/error.hpp"
#include "tnm/hilbert.hpp"
#include "tnm/kernels.hpp"
#include "tnm/measures.hpp"

namespace tnm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class TraceDistanceObserver final : public Observer {
 public:
  std::vector<std::string> names() const override { return {"D_S"}; }
  void observe(double, const ComplexMatrix& rho, const ComplexMatrix*,
               std::vector<double>& values) const override {
    values.push_back(trace_distance_to_vacuum(rho));
  }
};

}  // namespace

LinearFit fit_linear(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kDimensionMismatch, "fit_linear: x and y differ in length");
  if (x.size() < 2) throw Error(ErrorCode::kInvalidArgument, "fit_linear needs at least 2 points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::kInvalidArgument, "fit_linear: all x values coincide");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += r * r;
  }
  // Relative to the data scale, a spread this small is rounding noise.
  const double scale = std::max(1.0, std::abs(my));
  if (syy <= 1e-24 * scale * scale * n) {
    f.degenerate = true;
    f.r_squared = 1.0;
  } else {
    f.r_squared = 1.0 - ss_res / syy;
  }
  return f;
}

PowerLawFit fit_power_law(std::span<const double> ns, std::span<const double> nds) {
  if (ns.size() != nds.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "fit_power_law: ns and nds differ in length");
  }
  if (ns.size() < 3) throw Error(ErrorCode::kInvalidArgument, "fit_power_law needs at least 3 points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(ns[i] >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "fit_power_law: n must be >= 1");
    if (!(nds[i] > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "fit_power_law: N_D[" + std::to_string(i) + "] = " + std::to_string(nds[i]) +
                      " is not positive, log undefined");
    }
    lx.push_back(std::log(ns[i]));
    ly.push_back(std::log(nds[i]));
  }
  const LinearFit lin = fit_linear(lx, ly);
  return {lin.slope, lin.intercept, lin.r_squared, lin.degenerate};
}

std::string_view to_string(Termination t) {
  return t == Termination::kConverged ? "converged" : "max_evaluations";
}

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> x0, std::span<const double> initial_step,
                             const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  if (initial_step.size() != n || n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "nelder_mead: step size must match the dimension");
  }
  NelderMeadResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    const double v = objective(x);
    return std::isfinite(v) ? v : kInf;
  };

  std::vector<std::vector<double>> simplex(n + 1, std::vector<double>(x0.begin(), x0.end()));
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += initial_step[i];
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto point = [&](const std::vector<double>& base, double coef, std::vector<double>& out) {
    for (std::size_t d = 0; d < n; ++d) out[d] = centroid[d] + coef * (base[d] - centroid[d]);
  };

  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        double d2 = 0.0;
        for (std::size_t d = 0; d < n; ++d) d2 += std::pow(simplex[i][d] - simplex[j][d], 2);
        diameter = std::max(diameter, std::sqrt(d2));
      }
    }
    if (diameter < opt.tolerance) {
      result.termination = Termination::kConverged;
      break;
    }
    if (result.evaluations >= opt.max_evaluations) {
      result.termination = Termination::kMaxEvaluations;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d] / static_cast<double>(n);
    }

    point(simplex[worst], -opt.reflection, trial);
    const double fr = eval(trial);
    if (fr < values[best]) {
      point(simplex[worst], -opt.reflection * opt.expansion, trial2);
      const double fe = eval(trial2);
      if (fe < fr) {
        simplex[worst] = trial2;
        values[worst] = fe;
      } else {
        simplex[worst] = trial;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = trial;
      values[worst] = fr;
      continue;
    }
    // Contraction, outside if the reflection beat the worst vertex.
    const bool outside = fr < values[worst];
    if (outside) {
      point(simplex[worst], -opt.reflection * opt.contraction, trial2);
    } else {
      point(simplex[worst], opt.contraction, trial2);
    }
    const double fc = eval(trial2);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t d = 0; d < n; ++d) {
        simplex[i][d] = simplex[best][d] + opt.shrink * (simplex[i][d] - simplex[best][d]);
      }
      values[i] = eval(simplex[i]);
    }
  }
  const auto best_it = std::min_element(values.begin(), values.end());
  const std::size_t best = static_cast<std::size_t>(best_it - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  return result;
}

void DecayBounds::validate() const {
  const double lo[] = {a_min, b_min, c_min};
  const double hi[] = {a_max, b_max, c_max};
  const char* names[] = {"A", "B", "C"};
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]) || !(lo[i] < hi[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("decay bounds for ") + names[i] + " are empty or inverted: [" +
                      std::to_string(lo[i]) + ", " + std::to_string(hi[i]) + "]");
    }
  }
  if (a_min < 0.0) throw Error(ErrorCode::kInvalidArgument, "decay bound a_min must be >= 0");
}

double DecayFit::ripple() const {
  if (decay.a == 0.0) return 0.0;
  if (decay.b <= 0.0) return kInf;
  return 2.0 * decay.a / decay.b;
}

Trajectory evolve_decay_model(const ComplexMatrix& rho0_cavity, const DecayRateModel& decay,
                              const ModelParams& params, const IntegrationConfig& config) {
  const SystemLayout layout(0, static_cast<int>(rho0_cavity.dim()));
  const OperatorSet ops = build_operators(layout);
  const LindbladKernel kernel = LindbladKernel::decay_model(decay, params, ops);
  IntegrationConfig cfg = config;
  cfg.stop_when_steady = false;
  EvolveOptions options;
  options.project_state = false;
  const TraceDistanceObserver obs;
  const Observer* observers[] = {&obs};
  return evolve(rho0_cavity, kernel, cfg, observers, options);
}

DecayFit fit_decay_rate(std::span<const double> target_times, std::span<const double> target_d,
                        const ComplexMatrix& rho0_cavity, const ModelParams& params,
                        const IntegrationConfig& config, const DecayFitOptions& options) {
  const DecayBounds& bounds = options.bounds;
  bounds.validate();
  if (options.grid_a < 2 || options.grid_b < 2 || options.grid_c < 2) {
    throw Error(ErrorCode::kInvalidArgument, "decay fit grid needs at least 2 points per axis");
  }
  if (target_times.size() != target_d.size() || target_times.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "decay fit target needs matching times and values (>= 2)");
  }
  IntegrationConfig cfg = config;
  cfg.t_max = target_times.back();

  std::size_t diverged = 0;
  auto objective = [&](const DecayRateModel& model) -> double {
    Trajectory traj;
    try {
      traj = evolve_decay_model(rho0_cavity, model, params, cfg);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kDivergence) {
#pragma omp atomic
        ++diverged;
        return kInf;
      }
      throw Error(e.code(), std::string("decay model objective: ") + e.what());
    }
    const auto& d = traj["D_S"];
    if (traj.times.size() != target_times.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "decay fit target has " + std::to_string(target_times.size()) +
                      " samples but the recording grid has " + std::to_string(traj.times.size()));
    }
    double sse = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (std::abs(traj.times[k] - target_times[k]) > 1e-6) {
        throw Error(ErrorCode::kInvalidArgument, "decay fit target is not on the recording grid");
      }
      sse += (target_d[k] - d[k]) * (target_d[k] - d[k]);
    }
    return sse;
  };

  const double lo[] = {bounds.a_min, bounds.b_min, bounds.c_min};
  const double width[] = {bounds.a_max - bounds.a_min, bounds.b_max - bounds.b_min,
                          bounds.c_max - bounds.c_min};
  auto from_unit = [&](std::span<const double> u) {
    double v[3];
    for (int i = 0; i < 3; ++i) v[i] = lo[i] + width[i] * std::clamp(u[i], 0.0, 1.0);
    return DecayRateModel{v[0], v[1], v[2]};
  };

  // Grid seeding; each point owns its integrator.
  const int ga = options.grid_a, gb = options.grid_b, gc = options.grid_c;
  const std::size_t grid_size = static_cast<std::size_t>(ga) * gb * gc;
  std::vector<double> grid_values(grid_size);
  std::vector<std::array<double, 3>> grid_points(grid_size);
  for (int ia = 0; ia < ga; ++ia) {
    for (int ib = 0; ib < gb; ++ib) {
      for (int ic = 0; ic < gc; ++ic) {
        const std::size_t idx = (static_cast<std::size_t>(ia) * gb + ib) * gc + ic;
        grid_points[idx] = {static_cast<double>(ia) / (ga - 1), static_cast<double>(ib) / (gb - 1),
                            static_cast<double>(ic) / (gc - 1)};
      }
    }
  }
  std::vector<std::string> grid_errors(grid_size);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t idx = 0; idx < grid_size; ++idx) {
    try {
      grid_values[idx] = objective(from_unit(grid_points[idx]));
    } catch (const std::exception& e) {
      grid_errors[idx] = e.what();
    }
  }
  for (const auto& err : grid_errors) {
    if (!err.empty()) throw Error(ErrorCode::kIntegrationFailure, err);
  }
  std::vector<std::size_t> ranked(grid_size);
  std::iota(ranked.begin(), ranked.end(), 0);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](std::size_t l, std::size_t r) { return grid_values[l] < grid_values[r]; });
  const std::size_t best_idx = ranked.front();

  DecayFit fit;
  fit.best_grid_residual = grid_values[best_idx];
  fit.best_grid_seed = from_unit(grid_points[best_idx]);
  fit.decay = fit.best_grid_seed;
  fit.residual = fit.best_grid_residual;

  auto unit_objective = [&](std::span<const double> u) {
    for (double x : u) {
      if (x < 0.0 || x > 1.0) return kInf;
    }
    return objective(from_unit(u));
  };
  const int counts[] = {ga, gb, gc};
  std::size_t nm_evaluations = 0;
  const std::size_t starts = std::min<std::size_t>(std::max(options.starts, 1), grid_size);
  for (std::size_t s = 0; s < starts; ++s) {
    if (!std::isfinite(grid_values[ranked[s]])) break;
    // Simplex in unit-cube coordinates, first step half a grid cell inward.
    const std::array<double, 3> seed = grid_points[ranked[s]];
    std::vector<double> step(3);
    for (int i = 0; i < 3; ++i) {
      const double half_cell = 0.5 / (counts[i] - 1);
      step[i] = seed[i] + half_cell <= 1.0 ? half_cell : -half_cell;
    }
    const NelderMeadResult nm = nelder_mead(unit_objective, seed, step, options.simplex);
    nm_evaluations += nm.evaluations;
    if (s == 0) fit.termination = nm.termination;
    if (nm.value < fit.residual) {
      fit.decay = from_unit(nm.x);
      fit.residual = nm.value;
      fit.termination = nm.termination;
    }
  }
  fit.evaluations = grid_size + nm_evaluations;
  fit.diverged_evaluations = diverged;
  return fit;
}

}  // namespace tnm
