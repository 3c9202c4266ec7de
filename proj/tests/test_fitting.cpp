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

#include <cmath>

#include "doctest.h"
#include "tnm/error.hpp"
#include "tnm/fitting.hpp"

using namespace tnm;

TEST_CASE("linear fit of exact data") {
  const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  const LinearFit f = fit_linear(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK_FALSE(f.degenerate);
}

TEST_CASE("linear fit R^2 against a hand computation") {
  const std::vector<double> x{1, 2, 3}, y{1, 3, 2};
  // slope 0.5, intercept 1; residuals -0.5, 1, -0.5; SS_res 1.5, SS_tot 2.
  const LinearFit f = fit_linear(x, y);
  CHECK(f.slope == doctest::Approx(0.5));
  CHECK(f.r_squared == doctest::Approx(0.25));
}

TEST_CASE("constant data is flagged degenerate") {
  const std::vector<double> n{1, 2, 3, 4}, nd{2.5, 2.5, 2.5, 2.5};
  const PowerLawFit f = fit_power_law(n, nd);
  CHECK(f.degenerate);
  CHECK(f.r_squared == 1.0);
  CHECK(f.k == doctest::Approx(0.0));
}

TEST_CASE("power law recovers the exponent") {
  std::vector<double> n, nd;
  for (int i = 1; i <= 6; ++i) {
    n.push_back(i);
    nd.push_back(1.7 * std::pow(i, 0.55));
  }
  const PowerLawFit f = fit_power_law(n, nd);
  CHECK(f.k == doctest::Approx(0.55).epsilon(1e-12));
  CHECK(std::exp(f.log_prefactor) == doctest::Approx(1.7));
  CHECK(f.r_squared == doctest::Approx(1.0));
}

TEST_CASE("power law input checks") {
  CHECK_THROWS_AS(fit_power_law(std::vector<double>{1, 2}, std::vector<double>{1, 2}), Error);
  CHECK_THROWS_AS(fit_power_law(std::vector<double>{1, 2, 3}, std::vector<double>{1, 0, 2}), Error);
  CHECK_THROWS_AS(fit_power_law(std::vector<double>{0, 2, 3}, std::vector<double>{1, 1, 2}), Error);
}

TEST_CASE("simplex minimizes the Rosenbrock valley") {
  auto rosen = [](std::span<const double> x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  NelderMeadOptions opt;
  opt.tolerance = 1e-9;
  opt.max_evaluations = 10000;
  const std::vector<double> x0{-1.2, 1.0}, step{0.1, 0.1};
  const NelderMeadResult r = nelder_mead(rosen, x0, step, opt);
  CHECK(r.termination == Termination::kConverged);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("simplex stops at the evaluation budget and treats NaN as +inf") {
  std::size_t calls = 0;
  auto f = [&](std::span<const double> x) {
    ++calls;
    return x[0] < -0.5 ? std::nan("") : (x[0] - 3.0) * (x[0] - 3.0) + x[1] * x[1];
  };
  NelderMeadOptions opt;
  opt.max_evaluations = 25;
  const std::vector<double> x0{0.0, 0.0}, step{1.0, 1.0};
  const NelderMeadResult r = nelder_mead(f, x0, step, opt);
  CHECK(r.termination == Termination::kMaxEvaluations);
  CHECK(r.evaluations == calls);
  CHECK(calls <= 25 + 3);
  CHECK(std::isfinite(r.value));
}

TEST_CASE("decay bounds validation") {
  DecayBounds b;
  CHECK_NOTHROW(b.validate());
  b.b_min = 0.3;
  CHECK_THROWS_AS(b.validate(), Error);
  b = DecayBounds{};
  b.c_max = b.c_min;
  CHECK_THROWS_AS(b.validate(), Error);
}

TEST_CASE("effectively-constant classification") {
  DecayFit f;
  f.decay = {0.005, 0.2, 1.0};
  CHECK(f.ripple() == doctest::Approx(0.05));
  CHECK(f.effectively_constant());
  CHECK(f.mean_rate() == doctest::Approx(0.005));
  f.decay = {0.05, 0.023, 0.09};
  CHECK_FALSE(f.effectively_constant());
  CHECK(f.min_rate() < 0.0);
}

TEST_CASE("decay fit recovers a synthetic rate") {
  ComplexMatrix rho(2);
  rho(1, 1) = 1.0;
  IntegrationConfig cfg;
  cfg.dt = 0.1;
  cfg.t_max = 400.0;
  cfg.record_every = 10;
  const DecayRateModel truth{0.1, 0.05, 0.3};
  const Trajectory target = evolve_decay_model(rho, truth, ModelParams{}, cfg);
  DecayFitOptions opt;
  opt.grid_a = opt.grid_b = opt.grid_c = 5;
  opt.starts = 2;
  const DecayFit f = fit_decay_rate(target.times, target["D_S"], rho, ModelParams{}, cfg, opt);
  CHECK(f.decay.a == doctest::Approx(truth.a).epsilon(0.01));
  CHECK(f.decay.b == doctest::Approx(truth.b).epsilon(0.01));
  CHECK(f.decay.c == doctest::Approx(truth.c).epsilon(0.01));
  CHECK(f.residual <= f.best_grid_residual);
  CHECK(f.evaluations > 125);
}

TEST_CASE("diverging candidates score +inf without aborting the fit") {
  ComplexMatrix rho(2);
  rho(0, 0) = rho(1, 1) = 0.5;
  IntegrationConfig cfg;
  cfg.dt = 0.1;
  cfg.t_max = 300.0;
  cfg.record_every = 10;
  const Trajectory target = evolve_decay_model(rho, {0.02, 0.05, 1.2}, ModelParams{}, cfg);
  DecayFitOptions opt;
  opt.bounds.c_min = -2.0;
  opt.grid_a = opt.grid_b = opt.grid_c = 5;
  opt.starts = 1;
  opt.simplex.max_evaluations = 200;
  const DecayFit f = fit_decay_rate(target.times, target["D_S"], rho, ModelParams{}, cfg, opt);
  CHECK(f.diverged_evaluations > 0);
  CHECK(std::isfinite(f.residual));
}

TEST_CASE("decay fit rejects a target off the recording grid") {
  ComplexMatrix rho(2);
  rho(1, 1) = 1.0;
  IntegrationConfig cfg;
  cfg.dt = 0.1;
  cfg.t_max = 10.0;
  const std::vector<double> t{0.0, 3.3, 10.0}, d{1.0, 0.9, 0.8};
  DecayFitOptions opt;
  opt.grid_a = opt.grid_b = opt.grid_c = 2;
  CHECK_THROWS_AS(fit_decay_rate(t, d, rho, ModelParams{}, cfg, opt), Error);
}
