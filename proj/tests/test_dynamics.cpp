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
#include "oracles.hpp"
#include "tnm/dynamics.hpp"
#include "tnm/error.hpp"
#include "tnm/hilbert.hpp"
#include "tnm/kernels.hpp"
#include "tnm/measures.hpp"

using namespace tnm;

namespace {

ModelParams closed() {
  ModelParams p;
  p.gamma_r = 0.0;
  p.gamma_q = 0.0;
  return p;
}

}  // namespace

TEST_CASE("bright-state oscillation with equal damping") {
  // One excitation shared by the cavity and n resonant qubits couples the
  // cavity to the symmetric qubit state at g sqrt(n); equal damping of every
  // constituent multiplies the populations by exp(-gamma t).
  ModelParams p;
  p.g = 0.05;
  p.gamma_r = p.gamma_q = 0.01;
  IntegrationConfig cfg;
  cfg.t_max = 200.0;
  for (int n = 1; n <= 4; ++n) {
    const SystemLayout layout(n, 2, 1);
    const OperatorSet ops = build_operators(layout);
    const LindbladKernel kernel = LindbladKernel::full_model(p, ops);
    const CavityObserver obs(layout);
    const Observer* observers[] = {&obs};
    const Trajectory tr = evolve(cavity_fock_with_ground_qubits(layout, 1), kernel, cfg, observers);
    double err = 0.0;
    for (std::size_t k = 0; k < tr.size(); ++k) {
      const double t = tr.times[k];
      const double c = std::cos(p.g * std::sqrt(n) * t);
      err = std::max(err, std::abs(tr["N"][k] - std::exp(-0.01 * t) * c * c));
    }
    CHECK(err < 1e-7);
    CHECK(tr.renormalizations == 0);
  }
}

TEST_CASE("capped and full layouts give the same cavity dynamics") {
  ModelParams p;
  p.omega_q = 0.9;
  p.drive_q = QubitDrive{0.5, 0.6};
  IntegrationConfig cfg;
  cfg.t_max = 50.0;
  const SystemLayout full(2, 2), capped(2, 2, 1);
  const OperatorSet fo = build_operators(full), co = build_operators(capped);
  const CavityObserver a(full), b(capped);
  const Observer* oa[] = {&a};
  const Observer* ob[] = {&b};
  const Trajectory ta = evolve(cavity_fock_with_ground_qubits(full, 1), LindbladKernel::full_model(p, fo), cfg, oa);
  const Trajectory tb =
      evolve(cavity_fock_with_ground_qubits(capped, 1), LindbladKernel::full_model(p, co), cfg, ob);
  REQUIRE(ta.size() == tb.size());
  for (std::size_t k = 0; k < ta.size(); ++k) CHECK(ta["D_S"][k] == doctest::Approx(tb["D_S"][k]).epsilon(1e-12));
}

TEST_CASE("trace and Hermiticity are preserved along a driven run") {
  ModelParams p;
  p.drive_q = QubitDrive{0.5, 1.0};
  p.drive_c = CavityDrive{0.2, 1.0, Waveform::kMemristor};
  const SystemLayout layout(2, 5);
  const OperatorSet ops = build_operators(layout);
  IntegrationConfig cfg;
  cfg.t_max = 20.0;
  EvolveOptions options;
  options.snapshot_layout = &layout;
  const CavityObserver obs(layout);
  const Observer* observers[] = {&obs};
  const Trajectory tr =
      evolve(cavity_fock_with_ground_qubits(layout, 0), LindbladKernel::full_model(p, ops), cfg, observers, options);
  for (std::size_t k = 0; k < tr.size(); ++k) {
    CHECK(tr["trace"][k] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tr["min_eigenvalue"][k] > -1e-10);
    CHECK(tr["purity"][k] <= 1.0 + 1e-12);
  }
}

TEST_CASE("sampling grid") {
  const SystemLayout layout(0, 2);
  const OperatorSet ops = build_operators(layout);
  const LindbladKernel k = LindbladKernel::full_model(ModelParams{}, ops);
  const CavityObserver obs(layout);
  const Observer* observers[] = {&obs};
  IntegrationConfig cfg;
  cfg.dt = 0.1;
  cfg.t_max = 1.05;  // not a multiple of dt
  cfg.record_every = 3;
  const Trajectory tr = evolve(cavity_fock_with_ground_qubits(layout, 1), k, cfg, observers);
  CHECK(tr.times.front() == 0.0);
  CHECK(tr.times.back() == doctest::Approx(1.05));
  CHECK(tr.steps == 11);
  CHECK(tr.size() == 5);  // t = 0, steps 3, 6, 9, 11
}

TEST_CASE("steady-state stop") {
  ModelParams p;
  p.gamma_r = 0.1;
  const SystemLayout layout(0, 2);
  const OperatorSet ops = build_operators(layout);
  const CavityObserver obs(layout);
  const Observer* observers[] = {&obs};
  IntegrationConfig cfg;
  cfg.t_max = 1000.0;
  cfg.stop_when_steady = true;
  cfg.steady_eps = 1e-3;
  cfg.steady_window = 10.0;
  const Trajectory tr =
      evolve(cavity_fock_with_ground_qubits(layout, 1), LindbladKernel::full_model(p, ops), cfg, observers);
  CHECK(tr.reached_steady);
  // exp(-0.1 t) < 1e-3 from t ~ 69; the window adds 10.
  CHECK(tr.times.back() < 100.0);
  CHECK(tr["D_S"].back() < 1e-3);
}

TEST_CASE("degenerate schedule equals a plain run") {
  ModelParams p;
  p.drive_q = QubitDrive{0.5, 1.0};
  const SystemLayout layout(1, 2, 1);
  const OperatorSet ops = build_operators(layout);
  const CavityObserver obs(layout);
  const Observer* observers[] = {&obs};
  IntegrationConfig cfg;
  cfg.t_max = 100.0;
  const ComplexMatrix rho0 = cavity_fock_with_ground_qubits(layout, 1);
  const Trajectory plain = evolve(rho0, LindbladKernel::full_model(p, ops), cfg, observers);
  const ScheduleSegment one[] = {{p, 100.0}};
  const Trajectory sched = evolve_piecewise(rho0, one, layout, ops, cfg, observers);
  CHECK(plain.times == sched.times);
  CHECK(plain["D_S"] == sched["D_S"]);

  // Splitting with identical parameters leaves the samples unchanged.
  const ScheduleSegment two[] = {{p, 40.0}, {p, 60.0}};
  const Trajectory split = evolve_piecewise(rho0, two, layout, ops, cfg, observers);
  CHECK(split.segment_starts.size() == 2);
  CHECK(split.times[split.segment_starts[1]] == doctest::Approx(40.0));
  REQUIRE(split.size() == plain.size());
  for (std::size_t k = 0; k < plain.size(); ++k) CHECK(split["D_S"][k] == doctest::Approx(plain["D_S"][k]).epsilon(1e-12));
}

TEST_CASE("initial state validation") {
  const SystemLayout layout(0, 2);
  const OperatorSet ops = build_operators(layout);
  const LindbladKernel k = LindbladKernel::full_model(ModelParams{}, ops);
  const CavityObserver obs(layout);
  const Observer* observers[] = {&obs};
  IntegrationConfig cfg;
  cfg.t_max = 1.0;
  ComplexMatrix bad(2);
  bad(0, 0) = 0.5;
  CHECK_THROWS_AS(evolve(bad, k, cfg, observers), Error);
  ComplexMatrix skew(2);
  skew(0, 0) = 1.0;
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(evolve(skew, k, cfg, observers), Error);
  CHECK_THROWS_AS(evolve(ComplexMatrix(3), k, cfg, observers), Error);
  IntegrationConfig neg = cfg;
  neg.dt = -1.0;
  CHECK_THROWS_AS(neg.validate(), Error);
}

TEST_CASE("negative decay rates that blow up are reported as divergence") {
  const SystemLayout layout(0, 2);
  const OperatorSet ops = build_operators(layout);
  const LindbladKernel k = LindbladKernel::decay_model({0.5, 0.01, -1.0}, ModelParams{}, ops);
  const CavityObserver obs(layout);
  const Observer* observers[] = {&obs};
  IntegrationConfig cfg;
  cfg.t_max = 1000.0;
  EvolveOptions options;
  options.project_state = false;
  ComplexMatrix rho0(2);
  rho0(0, 0) = rho0(1, 1) = 0.5;
  try {
    (void)evolve(rho0, k, cfg, observers, options);
    FAIL("expected divergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDivergence);
  }
}
