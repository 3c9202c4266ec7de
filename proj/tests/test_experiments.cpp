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
#include "tnm/experiments.hpp"
#include "tnm/output.hpp"

using namespace tnm;

namespace {

RunConfig config(Experiment e, std::vector<std::string> overrides) {
  return parse_config("", overrides, e, "test");
}

}  // namespace

TEST_CASE("dnm map: shape, decoupled column and determinism across worker counts") {
  std::vector<std::string> ov{"t_max=300",   "axis1=g",         "axis1_min=0",   "axis1_max=0.1",
                              "axis1_steps=3", "axis2=omega_q", "axis2_min=0.9", "axis2_max=1.1",
                              "axis2_steps=3", "workers=1"};
  const RunConfig first = config(Experiment::kDnmMap, ov);
  const ExperimentResult one = run_experiment(first);
  ov.back() = "workers=3";
  const ExperimentResult three = run_experiment(config(Experiment::kDnmMap, ov));
  const Table& t = one.table("map");
  REQUIRE(t.rows.size() == 9);
  for (const auto& row : t.rows) {
    if (row[0] == 0.0) CHECK(row[2] == 0.0);
    else CHECK(row[2] > 0.0);
  }
  CHECK(to_csv(t) == to_csv(three.table("map")));
  CHECK(one.failures.empty());
  CHECK(one.scalar("argmax_omega_q") == doctest::Approx(1.0));
  CHECK(parse_config(one.config_echo) == first);
}

TEST_CASE("dnm map records failing grid points and keeps the rest") {
  const std::vector<std::string> ov{"t_max=50", "axis1=gamma_r", "axis1_min=-0.01", "axis1_max=0.01",
                                    "axis1_steps=3", "axis2=none"};
  const ExperimentResult r = run_experiment(config(Experiment::kDnmMap, ov));
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].point.find("gamma_r") != std::string::npos);
  const auto nd = r.table("map").values("N_D");
  CHECK(std::isnan(nd[0]));
  CHECK(std::isfinite(nd[1]));
  CHECK(std::isfinite(nd[2]));
}

TEST_CASE("scaling grows with qubit number and carries a power-law fit") {
  const std::vector<std::string> ov{"t_max=1500", "scaling.g_list=0.05", "scaling.n_list=1,2,3"};
  const ExperimentResult r = run_experiment(config(Experiment::kScaling, ov));
  const auto nd = r.table("scaling").values("N_D");
  REQUIRE(nd.size() == 3);
  CHECK(nd[0] < nd[1]);
  CHECK(nd[1] < nd[2]);
  CHECK(r.scalar("monotonic_g0.05") == 1.0);
  CHECK(r.scalar("k_g0.05") > 0.0);
}

TEST_CASE("extremal values bracket the undriven value") {
  const std::vector<std::string> ov{"t_max=600", "extremal.g_list=0.05", "mu_steps=3", "amp_steps=3"};
  const ExperimentResult r = run_experiment(config(Experiment::kExtremal, ov));
  const Table& t = r.table("extremal");
  REQUIRE(t.rows.size() == 1);
  const double undriven = t.rows[0][t.column("undriven_N_D")];
  CHECK(t.rows[0][t.column("min_N_D")] <= undriven);
  CHECK(t.rows[0][t.column("max_N_D")] >= undriven);
  CHECK(r.table("grid").rows.size() == 9);
}

TEST_CASE("a switch to the same frequency reproduces the unswitched run") {
  const std::vector<std::string> ov{"t_max=200", "switch_time=80", "mu_before=1", "mu_after=1"};
  const ExperimentResult sw = run_experiment(config(Experiment::kSwitch, ov));
  const std::vector<std::string> plain{"t_max=200", "amp_q=0.5", "mu_q=1"};
  const ExperimentResult sim = run_experiment(config(Experiment::kSimulate, plain));
  const auto a = sw.table("series").values("D_S");
  const auto b = sim.table("series").values("D_S");
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-12));
  CHECK(sw.table("segments").rows.size() == 2);
  CHECK(sw.has_scalar("mass_ratio"));
}

TEST_CASE("memristor outputs vanish with no drive, no coupling and no loss") {
  const std::vector<std::string> ov{"memristor.amplitude=0", "g=0", "gamma_r=0", "fock_dim=4",
                                    "transient_periods=0"};
  const ExperimentResult r = run_experiment(config(Experiment::kMemristor, ov));
  for (const char* col : {"I", "O", "G"}) {
    for (double v : r.table("series").values(col)) CHECK(v == 0.0);
  }
  CHECK(std::isnan(r.scalar("pinch_metric")));
}

TEST_CASE("memristor run: identity, columns and truncation warning") {
  const std::vector<std::string> ov{"fock_dim=4", "memristor.record_every=5", "transient_periods=1"};
  const ExperimentResult r = run_experiment(config(Experiment::kMemristor, ov));
  CHECK(r.scalar("max_identity_residual") < 1e-10);
  const Table& t = r.table("series");
  CHECK(t.columns[0].name == "t");
  CHECK(t.columns[4].name == "G");
  CHECK(r.table("cycles").rows.size() == 1);
  // Four levels are too few for this drive.
  bool warned = false;
  for (const auto& n : r.notes) warned = warned || n.find("truncation") != std::string::npos;
  CHECK(warned);
}

TEST_CASE("decay fit runner produces overlaid series and classified fits") {
  const std::vector<std::string> ov{"fit.mu_list=0.419", "horizon=100", "grid_a=5",   "grid_b=5",
                                    "grid_c=5",          "starts=1",    "fit.max_evaluations=100"};
  const ExperimentResult r = run_experiment(config(Experiment::kFitDecay, ov));
  CHECK(r.failures.empty());
  const Table& fits = r.table("fits");
  REQUIRE(fits.rows.size() == 1);
  CHECK(std::isfinite(fits.rows[0][fits.column("A")]));
  const Table& s = r.table("series");
  CHECK(s.rows.size() == 101);
  CHECK(s.rows[0][s.column("D_fit")] == doctest::Approx(1.0));
}

TEST_CASE("simulate reports scalars and provenance") {
  const std::vector<std::string> ov{"t_max=100"};
  const ExperimentResult r = run_experiment(config(Experiment::kSimulate, ov));
  CHECK(r.has_scalar("N_D"));
  CHECK(r.scalar("renormalizations") == 0.0);
  CHECK_FALSE(r.version.empty());
  CHECK(r.timestamp.size() == 20);
  CHECK(parse_config(r.config_echo, {}, std::nullopt) == config(Experiment::kSimulate, ov));
}
