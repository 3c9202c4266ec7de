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

#include "doctest.h"
#include "tnm/config.hpp"
#include "tnm/error.hpp"

using namespace tnm;

namespace {

std::string error_of(std::string_view text, std::vector<std::string> overrides = {}) {
  try {
    (void)parse_config(text, overrides, std::nullopt, "test.ini");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfig);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("empty config gives the documented defaults") {
  const RunConfig c = parse_config("");
  CHECK(c.experiment == Experiment::kSimulate);
  CHECK(c.model == ModelParams{});
  CHECK(c.integration == IntegrationConfig{});
  CHECK(c.layout.n_qubits == 1);
  CHECK(c.layout.fock_dim == 2);
  CHECK(c.layout.max_excitations == 1);
  CHECK(c.layout.initial_photons == 1);
  CHECK(c.warnings.empty());
}

TEST_CASE("a single override changes only that field") {
  RunConfig base = parse_config("");
  const std::vector<std::string> ov{"g=0.07"};
  const RunConfig c = parse_config("", ov);
  CHECK(c.model.g == 0.07);
  base.model.g = 0.07;
  CHECK(c == base);
  const std::vector<std::string> dotted{"model.g=0.07"};
  CHECK(parse_config("", dotted) == c);
}

TEST_CASE("echo round-trips") {
  const std::string text =
      "[experiment]\ntag = memristor\n[model]\nomega_q = 0.5\namp_q = 0.5\nmu_q = 0.1\nalpha = 0.003\n"
      "[sweep]\naxis1 = g\naxis1_min = 0\naxis1_max = 0.1\naxis1_steps = 7\n"
      "[fit]\nmu_list = 0.2, 0.419\n[output]\nformats = csv\n";
  const RunConfig c = parse_config(text);
  const RunConfig again = parse_config(echo_config(c));
  CHECK(again == c);
  CHECK(echo_config(again) == echo_config(c));
  CHECK(c.layout.fock_dim == 8);
  CHECK(c.layout.max_excitations == LayoutConfig::kNone);
  CHECK(c.layout.initial_photons == 0);
  // Values survive at full precision.
  const std::vector<std::string> ov{"g=0.1234567890123456789"};
  const RunConfig p = parse_config("", ov);
  CHECK(parse_config(echo_config(p)).model.g == p.model.g);
}

TEST_CASE("unknown keys and sections name the offender and the line") {
  const std::string e1 = error_of("[model]\ng = 0.05\ncoupling = 0.1\n");
  CHECK(e1.find("coupling") != std::string::npos);
  CHECK(e1.find("test.ini:3") != std::string::npos);
  const std::string e2 = error_of("[modle]\n");
  CHECK(e2.find("modle") != std::string::npos);
  CHECK(error_of("", {"nonsense=1"}).find("nonsense") != std::string::npos);
}

TEST_CASE("type and range errors") {
  const std::string e1 = error_of("[model]\ng = strong\n");
  CHECK(e1.find("model.g") != std::string::npos);
  CHECK(e1.find("test.ini:2") != std::string::npos);
  CHECK(error_of("[layout]\nn_qubits = 2.5\n").find("layout.n_qubits") != std::string::npos);
  CHECK(error_of("[layout]\nn_qubits = 40\n").find("outside") != std::string::npos);
  CHECK(error_of("[integration]\ndt = -0.1\n").find("integration.dt") != std::string::npos);
  CHECK(error_of("[output]\nformats = csv, pdf\n").find("pdf") != std::string::npos);
  CHECK(error_of("[model]\ng = 0.1\ng = 0.2\n").find("duplicate") != std::string::npos);
  CHECK(error_of("[model]\njust text\n").find("test.ini:2") != std::string::npos);
}

TEST_CASE("ambiguous bare keys are rejected") {
  const std::string e = error_of("", {"amplitude=0.3"});
  CHECK(e.find("ambiguous") != std::string::npos);
  CHECK(e.find("switch.amplitude") != std::string::npos);
}

TEST_CASE("out-of-regime coupling warns but parses") {
  const std::vector<std::string> ov{"g=0.5"};
  const RunConfig c = parse_config("", ov);
  CHECK(c.model.g == 0.5);
  CHECK_FALSE(c.warnings.empty());
}

TEST_CASE("frequencies and times are rescaled to the cavity frequency") {
  const RunConfig c = parse_config("[model]\nomega_r = 2\nomega_q = 2\ng = 0.1\n[integration]\ndt = 0.005\nt_max = 1500\n");
  CHECK(c.model.omega_r == 1.0);
  CHECK(c.model.omega_q == doctest::Approx(1.0));
  CHECK(c.model.g == doctest::Approx(0.05));
  CHECK(c.integration.dt == doctest::Approx(0.01));
  CHECK(c.integration.t_max == doctest::Approx(3000.0));
  CHECK(parse_config(echo_config(c)).model == c.model);
}

TEST_CASE("experiment-dependent resolution") {
  const RunConfig map = parse_config("", {}, Experiment::kDnmMap);
  REQUIRE(map.sweep.axes.size() == 2);
  CHECK(map.sweep.axes[0].parameter == "g");
  CHECK(map.sweep.axes[0].steps == 21);
  const std::vector<std::string> full{"full_scale=true"};
  CHECK(parse_config("", full, Experiment::kDnmMap).sweep.axes[1].steps == 100);
  CHECK(parse_config("", full, Experiment::kScaling).scaling.n_list.back() == 8);
  CHECK(error_of("[sweep]\naxis1 = frequency\n").find("sweepable") != std::string::npos);
  CHECK(parse_config("[sweep]\naxis1 = none\naxis2 = none\n").sweep.axes.empty());
  CHECK(parse_config("[sweep]\naxis2 = none\n").sweep.axes.size() == 1);
}

TEST_CASE("sweep axis values hit both ends") {
  const Axis a{"g", 0.0, 0.1, 11};
  CHECK(a.value(0) == 0.0);
  CHECK(a.value(10) == 0.1);
  CHECK(a.value(5) == doctest::Approx(0.05));
}

TEST_CASE("model parameter access by name") {
  ModelParams p;
  for (const auto& name : sweepable_parameters()) {
    set_model_parameter(p, name, 0.25);
    CHECK(get_model_parameter(p, name) == 0.25);
  }
  CHECK_THROWS_AS(set_model_parameter(p, "omega_r", 1.0), Error);
}
