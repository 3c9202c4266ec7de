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

// Reference dense generator vs the compressed-row kernel, serial and OpenMP.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "tnm/hilbert.hpp"
#include "tnm/kernels.hpp"
#include "tnm/model.hpp"

namespace {

using namespace tnm;

struct Setup {
  SystemLayout layout;
  OperatorSet ops;
  ModelParams params;
  ComplexMatrix rho;

  explicit Setup(int n)
      : layout(n, 8), ops(build_operators(layout)), rho(layout.dim()) {
    params.drive_q = QubitDrive{0.5, 1.0};
    params.drive_c = CavityDrive{0.2, 1.0, Waveform::kMemristor};
    std::mt19937_64 rng(1);
    std::normal_distribution<double> d;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
      for (std::size_t j = i; j < rho.dim(); ++j) {
        rho(i, j) = {d(rng), i == j ? 0.0 : d(rng)};
        rho(j, i) = std::conj(rho(i, j));
      }
    }
  }
};

void BM_Reference(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lindblad_rhs(0.3, s.rho, s.params, s.ops));
  state.counters["dim"] = static_cast<double>(s.layout.dim());
}

void BM_KernelSerial(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)));
  const LindbladKernel k = LindbladKernel::full_model(s.params, s.ops);
  ComplexMatrix out(s.layout.dim());
  for (auto _ : state) {
    k.evaluate_serial(0.3, s.rho, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["dim"] = static_cast<double>(s.layout.dim());
}

void BM_KernelParallel(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)));
  const LindbladKernel k = LindbladKernel::full_model(s.params, s.ops);
  ComplexMatrix out(s.layout.dim());
  for (auto _ : state) {
    k.evaluate(0.3, s.rho, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["dim"] = static_cast<double>(s.layout.dim());
  state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_Reference)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_KernelSerial)->Arg(1)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_KernelParallel)->Arg(1)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
