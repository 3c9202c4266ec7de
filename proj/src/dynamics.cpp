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

#include "tnm/dynamics.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "tnm/error.hpp"

namespace tnm {

namespace {

constexpr double kTraceAbort = 1e-4;
constexpr double kTraceRenormalize = 1e-9;
constexpr double kDivergenceBound = 1e6;

// dst = a + s * b
void axpy_into(ComplexMatrix& dst, const ComplexMatrix& a, double s, const ComplexMatrix& b) {
  const std::size_t count = a.size();
  Complex* d = dst.data();
  const Complex* pa = a.data();
  const Complex* pb = b.data();
  for (std::size_t k = 0; k < count; ++k) d[k] = pa[k] + s * pb[k];
}

class Integrator {
 public:
  Integrator(const ComplexMatrix& rho0, const IntegrationConfig& config,
             std::span<const Observer* const> observers, const EvolveOptions& options)
      : config_(config), observers_(observers), options_(options), rho_(rho0) {
    config.validate();
    const std::size_t n = rho0.dim();
    k1_ = ComplexMatrix(n);
    k2_ = ComplexMatrix(n);
    k3_ = ComplexMatrix(n);
    k4_ = ComplexMatrix(n);
    tmp_ = ComplexMatrix(n);
    for (const Observer* obs : observers_) {
      for (auto& name : obs->names()) traj_.names.push_back(std::move(name));
      needs_rhs_ = needs_rhs_ || obs->needs_rhs();
    }
    traj_.series.resize(traj_.names.size());
    if (config.stop_when_steady) {
      for (std::size_t k = 0; k < traj_.names.size(); ++k) {
        if (traj_.names[k] == options.steady_series) steady_column_ = static_cast<std::ptrdiff_t>(k);
      }
      if (steady_column_ < 0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "stop_when_steady needs an observer producing '" + options.steady_series + "'");
      }
    }
  }

  // Returns false once the steady-state stop fired.
  bool run(const RightHandSide& rhs, double duration) {
    if (rhs.dim() != rho_.dim()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "generator is " + std::to_string(rhs.dim()) + "-dimensional, state is " +
                      std::to_string(rho_.dim()));
    }
    if (!(duration > 0.0)) throw Error(ErrorCode::kInvalidArgument, "segment duration must be positive");
    std::size_t steps = static_cast<std::size_t>(std::llround(duration / config_.dt));
    if (steps == 0 || std::abs(static_cast<double>(steps) * config_.dt - duration) > 1e-9 * duration) {
      steps = static_cast<std::size_t>(std::ceil(duration / config_.dt - 1e-9));
    }
    const double h = duration / static_cast<double>(steps);
    const double t0 = t_;

    traj_.segment_starts.push_back(traj_.times.size());
    if (!started_) {
      started_ = true;
      if (sample(rhs, t0)) return false;
    } else if (!traj_.times.empty()) {
      // The boundary was recorded as the last sample of the previous segment.
      traj_.segment_starts.back() = traj_.times.size() - 1;
    }
    for (std::size_t s = 1; s <= steps; ++s) {
      const double t_prev = t0 + static_cast<double>(s - 1) * h;
      step(rhs, t_prev, h);
      t_ = (s == steps) ? t0 + duration : t0 + static_cast<double>(s) * h;
      ++traj_.steps;
      if (s % static_cast<std::size_t>(config_.record_every) == 0 || s == steps) {
        if (sample(rhs, t_)) return false;
      }
    }
    return true;
  }

  Trajectory finish() { return std::move(traj_); }

 private:
  void step(const RightHandSide& rhs, double t, double h) {
    rhs.evaluate(t, rho_, k1_);
    axpy_into(tmp_, rho_, 0.5 * h, k1_);
    rhs.evaluate(t + 0.5 * h, tmp_, k2_);
    axpy_into(tmp_, rho_, 0.5 * h, k2_);
    rhs.evaluate(t + 0.5 * h, tmp_, k3_);
    axpy_into(tmp_, rho_, h, k3_);
    rhs.evaluate(t + h, tmp_, k4_);
    const std::size_t count = rho_.size();
    Complex* r = rho_.data();
    const Complex* a = k1_.data();
    const Complex* b = k2_.data();
    const Complex* c = k3_.data();
    const Complex* d = k4_.data();
    const double w = h / 6.0;
    for (std::size_t k = 0; k < count; ++k) r[k] += w * (a[k] + 2.0 * (b[k] + c[k]) + d[k]);

    const double tr = rho_.trace().real();
    if (!std::isfinite(tr)) fail(ErrorCode::kIntegrationFailure, t + h, "state became non-finite");
    if (!options_.project_state) {
      if (!std::isfinite(rho_.max_abs()) || rho_.max_abs() > kDivergenceBound) {
        fail(ErrorCode::kDivergence, t + h, "state norm exceeded the divergence bound");
      }
    }
    const double drift = std::abs(tr - 1.0);
    if (drift > kTraceAbort) {
      std::ostringstream msg;
      msg << "trace drifted to " << tr << "; step dt=" << h << " is too large";
      fail(ErrorCode::kIntegrationFailure, t + h, msg.str());
    }
    if (options_.project_state) {
      rho_.hermitize();
      if (drift > kTraceRenormalize) {
        rho_ *= Complex(1.0 / tr);
        ++traj_.renormalizations;
      }
    }
  }

  // Records one sample; returns true when the steady-state stop fires.
  bool sample(const RightHandSide& rhs, double t) {
    for (std::size_t k = 0; k < rho_.size(); ++k) {
      if (!std::isfinite(rho_.data()[k].real()) || !std::isfinite(rho_.data()[k].imag())) {
        fail(ErrorCode::kIntegrationFailure, t, "state became non-finite");
      }
    }
    const ComplexMatrix* rhs_ptr = nullptr;
    if (needs_rhs_) {
      rhs.evaluate(t, rho_, k1_);
      rhs_ptr = &k1_;
    }
    values_.clear();
    for (const Observer* obs : observers_) obs->observe(t, rho_, rhs_ptr, values_);
    if (values_.size() != traj_.names.size()) {
      throw Error(ErrorCode::kInvalidArgument, "observer produced the wrong number of values");
    }
    traj_.times.push_back(t);
    for (std::size_t k = 0; k < values_.size(); ++k) traj_.series[k].push_back(values_[k]);
    if (options_.snapshot_layout != nullptr) {
      traj_.snapshots.push_back(partial_trace_qubits(rho_, *options_.snapshot_layout));
    }

    if (steady_column_ >= 0) {
      const double metric = values_[static_cast<std::size_t>(steady_column_)];
      if (metric < config_.steady_eps) {
        if (!below_since_) below_since_ = t;
        if (t - *below_since_ >= config_.steady_window) {
          traj_.reached_steady = true;
          return true;
        }
      } else {
        below_since_.reset();
      }
    }
    return false;
  }

  [[noreturn]] void fail(ErrorCode code, double t, const std::string& what) {
    std::ostringstream msg;
    msg << what << " at t=" << t;
    throw Error(code, msg.str());
  }

  IntegrationConfig config_;
  std::span<const Observer* const> observers_;
  EvolveOptions options_;
  ComplexMatrix rho_;
  ComplexMatrix k1_, k2_, k3_, k4_, tmp_;
  Trajectory traj_;
  std::vector<double> values_;
  bool needs_rhs_ = false;
  bool started_ = false;
  double t_ = 0.0;
  std::ptrdiff_t steady_column_ = -1;
  std::optional<double> below_since_;
};

void check_initial_state(const ComplexMatrix& rho0) {
  if (rho0.max_asymmetry() > 1e-10) {
    throw Error(ErrorCode::kNotHermitian, "initial state is not Hermitian");
  }
  const double tr = rho0.trace().real();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw Error(ErrorCode::kInvalidArgument, "initial state has trace " + std::to_string(tr));
  }
}

}  // namespace

void IntegrationConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw Error(ErrorCode::kInvalidArgument, "t_max must be positive");
  }
  if (record_every < 1) throw Error(ErrorCode::kInvalidArgument, "record_every must be >= 1");
  if (!(steady_eps > 0.0)) throw Error(ErrorCode::kInvalidArgument, "steady_eps must be positive");
  if (steady_window < 0.0) throw Error(ErrorCode::kInvalidArgument, "steady_window must be >= 0");
}

bool Trajectory::has(std::string_view name) const {
  for (const auto& n : names) {
    if (n == name) return true;
  }
  return false;
}

const std::vector<double>& Trajectory::operator[](std::string_view name) const {
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] == name) return series[k];
  }
  throw Error(ErrorCode::kInvalidArgument, "trajectory has no series '" + std::string(name) + "'");
}

Trajectory evolve_segments(const ComplexMatrix& rho0, std::span<const RhsSegment> segments,
                           const IntegrationConfig& config,
                           std::span<const Observer* const> observers,
                           const EvolveOptions& options) {
  check_initial_state(rho0);
  if (segments.empty()) throw Error(ErrorCode::kInvalidArgument, "empty schedule");
  Integrator integrator(rho0, config, observers, options);
  for (const auto& seg : segments) {
    if (!integrator.run(*seg.rhs, seg.duration)) break;
  }
  return integrator.finish();
}

Trajectory evolve(const ComplexMatrix& rho0, const RightHandSide& rhs,
                  const IntegrationConfig& config, std::span<const Observer* const> observers,
                  const EvolveOptions& options) {
  const RhsSegment seg{&rhs, config.t_max};
  return evolve_segments(rho0, std::span(&seg, 1), config, observers, options);
}

Trajectory evolve_piecewise(const ComplexMatrix& rho0, std::span<const ScheduleSegment> schedule,
                            const SystemLayout& layout, const OperatorSet& ops,
                            const IntegrationConfig& config,
                            std::span<const Observer* const> observers,
                            const EvolveOptions& options) {
  if (ops.dim() != layout.dim() || rho0.dim() != layout.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "schedule layout is " + std::to_string(layout.dim()) + "-dimensional, operators " +
                    std::to_string(ops.dim()) + ", state " + std::to_string(rho0.dim()));
  }
  std::vector<LindbladKernel> kernels;
  kernels.reserve(schedule.size());
  std::vector<RhsSegment> segments;
  for (const auto& seg : schedule) {
    kernels.push_back(LindbladKernel::full_model(seg.params, ops));
  }
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    segments.push_back({&kernels[k], schedule[k].duration});
  }
  return evolve_segments(rho0, segments, config, observers, options);
}

}  // namespace tnm
