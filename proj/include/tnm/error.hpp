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

#pragma once

#include <stdexcept>
#include <string>

namespace tnm {

enum class ErrorCode {
  kDimensionMismatch,
  kInvalidArgument,
  kNotHermitian,
  kCapacityExceeded,
  kIntegrationFailure,
  kDivergence,
  kConfig,
  kIo,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries a code so callers (sweep
/// workers, the fitter, the CLI) can decide what to record and what to
/// rethrow.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kNotHermitian: return "not hermitian";
    case ErrorCode::kCapacityExceeded: return "capacity exceeded";
    case ErrorCode::kIntegrationFailure: return "integration failure";
    case ErrorCode::kDivergence: return "divergence";
    case ErrorCode::kConfig: return "config error";
    case ErrorCode::kIo: return "io error";
  }
  return "error";
}

}  // namespace tnm
