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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tnm/config.hpp"
#include "tnm/experiments.hpp"

namespace tnm {

/// Shortest text that parses back to the same double; NaN becomes "".
std::string format_number(double v);

/// RFC 4180: CRLF line ends, fields quoted when they hold ',', '"', CR or LF.
std::string to_csv(const Table& table);
std::vector<std::vector<std::string>> parse_csv(std::string_view text);
/// Inverse of to_csv for the numeric body; the header must match.
Table table_from_csv(std::string_view text, const std::string& name = "table");

std::string to_json_summary(const ExperimentResult& result, const std::vector<std::string>& files);
std::string failures_json(const ExperimentResult& result);

std::string render_svg(const ExperimentResult& result, const PlotSpec& plot);

/// Writes the requested formats plus the resolved config echo. A
/// failures.json manifest is written whenever the result carries failures.
std::vector<std::filesystem::path> emit_results(const ExperimentResult& result, const OutputConfig& output);

}  // namespace tnm
