// Copyright 2026 The qomech Authors
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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qomech/params.hpp"
#include "qomech/sweep.hpp"

namespace qomech::cli {

enum class OutputFormat { kCsv, kJson };

struct OutputSpec {
  std::string path;  // empty: standard output
  OutputFormat format = OutputFormat::kCsv;
};

inline constexpr const char* kCommands[] = {"roots",   "branches", "cool",
                                            "sweep1d", "sweep2d",  "reproduce"};

struct RunConfig {
  std::string command;
  std::string figure;  // reproduce target, e.g. "fig7"
  std::optional<ValidatedParams> system;
  std::optional<LinearizedParams> linearized;
  std::string unit_label = "kappa";
  std::vector<Axis> axes;
  SweepMode mode = SweepMode::kRootCount;
  SweepOptions options;
  OutputSpec output;
};

/// Parses an INI document and applies `overrides` ("key=value" or
/// "section.key=value"; later entries win). Bare keys resolve to the top
/// level, then to whichever parameter section the document uses.
/// Throws Error{kParseError | kUnknownKey | kInvalidConfig} and propagates
/// validation errors from the core.
RunConfig parse_config(std::string_view text,
                       const std::vector<std::string>& overrides = {});

/// "name, min, max, points[, linear|log]".
Axis parse_axis(std::string_view text);

/// Accepts plain numbers and multiples of pi ("pi", "0.5pi", "-2*pi").
double parse_number(std::string_view text, std::string_view key);

SweepMode parse_mode(std::string_view text);
std::string_view to_string(SweepMode mode) noexcept;
std::string_view to_string(Convention c) noexcept;
std::string_view to_string(CoefficientSet c) noexcept;

}  // namespace qomech::cli
