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

#include <iosfwd>
#include <string>
#include <vector>

#include "qomech/cli/config.hpp"
#include "qomech/cli/table.hpp"

namespace qomech::cli {

/// Executes the configured subcommand, writing tables to `cfg.output.path`
/// (or `out`) and diagnostics to `<path>.diag.txt` (or `err`).
/// Returns 0 on success, 2 when a COEFFICIENT-MISMATCH fired, 1 on error.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Runs a sweep and flattens it to one row per (cell, branch); cells without
/// branches keep a row of axis values only.
Table sweep_table(const std::string& command, const SweepSpec& spec,
                  const std::string& unit_label);

/// Builds the tables for a subcommand without writing them.
std::vector<Table> build_tables(const RunConfig& cfg);

/// Canned figure recipe.
struct Panel {
  std::string name;
  SweepSpec spec;
  std::vector<std::string> notes;  // emitted verbatim into the header block
  std::string plot;                // plotting commands for this panel
};

std::vector<Panel> recipe(const std::string& figure, const RunConfig& cfg);
std::vector<std::string> recipe_names();

}  // namespace qomech::cli
