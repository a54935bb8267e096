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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qomech::cli {

/// One (cell, branch) record. Absent quantities stay empty in every format.
struct Row {
  std::vector<double> axis;
  std::optional<std::size_t> branch_index;
  std::optional<double> n_p;
  std::optional<bool> stable;
  std::optional<double> n1f;
  std::optional<double> n2f;
  std::optional<double> dark_overlap;
  std::optional<double> residual;
};

struct Table {
  std::string name;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> axis_names;
  std::vector<Row> rows;
  std::vector<std::string> diagnostics;
  bool coefficient_mismatch = false;
};

/// "%.12g".
std::string fmt12(double v);

void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);

}  // namespace qomech::cli
