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

#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "json.hpp"

#include "qomech/cli/table.hpp"

namespace qomech::cli {

namespace {

constexpr const char* kColumns[] = {"branch_index", "n_p", "stable", "n1f",
                                    "n2f", "dark_overlap", "residual"};

// Rounds through the 12-digit text form so JSON and CSV carry the same value.
double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

void put_opt(std::ostream& os, const std::optional<double>& v) {
  os << ',';
  if (v) os << fmt12(*v);
}

nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(round12(*v)) : nlohmann::json(nullptr);
}

}  // namespace

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  for (const auto& [k, v] : t.meta) os << "# " << k << '=' << v << '\n';
  bool first = true;
  for (const auto& a : t.axis_names) {
    os << (first ? "" : ",") << a;
    first = false;
  }
  for (const char* c : kColumns) {
    os << (first ? "" : ",") << c;
    first = false;
  }
  os << '\n';
  for (const Row& r : t.rows) {
    bool lead = true;
    for (double a : r.axis) {
      os << (lead ? "" : ",") << fmt12(a);
      lead = false;
    }
    if (!lead) os << ',';
    if (r.branch_index) os << *r.branch_index;
    put_opt(os, r.n_p);
    os << ',';
    if (r.stable) os << (*r.stable ? 1 : 0);
    put_opt(os, r.n1f);
    put_opt(os, r.n2f);
    put_opt(os, r.dark_overlap);
    put_opt(os, r.residual);
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.meta) meta[k] = v;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const Row& r : t.rows) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < t.axis_names.size() && i < r.axis.size(); ++i) {
      row[t.axis_names[i]] = round12(r.axis[i]);
    }
    row["branch_index"] = r.branch_index ? nlohmann::json(*r.branch_index)
                                         : nlohmann::json(nullptr);
    row["n_p"] = opt_json(r.n_p);
    row["stable"] = r.stable ? nlohmann::json(*r.stable) : nlohmann::json(nullptr);
    row["n1f"] = opt_json(r.n1f);
    row["n2f"] = opt_json(r.n2f);
    row["dark_overlap"] = opt_json(r.dark_overlap);
    row["residual"] = opt_json(r.residual);
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  doc["meta"] = std::move(meta);
  doc["rows"] = std::move(rows);
  os << doc.dump(1) << '\n';
}

}  // namespace qomech::cli
