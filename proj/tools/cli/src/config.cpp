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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "qomech/cli/config.hpp"
#include "qomech/errors.hpp"

namespace qomech::cli {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> kTopLevel = {
    "command", "figure",  "oracle",           "gamma_fallback", "convention",
    "scan_points", "threads", "with_mech_damping", "coefficients",
};
const std::set<std::string> kSweepKeys = {"mode", "axis1", "axis2"};
const std::set<std::string> kOutputKeys = {"path", "format"};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool parse_bool(const std::string& raw, const std::string& key) {
  const std::string v = lower(trim(raw));
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw Error(ErrorCode::kParseError, "key '" + key + "': expected on|off, got '" + raw + "'");
}

std::size_t parse_count(const std::string& raw, const std::string& key) {
  const std::string v = trim(raw);
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw Error(ErrorCode::kParseError, "key '" + key + "': expected a count, got '" + raw + "'");
  }
  return out;
}

Complex parse_complex(const std::string& raw, const std::string& key) {
  const auto comma = raw.find(',');
  if (comma == std::string::npos) return {parse_number(raw, key), 0.0};
  return {parse_number(std::string_view(raw).substr(0, comma), key),
          parse_number(std::string_view(raw).substr(comma + 1), key)};
}

[[noreturn]] void unknown_key(const std::string& key) {
  throw Error(ErrorCode::kUnknownKey, "'" + key + "'");
}

SystemParams read_system(const pt::ptree& sec, std::string& unit_label) {
  SystemParams p;
  for (const auto& [key, node] : sec) {
    const std::string v = node.get_value<std::string>();
    const std::string path = "system." + key;
    if (key == "unit_label") {
      unit_label = trim(v);
      p.unit_label = unit_label;
    } else if (is_system_field(key) && key != kKappaOverOmega1) {
      p = with_field(p, key, parse_number(v, path));
    } else {
      unknown_key(path);
    }
  }
  return p;
}

LinearizedParams read_linearized(const pt::ptree& sec, std::string& unit_label) {
  LinearizedParams p;
  for (const auto& [key, node] : sec) {
    const std::string v = node.get_value<std::string>();
    const std::string path = "linearized." + key;
    if (key == "unit_label") {
      unit_label = trim(v);
    } else if (key == "g1_eff") {
      p.g1_eff = parse_complex(v, path);
    } else if (key == "g2_eff") {
      p.g2_eff = parse_complex(v, path);
    } else if (key == "g22") {
      p.g22 = parse_complex(v, path);
    } else if (is_linearized_field(key) && key != kKappaOverOmega1) {
      p = with_field(p, key, parse_number(v, path));
    } else {
      unknown_key(path);
    }
  }
  p.origin = Origin::kDirect;
  return p;
}

void apply_override(pt::ptree& tree, const std::string& item) {
  const auto eq = item.find('=');
  if (eq == std::string::npos) {
    throw Error(ErrorCode::kParseError, "override '" + item + "' is not key=value");
  }
  const std::string key = trim(std::string_view(item).substr(0, eq));
  const std::string value = trim(std::string_view(item).substr(eq + 1));
  if (key.empty()) {
    throw Error(ErrorCode::kParseError, "override '" + item + "' has an empty key");
  }
  if (key.find('.') != std::string::npos) {
    tree.put(key, value);
    return;
  }
  if (kTopLevel.count(key)) {
    tree.put(key, value);
    return;
  }
  const bool has_lin = tree.get_child_optional("linearized").has_value();
  const bool has_sys = tree.get_child_optional("system").has_value();
  if (key == "unit_label") {
    tree.put(has_lin && !has_sys ? "linearized.unit_label" : "system.unit_label", value);
  } else if (has_lin && is_linearized_field(key)) {
    tree.put("linearized." + key, value);
  } else if (is_system_field(key) && key != kKappaOverOmega1) {
    tree.put("system." + key, value);
  } else if (is_linearized_field(key) && key != kKappaOverOmega1) {
    tree.put("linearized." + key, value);
  } else if (kSweepKeys.count(key)) {
    tree.put("sweep." + key, value);
  } else if (kOutputKeys.count(key)) {
    tree.put("output." + key, value);
  } else {
    unknown_key(key);
  }
}

}  // namespace

double parse_number(std::string_view text, std::string_view key) {
  std::string v = lower(trim(text));
  double factor = 1.0;
  if (v.size() >= 2 && v.compare(v.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    v.resize(v.size() - 2);
    if (!v.empty() && v.back() == '*') v.pop_back();
    v = trim(v);
    if (v.empty() || v == "+") return factor;
    if (v == "-") return -factor;
  }
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw Error(ErrorCode::kParseError, "key '" + std::string(key) +
                                            "': expected a number, got '" +
                                            std::string(text) + "'");
  }
  return out * factor;
}

Axis parse_axis(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  if (parts.size() != 4 && parts.size() != 5) {
    throw Error(ErrorCode::kParseError,
                "axis '" + std::string(text) + "': expected name, min, max, points[, scale]");
  }
  Axis ax;
  ax.name = parts[0];
  ax.min = parse_number(parts[1], ax.name + ".min");
  ax.max = parse_number(parts[2], ax.name + ".max");
  ax.points = parse_count(parts[3], ax.name + ".points");
  if (parts.size() == 5) {
    const std::string s = lower(parts[4]);
    if (s == "linear") ax.scale = AxisScale::kLinear;
    else if (s == "log") ax.scale = AxisScale::kLog;
    else throw Error(ErrorCode::kParseError, "axis scale '" + parts[4] + "'");
  }
  return ax;
}

SweepMode parse_mode(std::string_view text) {
  const std::string v = lower(trim(text));
  if (v == "root-count") return SweepMode::kRootCount;
  if (v == "branch-curve") return SweepMode::kBranchCurve;
  if (v == "stable-count") return SweepMode::kStableCount;
  if (v == "cooling") return SweepMode::kCooling;
  throw Error(ErrorCode::kParseError, "sweep mode '" + std::string(text) + "'");
}

std::string_view to_string(SweepMode mode) noexcept {
  switch (mode) {
    case SweepMode::kRootCount: return "root-count";
    case SweepMode::kBranchCurve: return "branch-curve";
    case SweepMode::kStableCount: return "stable-count";
    case SweepMode::kCooling: return "cooling";
  }
  return "?";
}

std::string_view to_string(Convention c) noexcept {
  return c == Convention::kOmega1 ? "omega1" : "kappa";
}

std::string_view to_string(CoefficientSet c) noexcept {
  return c == CoefficientSet::kDerived ? "derived" : "published";
}

RunConfig parse_config(std::string_view text,
                       const std::vector<std::string>& overrides) {
  pt::ptree tree;
  try {
    std::istringstream is{std::string(text)};
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(e.line()) + ": " + e.message());
  }
  for (const std::string& o : overrides) apply_override(tree, o);

  RunConfig cfg;
  for (const auto& [key, node] : tree) {
    const bool section = !node.empty();
    const std::string v = node.get_value<std::string>();
    if (section) {
      if (key != "system" && key != "linearized" && key != "sweep" && key != "output") {
        unknown_key("[" + key + "]");
      }
      continue;
    }
    if (key == "command") cfg.command = lower(trim(v));
    else if (key == "figure") cfg.figure = lower(trim(v));
    else if (key == "oracle") cfg.options.solve.oracle_mode = parse_bool(v, key);
    else if (key == "gamma_fallback") cfg.options.gamma_fallback = parse_bool(v, key);
    else if (key == "with_mech_damping") cfg.options.solve.with_mech_damping = parse_bool(v, key);
    else if (key == "scan_points") cfg.options.solve.scan_points = parse_count(v, key);
    else if (key == "threads") cfg.options.threads = parse_count(v, key);
    else if (key == "convention") {
      const std::string c = lower(trim(v));
      if (c == "omega1") cfg.options.convention = Convention::kOmega1;
      else if (c == "kappa") cfg.options.convention = Convention::kKappa;
      else throw Error(ErrorCode::kParseError, "convention '" + v + "'");
    } else if (key == "coefficients") {
      const std::string c = lower(trim(v));
      if (c == "derived") cfg.options.solve.coefficients = CoefficientSet::kDerived;
      else if (c == "published") cfg.options.solve.coefficients = CoefficientSet::kPublished;
      else throw Error(ErrorCode::kParseError, "coefficients '" + v + "'");
    } else if (key == "system" || key == "linearized" || key == "sweep" ||
               key == "output") {
      // empty section
    } else {
      unknown_key(key);
    }
  }

  const auto sys = tree.get_child_optional("system");
  const auto lin = tree.get_child_optional("linearized");
  if (sys && lin) {
    throw Error(ErrorCode::kInvalidConfig,
                "[system] and [linearized] are mutually exclusive");
  }
  if (sys) cfg.system = validate_params(read_system(*sys, cfg.unit_label));
  if (lin) cfg.linearized = validate_linearized(read_linearized(*lin, cfg.unit_label));

  if (const auto sw = tree.get_child_optional("sweep")) {
    for (const auto& [key, node] : *sw) {
      const std::string v = node.get_value<std::string>();
      if (key == "mode") cfg.mode = parse_mode(v);
      else if (key == "axis1" || key == "axis2") continue;
      else unknown_key("sweep." + key);
    }
    if (const auto a1 = sw->get_optional<std::string>("axis1")) cfg.axes.push_back(parse_axis(*a1));
    if (const auto a2 = sw->get_optional<std::string>("axis2")) {
      if (cfg.axes.empty()) throw Error(ErrorCode::kInvalidConfig, "axis2 without axis1");
      cfg.axes.push_back(parse_axis(*a2));
    }
  }
  if (const auto out = tree.get_child_optional("output")) {
    for (const auto& [key, node] : *out) {
      const std::string v = trim(node.get_value<std::string>());
      if (key == "path") {
        cfg.output.path = v;
      } else if (key == "format") {
        const std::string f = lower(v);
        if (f == "csv") cfg.output.format = OutputFormat::kCsv;
        else if (f == "json") cfg.output.format = OutputFormat::kJson;
        else throw Error(ErrorCode::kParseError, "format '" + v + "'");
      } else {
        unknown_key("output." + key);
      }
    }
  }

  if (cfg.command.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "no command given");
  }
  if (std::find(std::begin(kCommands), std::end(kCommands), cfg.command) ==
      std::end(kCommands)) {
    throw Error(ErrorCode::kInvalidConfig, "unknown command '" + cfg.command + "'");
  }
  if ((cfg.command == "roots" || cfg.command == "branches") && !cfg.system) {
    throw Error(ErrorCode::kInvalidConfig, cfg.command + " needs a [system] section");
  }
  if ((cfg.command == "cool" || cfg.command == "sweep1d" || cfg.command == "sweep2d") &&
      !cfg.system && !cfg.linearized) {
    throw Error(ErrorCode::kInvalidConfig,
                cfg.command + " needs a [system] or [linearized] section");
  }
  if (cfg.command == "sweep1d" && cfg.axes.size() != 1) {
    throw Error(ErrorCode::kInvalidConfig, "sweep1d needs exactly axis1");
  }
  if (cfg.command == "sweep2d" && cfg.axes.size() != 2) {
    throw Error(ErrorCode::kInvalidConfig, "sweep2d needs axis1 and axis2");
  }
  if (cfg.command == "reproduce" && cfg.figure.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "reproduce needs a figure name");
  }
  if (cfg.options.solve.scan_points < kMinScanPoints) {
    throw Error(ErrorCode::kInvalidConfig, "scan_points must be >= 1000");
  }
  return cfg;
}

}  // namespace qomech::cli
