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

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "qomech/cli/commands.hpp"
#include "qomech/cli/config.hpp"
#include "qomech/errors.hpp"

using namespace qomech;
using namespace qomech::cli;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string system_ini(const std::string& command, const SystemParams& p) {
  std::string s = "command = " + command + "\n[system]\n";
  s += "delta_c = " + num(p.delta_c) + "\n";
  s += "omega1 = " + num(p.omega1) + "\n";
  s += "omega2 = " + num(p.omega2) + "\n";
  s += "g1 = " + num(p.g1) + "\n";
  s += "g2 = " + num(p.g2) + "\n";
  s += "omega_ex = " + num(p.omega_ex) + "\n";
  s += "theta = " + num(p.theta) + "\n";
  s += "eta = " + num(p.eta) + "\n";
  s += "kappa = " + num(p.kappa) + "\n";
  s += "gamma1 = " + num(p.gamma1) + "\n";
  s += "gamma2 = " + num(p.gamma2) + "\n";
  s += "nbar1 = " + num(p.nbar1) + "\n";
  s += "nbar2 = " + num(p.nbar2) + "\n";
  return s;
}

const char* kDecoupled =
    "command = roots\n"
    "[system]\n"
    "delta_c = 0\nomega1 = 5\nomega2 = 5\neta = 10\nkappa = 1\n";

ErrorCode code_of(const std::string& text, const std::vector<std::string>& ov = {}) {
  try {
    parse_config(text, ov);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parse_config accepted bad input");
  return ErrorCode::kInvalidConfig;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const RunConfig& cfg) {
  std::ostringstream out, err;
  const int code = run_command(cfg, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("minimal config takes library defaults") {
  const RunConfig cfg = parse_config(kDecoupled);
  CHECK(cfg.command == "roots");
  REQUIRE(cfg.system);
  CHECK(cfg.system->get().kappa == 1.0);
  CHECK(cfg.system->get().omega1 == 5.0);
  CHECK(cfg.system->get().eta == 10.0);
  CHECK(cfg.system->get().g1 == 0.0);
  CHECK_FALSE(cfg.linearized);
  CHECK(cfg.output.format == OutputFormat::kCsv);
  CHECK(cfg.output.path.empty());
  CHECK(cfg.options.solve.coefficients == CoefficientSet::kDerived);
}

TEST_CASE("overrides win over file values") {
  const RunConfig cfg = parse_config(kDecoupled, {"delta_c=3.2", "output.format=json",
                                                  "command=branches"});
  CHECK(cfg.system->get().delta_c == 3.2);
  CHECK(cfg.command == "branches");
  CHECK(cfg.output.format == OutputFormat::kJson);
  const RunConfig dotted = parse_config(kDecoupled, {"system.eta=12"});
  CHECK(dotted.system->get().eta == 12.0);
}

TEST_CASE("config errors carry their codes") {
  const std::string both = std::string(kDecoupled) + "[linearized]\nkappa = 1\n";
  CHECK(code_of(both) == ErrorCode::kInvalidConfig);
  CHECK(code_of(std::string(kDecoupled) + "bogus = 1\n") == ErrorCode::kUnknownKey);
  CHECK(code_of(kDecoupled, {"system.bogus=1"}) == ErrorCode::kUnknownKey);
  CHECK(code_of("[nowhere]\nx = 1\ncommand = roots\n") == ErrorCode::kUnknownKey);
  CHECK(code_of(kDecoupled, {"eta=abc"}) == ErrorCode::kParseError);
  CHECK(code_of(kDecoupled, {"noequals"}) == ErrorCode::kParseError);
  CHECK(code_of("[system\nkappa = 1\n") == ErrorCode::kParseError);
  CHECK(code_of("[system]\nkappa = 1\n") == ErrorCode::kInvalidConfig);
  CHECK(code_of(kDecoupled, {"command=fly"}) == ErrorCode::kInvalidConfig);
  CHECK(code_of(kDecoupled, {"command=sweep1d"}) == ErrorCode::kInvalidConfig);
  CHECK(code_of(kDecoupled, {"scan_points=999"}) == ErrorCode::kInvalidConfig);
  CHECK(code_of(kDecoupled, {"kappa=-1"}) == ErrorCode::kNonPositiveRate);
}

TEST_CASE("axis and number parsing") {
  CHECK(parse_number("pi", "t") == std::numbers::pi);
  CHECK(parse_number("0.5pi", "t") == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(parse_number("-2.5e-3", "t") == -2.5e-3);
  CHECK_THROWS_AS(parse_number("1.0x", "t"), Error);

  const Axis a = parse_axis("delta_c, -1, 4, 51");
  CHECK(a.name == "delta_c");
  CHECK(a.min == -1.0);
  CHECK(a.max == 4.0);
  CHECK(a.points == 51);
  CHECK(a.scale == AxisScale::kLinear);
  const Axis b = parse_axis("kappa, 1e-4, 0.5, 50, log");
  CHECK(b.scale == AxisScale::kLog);
  CHECK_THROWS_AS(parse_axis("kappa, 1, 2"), Error);
  CHECK_THROWS_AS(parse_axis("kappa, 1, 2, 5, cubic"), Error);
}

TEST_CASE("roots table on a decoupled system") {
  const Run r = run(parse_config(kDecoupled));
  CHECK(r.code == 0);
  CHECK(r.out.find("# roots.oracle_agreement=true") != std::string::npos);
  CHECK(r.out.find("# poly.degree=1") != std::string::npos);
  // one branch: eta^2 / (kappa^2 + delta^2) = 100
  std::istringstream is(r.out);
  std::string line;
  std::vector<std::string> data;
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '#') data.push_back(line);
  }
  REQUIRE(data.size() == 2);
  CHECK(data[1].rfind("0,100,", 0) == 0);
}

TEST_CASE("output is byte identical across runs") {
  const RunConfig cfg = parse_config(system_ini("branches", testing::fig2c()),
                                     {"delta_c=5"});
  const Run a = run(cfg);
  const Run b = run(cfg);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.err == b.err);

  const RunConfig sw = parse_config(system_ini("sweep1d", testing::fig2c()),
                                    {"sweep.axis1=delta_c, 0, 10, 21", "threads=3"});
  const RunConfig sw1 = parse_config(system_ini("sweep1d", testing::fig2c()),
                                     {"sweep.axis1=delta_c, 0, 10, 21", "threads=1"});
  CHECK(run(sw).out == run(sw1).out);
}

TEST_CASE("json output has meta and rows") {
  const Run r = run(parse_config(kDecoupled, {"output.format=json"}));
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.contains("meta"));
  REQUIRE(doc.contains("rows"));
  CHECK(doc["meta"]["command"] == "roots");
  CHECK(doc["meta"]["option.coefficients"] == "derived");
  REQUIRE(doc["rows"].size() == 1);
  CHECK(doc["rows"][0]["n_p"].get<double>() == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(doc["rows"][0]["stable"].is_null());
}

TEST_CASE("exit codes") {
  CHECK(run(parse_config(kDecoupled)).code == 0);

  const RunConfig pub =
      parse_config(system_ini("roots", testing::fig3b(95.0)), {"coefficients=published"});
  const Run p = run(pub);
  CHECK(p.code == 2);
  CHECK(p.out.find("# option.coefficients=published") != std::string::npos);

  // unknown figures are only caught when the recipe is built
  RunConfig bad = parse_config(kDecoupled, {"command=reproduce", "figure=nosuch"});
  const Run e = run(bad);
  CHECK(e.code == 1);
  CHECK(e.err.rfind("error: ", 0) == 0);
}

TEST_CASE("branches lists the cooling-regime steady states") {
  const Run r = run(parse_config(system_ini("branches", testing::fig4a())));
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::vector<double> n;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    n.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
  }
  auto near = [&](double want) {
    for (double v : n) {
      if (std::abs(v - want) <= 0.02 * want) return true;
    }
    return false;
  };
  CHECK(near(347.0));
  CHECK(near(3191.0));
}
