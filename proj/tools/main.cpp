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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qomech/cli/commands.hpp"
#include "qomech/cli/config.hpp"
#include "qomech/errors.hpp"
#include "qomech/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qomech: steady states, stability and cooling of a quadratic "
               "optomechanical system"};
  app.set_version_flag("--version", std::string(qomech::kVersion));

  std::string command;
  std::string figure;
  std::string config_path;
  std::vector<std::string> sets;
  std::string out, format, oracle, gamma_fallback, convention, coefficients;
  std::size_t scan_points = 0, threads = 0;
  bool with_damping = false;

  app.add_option("command", command, "roots | branches | cool | sweep1d | sweep2d | reproduce")
      ->check(CLI::IsMember({"roots", "branches", "cool", "sweep1d", "sweep2d", "reproduce"}));
  app.add_option("figure", figure, "reproduce target")
      ->check(CLI::IsMember(qomech::cli::recipe_names()));
  app.add_option("--config", config_path, "INI file")->check(CLI::ExistingFile);
  app.add_option("--set", sets, "key=value override (repeatable)")->take_all();
  app.add_option("--out", out, "output path (prefix for reproduce)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--oracle", oracle, "on | off")->check(CLI::IsMember({"on", "off"}));
  app.add_option("--gamma-fallback", gamma_fallback, "on | off")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--convention", convention, "omega1 | kappa")
      ->check(CLI::IsMember({"omega1", "kappa"}));
  app.add_option("--scan-points", scan_points, "oracle grid size (>= 1000)");
  app.add_option("--threads", threads, "sweep workers (0: all cores)");
  app.add_flag("--with-mech-damping", with_damping,
               "keep mechanical damping in the steady-state solve");
  app.add_option("--coefficients", coefficients, "derived | published")
      ->check(CLI::IsMember({"derived", "published"}));

  CLI11_PARSE(app, argc, argv);

  std::string text;
  if (!config_path.empty()) {
    std::ifstream is(config_path);
    std::ostringstream ss;
    ss << is.rdbuf();
    text = ss.str();
  }

  std::vector<std::string> overrides = sets;
  if (!command.empty()) overrides.push_back("command=" + command);
  if (!figure.empty()) overrides.push_back("figure=" + figure);
  if (!out.empty()) overrides.push_back("output.path=" + out);
  if (!format.empty()) overrides.push_back("output.format=" + format);
  if (!oracle.empty()) overrides.push_back("oracle=" + oracle);
  if (!gamma_fallback.empty()) overrides.push_back("gamma_fallback=" + gamma_fallback);
  if (!convention.empty()) overrides.push_back("convention=" + convention);
  if (!coefficients.empty()) overrides.push_back("coefficients=" + coefficients);
  if (scan_points) overrides.push_back("scan_points=" + std::to_string(scan_points));
  if (threads) overrides.push_back("threads=" + std::to_string(threads));
  if (with_damping) overrides.push_back("with_mech_damping=on");

  qomech::cli::RunConfig cfg;
  try {
    cfg = qomech::cli::parse_config(text, overrides);
  } catch (const qomech::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return qomech::cli::run_command(cfg, std::cout, std::cerr);
}
