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
#include <ostream>

#include "qomech/cli/commands.hpp"
#include "qomech/cooling.hpp"
#include "qomech/errors.hpp"
#include "qomech/version.hpp"

namespace qomech::cli {

namespace {

std::string fmt_complex(Complex c) { return fmt12(c.real()) + "," + fmt12(c.imag()); }

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt12(v[i]);
  return s;
}

std::string on_off(bool b) { return b ? "on" : "off"; }

void add_system(Table& t, const SystemParams& p) {
  const std::pair<const char*, double> f[] = {
      {"delta_c", p.delta_c}, {"omega1", p.omega1},     {"omega2", p.omega2},
      {"g1", p.g1},           {"g2", p.g2},             {"omega_ex", p.omega_ex},
      {"theta", p.theta},     {"eta", p.eta},           {"kappa", p.kappa},
      {"gamma1", p.gamma1},   {"gamma2", p.gamma2},     {"nbar1", p.nbar1},
      {"nbar2", p.nbar2},
  };
  for (const auto& [k, v] : f) t.meta.emplace_back(std::string("system.") + k, fmt12(v));
  t.meta.emplace_back("system.unit_label", p.unit_label);
}

void add_linearized(Table& t, const LinearizedParams& p, const std::string& unit) {
  t.meta.emplace_back("linearized.delta_eff", fmt12(p.delta_eff));
  t.meta.emplace_back("linearized.omega1", fmt12(p.omega1));
  t.meta.emplace_back("linearized.omega2_tilde", fmt12(p.omega2_tilde));
  t.meta.emplace_back("linearized.g1_eff", fmt_complex(p.g1_eff));
  t.meta.emplace_back("linearized.g2_eff", fmt_complex(p.g2_eff));
  t.meta.emplace_back("linearized.g22", fmt_complex(p.g22));
  t.meta.emplace_back("linearized.omega_ex", fmt12(p.omega_ex));
  t.meta.emplace_back("linearized.theta", fmt12(p.theta));
  t.meta.emplace_back("linearized.kappa", fmt12(p.kappa));
  t.meta.emplace_back("linearized.gamma1", fmt12(p.gamma1));
  t.meta.emplace_back("linearized.gamma2", fmt12(p.gamma2));
  t.meta.emplace_back("linearized.nbar1", fmt12(p.nbar1));
  t.meta.emplace_back("linearized.nbar2", fmt12(p.nbar2));
  t.meta.emplace_back("linearized.origin",
                      p.origin == Origin::kDirect ? "direct" : "branch-derived");
  t.meta.emplace_back("linearized.unit_label", unit);
}

void add_options(Table& t, const SweepOptions& o) {
  t.meta.emplace_back("option.oracle", on_off(o.solve.oracle_mode));
  t.meta.emplace_back("option.gamma_fallback", on_off(o.gamma_fallback));
  t.meta.emplace_back("option.convention", std::string(to_string(o.convention)));
  t.meta.emplace_back("option.scan_points", std::to_string(o.solve.scan_points));
  t.meta.emplace_back("option.with_mech_damping", on_off(o.solve.with_mech_damping));
  t.meta.emplace_back("option.coefficients", std::string(to_string(o.solve.coefficients)));
}

Table header(const std::string& command, const SweepOptions& opt) {
  Table t;
  t.meta.emplace_back("tool", std::string("qomech ") + kVersion);
  t.meta.emplace_back("command", command);
  add_options(t, opt);
  return t;
}

void add_base(Table& t, const SweepBase& base, const std::string& unit) {
  if (const auto* vp = std::get_if<ValidatedParams>(&base)) {
    add_system(t, vp->get());
  } else {
    add_linearized(t, std::get<LinearizedParams>(base), unit);
  }
}

void add_axes(Table& t, SweepMode mode, const std::vector<Axis>& axes) {
  t.meta.emplace_back("sweep.mode", std::string(to_string(mode)));
  for (std::size_t k = 0; k < axes.size(); ++k) {
    const Axis& a = axes[k];
    t.meta.emplace_back("sweep.axis" + std::to_string(k + 1),
                        a.name + ", " + fmt12(a.min) + ", " + fmt12(a.max) + ", " +
                            std::to_string(a.points) + ", " +
                            (a.scale == AxisScale::kLog ? "log" : "linear"));
    t.axis_names.push_back(a.name);
  }
}

void add_branch_diagnostics(Table& t, const BranchSet& set) {
  for (const auto& d : set.diagnostics) {
    t.diagnostics.push_back(std::string(to_string(d.kind)) + ": " + d.message);
  }
  t.coefficient_mismatch = t.coefficient_mismatch || set.coefficient_mismatch;
}

Row branch_row(std::size_t i, const SteadyStateBranch& b) {
  Row r;
  r.branch_index = i;
  r.n_p = b.n_p;
  r.residual = b.residual;
  return r;
}

void fill_cooling(Row& r, const CoolingPoint& cp, Table& t) {
  r.stable = cp.verdict.stable;
  if (cp.covariance) {
    try {
      const auto [n1, n2] = phonon_numbers(*cp.covariance);
      r.n1f = n1;
      r.n2f = n2;
    } catch (const Error& e) {
      t.diagnostics.push_back(e.what());
    }
  }
  if (cp.dark) r.dark_overlap = cp.dark->dark_overlap;
}

Table roots_table(const RunConfig& cfg) {
  Table t = header("roots", cfg.options);
  const ValidatedParams& p = *cfg.system;
  add_system(t, p.get());
  const PolynomialCoefficients c = build_polynomial(p, cfg.options.solve.coefficients);
  t.meta.emplace_back("poly.x", fmt12(c.x));
  t.meta.emplace_back("poly.y", fmt12(c.y));
  t.meta.emplace_back("poly.z", fmt12(c.z));
  for (int m = 0; m < 8; ++m) t.meta.emplace_back("poly.C" + std::to_string(m), fmt12(c.c[m]));
  t.meta.emplace_back("poly.degree", std::to_string(c.degree()));

  const BranchSet set = solve_branches(p, cfg.options.solve);
  const std::vector<double> orc =
      cfg.options.solve.oracle_mode ? set.oracle_roots
                                    : oracle_roots(p, cfg.options.solve.scan_points).roots;
  std::vector<double> accepted;
  for (const auto& b : set.branches) accepted.push_back(b.n_p);
  t.meta.emplace_back("roots.polynomial", fmt_list(set.polynomial_roots));
  t.meta.emplace_back("roots.oracle", fmt_list(orc));
  t.meta.emplace_back("roots.oracle_agreement", roots_agree(accepted, orc) ? "true" : "false");
  add_branch_diagnostics(t, set);
  for (std::size_t i = 0; i < set.branches.size(); ++i) {
    t.rows.push_back(branch_row(i, set.branches[i]));
  }
  return t;
}

Table branches_table(const RunConfig& cfg) {
  Table t = header("branches", cfg.options);
  const ValidatedParams& p = *cfg.system;
  add_system(t, p.get());
  const BranchSet set = solve_branches(p, cfg.options.solve);
  add_branch_diagnostics(t, set);
  for (std::size_t i = 0; i < set.branches.size(); ++i) {
    const SteadyStateBranch& b = set.branches[i];
    Row r = branch_row(i, b);
    const BranchStability bs =
        classify_linearized(derive_linearized(b, p), cfg.options.gamma_fallback);
    r.stable = bs.verdict.stable;
    if (bs.flipped()) {
      t.diagnostics.push_back("MARGINAL: branch " + std::to_string(i) +
                              " verdict flips with gamma fallback");
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

Table cool_table(const RunConfig& cfg) {
  Table t = header("cool", cfg.options);
  if (cfg.linearized) {
    const LinearizedParams& lp = *cfg.linearized;
    add_linearized(t, lp, cfg.unit_label);
    const CoolingPoint cp = evaluate_cooling(lp);
    t.meta.emplace_back("stability.max_real_part", fmt12(cp.verdict.max_real_part));
    if (cp.covariance) {
      t.meta.emplace_back("lyapunov.residual", fmt12(cp.covariance->lyap_residual));
    }
    if (cp.dark) {
      t.meta.emplace_back("dark.bright_coupling", fmt12(cp.dark->bright_coupling));
      t.meta.emplace_back("dark.mixing_omega", fmt12(cp.dark->mixing_omega));
      t.meta.emplace_back("dark.mixing_g22", fmt12(cp.dark->mixing_g22));
      t.meta.emplace_back("dark.flag", cp.dark->dark_flag ? "true" : "false");
    } else {
      t.diagnostics.push_back("ZeroCoupling: dark overlap undefined");
    }
    Row r;
    fill_cooling(r, cp, t);
    t.rows.push_back(std::move(r));
    return t;
  }
  const ValidatedParams& p = *cfg.system;
  add_system(t, p.get());
  const BranchSet set = solve_branches(p, cfg.options.solve);
  add_branch_diagnostics(t, set);
  for (std::size_t i = 0; i < set.branches.size(); ++i) {
    Row r = branch_row(i, set.branches[i]);
    const CoolingPoint cp = evaluate_cooling(derive_linearized(set.branches[i], p));
    fill_cooling(r, cp, t);
    t.rows.push_back(std::move(r));
  }
  return t;
}

}  // namespace

Table sweep_table(const std::string& command, const SweepSpec& spec,
                  const std::string& unit) {
  Table t = header(command, spec.options);
  add_base(t, spec.base, unit);
  add_axes(t, spec.mode, spec.axes);
  const SweepResult res =
      spec.mode == SweepMode::kBranchCurve ? branch_curve(spec) : run_sweep(spec);
  t.coefficient_mismatch = res.coefficient_mismatch;
  for (const auto& d : res.diagnostics) t.diagnostics.push_back(d.message);
  for (const SweepCell& cell : res.grid) {
    if (cell.branches.empty()) {
      Row r;
      r.axis = cell.values;
      t.rows.push_back(std::move(r));
      continue;
    }
    for (const BranchRecord& b : cell.branches) {
      Row r;
      r.axis = cell.values;
      r.branch_index = b.label;
      r.n_p = b.n_p;
      r.stable = b.stable;
      r.n1f = b.n1f;
      r.n2f = b.n2f;
      r.dark_overlap = b.dark_overlap;
      r.residual = b.residual;
      t.rows.push_back(std::move(r));
    }
  }
  return t;
}

std::vector<Table> build_tables(const RunConfig& cfg) {
  if (cfg.command == "roots") return {roots_table(cfg)};
  if (cfg.command == "branches") return {branches_table(cfg)};
  if (cfg.command == "cool") return {cool_table(cfg)};
  if (cfg.command == "sweep1d" || cfg.command == "sweep2d") {
    SweepSpec spec{cfg.axes,
                   cfg.system ? SweepBase(*cfg.system) : SweepBase(*cfg.linearized),
                   cfg.mode, cfg.options};
    return {sweep_table(cfg.command, spec, cfg.unit_label)};
  }
  std::vector<Table> out;
  for (const Panel& panel : recipe(cfg.figure, cfg)) {
    const std::string unit =
        std::holds_alternative<ValidatedParams>(panel.spec.base) ? "kappa" : "omega1";
    Table t = sweep_table("reproduce " + cfg.figure, panel.spec, unit);
    t.name = panel.name;
    t.meta.insert(t.meta.begin() + 2, {"panel", panel.name});
    for (std::size_t k = 0; k < panel.notes.size(); ++k) {
      t.meta.emplace_back("note" + std::to_string(k + 1), panel.notes[k]);
    }
    out.push_back(std::move(t));
  }
  return out;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<Table> tables;
  std::vector<Panel> panels;
  try {
    if (cfg.command == "reproduce") panels = recipe(cfg.figure, cfg);
    tables = build_tables(cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  const bool json = cfg.output.format == OutputFormat::kJson;
  const std::string ext = json ? ".json" : ".csv";
  auto emit = [&](std::ostream& os, const Table& t) {
    if (json) write_json(os, t);
    else write_csv(os, t);
  };

  bool mismatch = false;
  std::vector<std::string> diagnostics;
  for (const Table& t : tables) {
    mismatch = mismatch || t.coefficient_mismatch;
    for (const auto& d : t.diagnostics) {
      diagnostics.push_back(t.name.empty() ? d : "[" + t.name + "] " + d);
    }
  }

  const std::string& path = cfg.output.path;
  if (path.empty()) {
    for (std::size_t i = 0; i < tables.size(); ++i) {
      if (i) out << '\n';
      emit(out, tables[i]);
    }
    for (const auto& d : diagnostics) err << d << '\n';
  } else {
    const bool multi = cfg.command == "reproduce";
    for (const Table& t : tables) {
      const std::string file = multi ? path + "_" + t.name + ext : path;
      std::ofstream os(file, std::ios::binary);
      if (!os) {
        err << "error: cannot write " << file << '\n';
        return 1;
      }
      emit(os, t);
    }
    if (multi && !json) {
      std::ofstream gp(path + ".gp", std::ios::binary);
      gp << "# qomech " << kVersion << " plot stub for " << cfg.figure << "\n"
         << "set datafile separator ','\n"
         << "set terminal pngcairo size 900,650\n";
      for (const Panel& p : panels) {
        std::string cmds = p.plot;
        const std::string data = "'" + path + "_" + p.name + ext + "'";
        for (std::size_t pos; (pos = cmds.find("$DATA")) != std::string::npos;) {
          cmds.replace(pos, 5, data);
        }
        gp << "\nset output '" << path << "_" << p.name << ".png'\n"
           << "set title '" << cfg.figure << " (" << p.name << ")'\n"
           << cmds << "\nreset\nset datafile separator ','\n";
      }
    }
    if (!diagnostics.empty()) {
      std::ofstream ds(path + ".diag.txt", std::ios::binary);
      for (const auto& d : diagnostics) ds << d << '\n';
    }
  }
  return mismatch ? 2 : 0;
}

}  // namespace qomech::cli
