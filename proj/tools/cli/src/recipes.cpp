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

#include <numbers>

#include "qomech/cli/commands.hpp"
#include "qomech/errors.hpp"

namespace qomech::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMap = 201;
constexpr std::size_t kCurve = 801;

// Count maps: rows per (axis1, axis2) cell give the real-root count.
const char* kCountPlot =
    "set view map\nset palette maxcolors 8\nset cbrange [0:7]\n"
    "set xlabel 'axis2'\nset ylabel 'axis1'\n"
    "plot \"< awk -F, '/^[-0-9.]/ {k=$1\\\",\\\"$2; c[k]+=($3!=\\\"\\\")} "
    "END {for (k in c) print k\\\",\\\"c[k]}' \" . $DATA "
    "using 2:1:3 with points pt 5 ps 0.4 palette notitle";

const char* kBranchPlot =
    "set xlabel 'axis1'\nset ylabel 'n_p'\n"
    "plot $DATA using 1:($4==1?$3:1/0) with points pt 7 ps 0.3 title 'stable', "
    "'' using 1:($4==0?$3:1/0) with points pt 6 ps 0.3 title 'unstable'";

// Direct linearized sweeps: columns axis, branch_index, n_p, stable, n1f, ...
const char* kCooling1d =
    "set logscale y\nset xlabel 'axis1'\nset ylabel 'n_f'\n"
    "plot $DATA using 1:5 with lines title 'n1f', '' using 1:6 with lines title 'n2f'";

const char* kCooling2dN1 =
    "set view map\nset logscale cb\nset xlabel 'axis2'\nset ylabel 'axis1'\n"
    "plot $DATA using 2:1:6 with points pt 5 ps 0.4 palette title 'n1f'";

const char* kCooling2dN2 =
    "set view map\nset logscale cb\nset xlabel 'axis2'\nset ylabel 'axis1'\n"
    "plot $DATA using 2:1:7 with points pt 5 ps 0.4 palette title 'n2f'";

const char* kBranchCooling =
    "set logscale y\nset xlabel 'kappa/omega1'\nset ylabel 'n_f'\n"
    "plot $DATA using 1:($4==1?$5:1/0) with points pt 7 ps 0.4 title 'n1f (stable branches)', "
    "'' using 1:($4==1?$6:1/0) with points pt 6 ps 0.4 title 'n2f (stable branches)'";

SystemParams kappa_units(double g1, double g2, double eta, double omega_ex,
                         double delta_c) {
  SystemParams p;
  p.omega1 = p.omega2 = 5.0;
  p.kappa = 1.0;
  p.theta = kPi;
  p.g1 = g1;
  p.g2 = g2;
  p.eta = eta;
  p.omega_ex = omega_ex;
  p.delta_c = delta_c;
  p.unit_label = "kappa";
  return p;
}

LinearizedParams omega1_units(double g1, double g2, double g22, double omega_ex) {
  LinearizedParams lp;
  lp.omega1 = 1.0;
  lp.delta_eff = 1.0;
  lp.omega2_tilde = 1.0;
  lp.g1_eff = g1;
  lp.g2_eff = g2;
  lp.g22 = g22;
  lp.omega_ex = omega_ex;
  lp.theta = kPi;
  lp.kappa = 0.1;
  lp.gamma1 = lp.gamma2 = 2e-6;
  lp.nbar1 = lp.nbar2 = 300.0;
  lp.origin = Origin::kDirect;
  return lp;
}

Axis axis(const char* name, double lo, double hi, std::size_t n) {
  return Axis{name, lo, hi, n, AxisScale::kLinear};
}

Panel panel(std::string name, std::vector<Axis> axes, SweepBase base,
            SweepMode mode, const RunConfig& cfg, std::string plot,
            std::vector<std::string> notes = {}) {
  return Panel{std::move(name),
               SweepSpec{std::move(axes), std::move(base), mode, cfg.options},
               std::move(notes), std::move(plot)};
}

SweepBase sys(const SystemParams& p) { return validate_params(p); }

}  // namespace

std::vector<std::string> recipe_names() {
  return {"fig2a", "fig2c", "fig2d", "fig3a", "fig3b", "fig3c",
          "fig3d", "fig4",  "fig5",  "fig6",  "fig7"};
}

std::vector<Panel> recipe(const std::string& figure, const RunConfig& cfg) {
  const auto count = SweepMode::kRootCount;
  const auto curve = SweepMode::kBranchCurve;
  const auto cool = SweepMode::kCooling;

  if (figure == "fig2a") {
    return {
        panel("a", {axis("g1", 0.0, 0.1, kMap), axis("delta_c", -5.0, 20.0, kMap)},
              sys(kappa_units(0.05, -0.0004, 95.0, 1.0, 0.0)), count, cfg, kCountPlot,
              {"expected region labels 1, 3, 5, 7; no cell above 7"}),
        panel("b", {axis("g2", -0.001, 0.0, kMap), axis("delta_c", -5.0, 20.0, kMap)},
              sys(kappa_units(0.05, -0.0004, 95.0, 1.0, 0.0)), count, cfg, kCountPlot,
              {"expected region labels 1, 3, 5, 7; no cell above 7"}),
    };
  }
  if (figure == "fig2c") {
    return {panel("c", {axis("delta_c", -2.0, 8.0, kCurve)},
                  sys(kappa_units(0.05, 0.0, 45.0, 1.0, 0.0)), curve, cfg, kBranchPlot,
                  {"expected: S-shaped curve, three branches in a finite window, "
                   "middle branch unstable"})};
  }
  if (figure == "fig2d") {
    return {panel("d", {axis("delta_c", -5.0, 20.0, kCurve)},
                  sys(kappa_units(0.05, -0.0004, 56.5, 0.005, 0.0)), curve, cfg,
                  kBranchPlot, {"expected: a five-branch window"})};
  }
  if (figure == "fig3a") {
    return {panel("a", {axis("eta", 0.0, 150.0, kMap), axis("delta_c", -5.0, 20.0, kMap)},
                  sys(kappa_units(0.05, -0.0004, 95.0, 1.0, 0.0)), count, cfg,
                  kCountPlot, {"expected region labels 1, 3, 5, 7"})};
  }
  if (figure == "fig3b") {
    return {panel("b", {axis("eta", 0.0, 150.0, kCurve)},
                  sys(kappa_units(0.05, -0.0004, 95.0, 1.0, 6.0)), curve, cfg,
                  kBranchPlot,
                  {"reference: seven branches with four stable inside the "
                   "seven-solution window"})};
  }
  if (figure == "fig3c") {
    return {panel("c", {axis("omega_ex", 0.0, 2.0, kMap), axis("theta", 0.0, kPi, kMap)},
                  sys(kappa_units(0.05, -0.0004, 95.0, 1.0, 5.0)), count, cfg,
                  kCountPlot, {"expected: map symmetric under theta -> pi - theta"})};
  }
  if (figure == "fig3d") {
    return {panel("d", {axis("theta", 0.0, 2.0 * kPi, kCurve)},
                  sys(kappa_units(0.05, -0.0004, 95.0, 1.0, 5.0)), curve, cfg,
                  kBranchPlot)};
  }
  if (figure == "fig4") {
    SystemParams lin = kappa_units(0.05, 0.0, 56.5, 0.2, 3.2);
    SystemParams quad = kappa_units(0.05, -0.0004, 95.0, 1.0, 5.0);
    for (SystemParams* p : {&lin, &quad}) {
      p->gamma1 = p->gamma2 = 2e-6 * p->omega1;
      p->nbar1 = p->nbar2 = 300.0;
    }
    const std::string conv =
        "kappa_over_omega1 convention: " + std::string(to_string(cfg.options.convention));
    return {
        panel("a", {axis("delta_c", -2.0, 8.0, kCurve)}, sys(lin), curve, cfg, kBranchPlot,
              {"marked point delta_c = 3.2: branches near n_p = 347 and 3191 (2%)"}),
        panel("b", {axis("delta_c", -5.0, 20.0, kCurve)}, sys(quad), curve, cfg,
              kBranchPlot, {"marked point delta_c = 5"}),
        panel("c", {axis(kKappaOverOmega1, 0.01, 1.0, 100)}, sys(lin), cool, cfg,
              kBranchCooling,
              {conv, "reference: lowest stable branch n1f = 0.09, n2f = 0.08 (20%)",
               "upper branch (n_p ~ 3191) stays above n_f = 1"}),
        panel("d", {axis(kKappaOverOmega1, 0.01, 1.0, 100)}, sys(quad), cool, cfg,
              kBranchCooling,
              {conv, "reference: lowest stable branch n1f = 0.07, n2f = 0.04 (20%)"}),
    };
  }
  if (figure == "fig5") {
    const LinearizedParams base = omega1_units(0.1, -0.1, -0.01, 0.13);
    LinearizedParams c = base, d = base;
    c.g1_eff = 0.015;
    d.g2_eff = -0.015;
    const std::vector<Axis> plane = {axis("g1_eff", 0.0, 0.2, kMap),
                                     axis("g2_eff", -0.2, 0.0, kMap)};
    return {
        panel("a", plane, base, cool, cfg, kCooling2dN1,
              {"expected: cooling failure band along G1 = |G2|"}),
        panel("b", plane, base, cool, cfg, kCooling2dN2,
              {"expected: cooling failure band along G1 = |G2|"}),
        panel("c", {axis("g2_eff", -0.2, 0.0, kCurve)}, c, cool, cfg, kCooling1d),
        panel("d", {axis("g1_eff", 0.0, 0.2, kCurve)}, d, cool, cfg, kCooling1d),
    };
  }
  if (figure == "fig6") {
    const LinearizedParams base = omega1_units(0.1, -0.1, -0.01, 0.1);
    LinearizedParams c = base, d = base, e = base, f = base;
    c.omega_ex = 0.0;
    d.g22 = -0.2;
    f.g22 = -0.2;
    const std::vector<Axis> plane = {axis("g22", -0.3, 0.0, kMap),
                                     axis("omega_ex", 0.0, 0.3, kMap)};
    return {
        panel("a", plane, base, cool, cfg, kCooling2dN1),
        panel("b", plane, base, cool, cfg, kCooling2dN2),
        panel("c", {axis("g22", -0.3, 0.0, kCurve)}, c, cool, cfg, kCooling1d,
              {"reference: n2f dip of 0.11 (15%)",
               "g22 = 0 with omega_ex = 0 is the dark-mode point"}),
        panel("d", {axis("omega_ex", 0.0, 0.3, kCurve)}, d, cool, cfg, kCooling1d),
        panel("e", {axis("theta", 0.0, 2.0 * kPi, kCurve)}, e, cool, cfg, kCooling1d),
        panel("f", {axis("theta", 0.0, 2.0 * kPi, kCurve)}, f, cool, cfg, kCooling1d),
    };
  }
  if (figure == "fig7") {
    const LinearizedParams base = omega1_units(0.1, -0.01, -0.01, 0.1);
    const std::vector<Axis> plane = {axis("delta_eff", 0.5, 1.5, kMap),
                                     axis("kappa", 0.01, 0.5, kMap)};
    return {
        panel("a", plane, base, cool, cfg, kCooling2dN1),
        panel("b", plane, base, cool, cfg, kCooling2dN2),
        panel("c", {Axis{"kappa", 1e-4, 0.5, kCurve, AxisScale::kLog}}, base, cool, cfg,
              kCooling1d,
              {"expected: both n_f drop below 1 then saturate as kappa grows",
               "log kappa axis: the drop happens below kappa = 0.01 omega1"}),
        panel("d", {axis("delta_eff", 0.5, 1.5, kCurve)}, base, cool, cfg, kCooling1d,
              {"reference: n1f = 0.045, n2f = 0.035 at delta_eff = 1 (10%)"}),
    };
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown figure '" + figure + "'");
}

}  // namespace qomech::cli
