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
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>
#include <tuple>

#include "qomech/errors.hpp"
#include "qomech/sweep.hpp"

namespace qomech {

namespace {

constexpr const char* kSystemFields[] = {
    "delta_c", "omega1", "omega2", "g1",     "g2",     "omega_ex", "theta",
    "eta",     "kappa",  "gamma1", "gamma2", "nbar1",  "nbar2",
};
constexpr const char* kLinearizedFields[] = {
    "delta_eff", "omega1", "omega2_tilde", "g1_eff", "g2_eff",
    "g22",       "omega_ex", "theta",      "kappa",  "gamma1",
    "gamma2",    "nbar1",  "nbar2",
};

[[noreturn]] void unknown_field(const std::string& name) {
  throw Error(ErrorCode::kInvalidSpec, "unknown sweep parameter '" + name + "'");
}

std::string cell_label(const std::vector<std::size_t>& index) {
  std::string s = "cell(";
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(index[k]);
  }
  return s + ")";
}

struct CellOutput {
  SweepCell cell;
  std::vector<std::string> messages;
  bool mismatch = false;
};

void classify_branches(const ValidatedParams& p, const BranchSet& set,
                       const SweepOptions& opt, bool cool, CellOutput& out) {
  for (std::size_t b = 0; b < set.branches.size(); ++b) {
    const SteadyStateBranch& br = set.branches[b];
    BranchRecord rec;
    rec.label = b;
    rec.n_p = br.n_p;
    rec.residual = br.residual;
    const LinearizedParams lp = derive_linearized(br, p);
    const BranchStability bs = classify_linearized(lp, opt.gamma_fallback);
    rec.stable = bs.verdict.stable;
    rec.gamma_flip = bs.flipped();
    if (rec.gamma_flip) {
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "MARGINAL: branch n_p=%.12g verdict flips with gamma fallback",
                    br.n_p);
      out.messages.emplace_back(buf);
    }
    if (cool && rec.stable) {
      try {
        const CoolingPoint cp = evaluate_cooling(lp);
        if (cp.covariance) {
          rec.n1f = cp.covariance->n1f;
          rec.n2f = cp.covariance->n2f;
        }
        if (cp.dark) rec.dark_overlap = cp.dark->dark_overlap;
      } catch (const Error& e) {
        out.messages.emplace_back(e.what());
      }
    }
    if (rec.stable) ++out.cell.stable_count;
    out.cell.branches.push_back(std::move(rec));
  }
  out.cell.root_count = set.branches.size();
}

void evaluate_system_cell(const SystemParams& sp, const SweepSpec& spec,
                          CellOutput& out) {
  const ValidatedParams p = validate_params(sp);
  const BranchSet set = solve_branches(p, spec.options.solve);
  for (const auto& d : set.diagnostics) {
    out.messages.push_back(std::string(to_string(d.kind)) + ": " + d.message);
  }
  out.mismatch = set.coefficient_mismatch;
  classify_branches(p, set, spec.options, spec.mode == SweepMode::kCooling, out);
}

void evaluate_linearized_cell(const LinearizedParams& raw, const SweepSpec& spec,
                              CellOutput& out) {
  const LinearizedParams lp = validate_linearized(raw);
  BranchRecord rec;
  const BranchStability bs = classify_linearized(lp, spec.options.gamma_fallback);
  rec.stable = bs.verdict.stable;
  rec.gamma_flip = bs.flipped();
  if (spec.mode == SweepMode::kCooling) {
    const CoolingPoint cp = evaluate_cooling(lp);
    rec.stable = cp.verdict.stable;
    if (cp.covariance) {
      rec.n1f = cp.covariance->n1f;
      rec.n2f = cp.covariance->n2f;
    }
    if (cp.dark) rec.dark_overlap = cp.dark->dark_overlap;
  }
  out.cell.root_count = 1;
  out.cell.stable_count = rec.stable ? 1 : 0;
  out.cell.branches.push_back(std::move(rec));
}

CellOutput evaluate_cell(const SweepSpec& spec, std::vector<std::size_t> index) {
  CellOutput out;
  out.cell.index = std::move(index);
  for (std::size_t k = 0; k < spec.axes.size(); ++k) {
    out.cell.values.push_back(spec.axes[k].value(out.cell.index[k]));
  }
  try {
    if (const auto* vp = std::get_if<ValidatedParams>(&spec.base)) {
      SystemParams sp = vp->get();
      for (std::size_t k = 0; k < spec.axes.size(); ++k) {
        sp = with_field(sp, spec.axes[k].name, out.cell.values[k],
                        spec.options.convention);
      }
      evaluate_system_cell(sp, spec, out);
    } else {
      LinearizedParams lp = std::get<LinearizedParams>(spec.base);
      for (std::size_t k = 0; k < spec.axes.size(); ++k) {
        lp = with_field(lp, spec.axes[k].name, out.cell.values[k],
                        spec.options.convention);
      }
      evaluate_linearized_cell(lp, spec, out);
    }
  } catch (const Error& e) {
    out.cell.root_count = 0;
    out.cell.stable_count = 0;
    out.cell.branches.clear();
    out.messages.emplace_back(e.what());
  }
  return out;
}

// Continuation labels: pair each branch with the nearest n_p of the previous
// cell, closest pairs first; ties go to the lower previous label.
void assign_labels(SweepResult& r) {
  std::size_t next_label = 0;
  const SweepCell* prev = nullptr;
  for (SweepCell& cell : r.grid) {
    const std::size_t nb = cell.branches.size();
    std::vector<bool> done(nb, false);
    if (prev != nullptr) {
      std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
      for (std::size_t i = 0; i < nb; ++i) {
        for (const BranchRecord& pb : prev->branches) {
          pairs.emplace_back(std::abs(*cell.branches[i].n_p - *pb.n_p), pb.label, i);
        }
      }
      std::sort(pairs.begin(), pairs.end());
      std::vector<std::size_t> used;
      for (const auto& [dist, label, i] : pairs) {
        if (done[i] || std::find(used.begin(), used.end(), label) != used.end()) {
          continue;
        }
        cell.branches[i].label = label;
        done[i] = true;
        used.push_back(label);
      }
    }
    for (std::size_t i = 0; i < nb; ++i) {
      if (!done[i]) cell.branches[i].label = next_label++;
    }
    if (nb > 0) prev = &cell;
  }
}

}  // namespace

double Axis::value(std::size_t i) const noexcept {
  if (points < 2) return min;
  if (i + 1 == points) return max;
  const double t = static_cast<double>(i) / static_cast<double>(points - 1);
  if (scale == AxisScale::kLog) {
    return std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
  }
  return min + t * (max - min);
}

bool is_system_field(const std::string& name) noexcept {
  if (name == kKappaOverOmega1) return true;
  return std::any_of(std::begin(kSystemFields), std::end(kSystemFields),
                     [&](const char* f) { return name == f; });
}

bool is_linearized_field(const std::string& name) noexcept {
  if (name == kKappaOverOmega1) return true;
  return std::any_of(std::begin(kLinearizedFields), std::end(kLinearizedFields),
                     [&](const char* f) { return name == f; });
}

SystemParams with_field(const SystemParams& base, const std::string& name,
                        double value, Convention convention) {
  SystemParams p = base;
  if (name == "delta_c") p.delta_c = value;
  else if (name == "omega1") p.omega1 = value;
  else if (name == "omega2") p.omega2 = value;
  else if (name == "g1") p.g1 = value;
  else if (name == "g2") p.g2 = value;
  else if (name == "omega_ex") p.omega_ex = value;
  else if (name == "theta") p.theta = value;
  else if (name == "eta") p.eta = value;
  else if (name == "kappa") p.kappa = value;
  else if (name == "gamma1") p.gamma1 = value;
  else if (name == "gamma2") p.gamma2 = value;
  else if (name == "nbar1") p.nbar1 = value;
  else if (name == "nbar2") p.nbar2 = value;
  else if (name == kKappaOverOmega1) {
    if (convention == Convention::kOmega1) {
      p.kappa = value * p.omega1;
    } else {
      const double f = p.kappa / value / p.omega1;
      p.omega1 *= f;
      p.omega2 *= f;
      p.gamma1 *= f;
      p.gamma2 *= f;
    }
  } else {
    unknown_field(name);
  }
  return p;
}

LinearizedParams with_field(const LinearizedParams& base, const std::string& name,
                            double value, Convention convention) {
  LinearizedParams p = base;
  if (name == "delta_eff") p.delta_eff = value;
  else if (name == "omega1") p.omega1 = value;
  else if (name == "omega2_tilde") p.omega2_tilde = value;
  else if (name == "g1_eff") p.g1_eff = value;
  else if (name == "g2_eff") p.g2_eff = value;
  else if (name == "g22") p.g22 = value;
  else if (name == "omega_ex") p.omega_ex = value;
  else if (name == "theta") p.theta = value;
  else if (name == "kappa") p.kappa = value;
  else if (name == "gamma1") p.gamma1 = value;
  else if (name == "gamma2") p.gamma2 = value;
  else if (name == "nbar1") p.nbar1 = value;
  else if (name == "nbar2") p.nbar2 = value;
  else if (name == kKappaOverOmega1) {
    if (convention == Convention::kOmega1) {
      p.kappa = value * p.omega1;
    } else {
      const double f = p.kappa / value / p.omega1;
      p.omega1 *= f;
      p.omega2_tilde *= f;
      p.gamma1 *= f;
      p.gamma2 *= f;
    }
  } else {
    unknown_field(name);
  }
  // A swept point is no longer the output of derive_linearized.
  p.origin = Origin::kDirect;
  return p;
}

void validate_spec(const SweepSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2) {
    throw Error(ErrorCode::kInvalidSpec, "a sweep needs one or two axes");
  }
  const bool system = std::holds_alternative<ValidatedParams>(spec.base);
  for (const Axis& ax : spec.axes) {
    if (ax.points < 2) {
      throw Error(ErrorCode::kInvalidSpec, "axis '" + ax.name + "' needs >= 2 points");
    }
    if (!(ax.min < ax.max) || !std::isfinite(ax.min) || !std::isfinite(ax.max)) {
      throw Error(ErrorCode::kInvalidSpec, "axis '" + ax.name + "' needs min < max");
    }
    if (ax.scale == AxisScale::kLog && !(ax.min > 0.0)) {
      throw Error(ErrorCode::kInvalidSpec,
                  "log axis '" + ax.name + "' needs min > 0");
    }
    if (system ? !is_system_field(ax.name) : !is_linearized_field(ax.name)) {
      unknown_field(ax.name);
    }
  }
  if (spec.mode == SweepMode::kBranchCurve && spec.axes.size() != 1) {
    throw Error(ErrorCode::kInvalidSpec, "branch curves are one-dimensional");
  }
  if (!system && spec.mode != SweepMode::kCooling) {
    throw Error(ErrorCode::kInvalidSpec,
                "a linearized base only supports cooling sweeps");
  }
}

SweepResult run_sweep(const SweepSpec& spec) {
  validate_spec(spec);
  const std::size_t n0 = spec.axes[0].points;
  const std::size_t n1 = spec.axes.size() > 1 ? spec.axes[1].points : 1;
  const std::size_t total = n0 * n1;

  std::vector<CellOutput> cells(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < total; c = next++) {
      std::vector<std::size_t> index{c / n1};
      if (spec.axes.size() > 1) index.push_back(c % n1);
      cells[c] = evaluate_cell(spec, std::move(index));
    }
  };

  std::size_t threads = spec.options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, total);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  SweepResult r;
  r.grid.reserve(total);
  for (CellOutput& c : cells) {
    for (std::string& m : c.messages) {
      r.diagnostics.push_back({c.cell.index, cell_label(c.cell.index) + " " + m});
    }
    r.coefficient_mismatch = r.coefficient_mismatch || c.mismatch;
    r.grid.push_back(std::move(c.cell));
  }
  if (spec.mode == SweepMode::kBranchCurve &&
      std::holds_alternative<ValidatedParams>(spec.base)) {
    assign_labels(r);
  }
  return r;
}

SweepResult branch_curve(const SweepSpec& spec) {
  SweepSpec s = spec;
  s.mode = SweepMode::kBranchCurve;
  return run_sweep(s);
}

SweepResult cooling_map(const SweepSpec& spec) {
  SweepSpec s = spec;
  s.mode = SweepMode::kCooling;
  return run_sweep(s);
}

}  // namespace qomech
