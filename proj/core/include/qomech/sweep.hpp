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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qomech/cooling.hpp"
#include "qomech/params.hpp"
#include "qomech/steady_state.hpp"

namespace qomech {

enum class AxisScale { kLinear, kLog };

struct Axis {
  std::string name;  // a field of the base record, or "kappa_over_omega1"
  double min = 0.0;
  double max = 1.0;
  std::size_t points = 2;
  AxisScale scale = AxisScale::kLinear;

  double value(std::size_t i) const noexcept;
};

enum class SweepMode { kRootCount, kBranchCurve, kStableCount, kCooling };

/// Meaning of the virtual axis "kappa_over_omega1" = r.
///   kOmega1: every rate except kappa is held; kappa = r * omega1.
///   kKappa:  kappa and the optical/coupling rates are held; omega1, omega2
///            (or omega2_tilde), gamma1 and gamma2 are rescaled together so
///            that omega1 = kappa / r.
enum class Convention { kOmega1, kKappa };

inline constexpr const char* kKappaOverOmega1 = "kappa_over_omega1";

struct SweepOptions {
  SolveOptions solve;
  bool gamma_fallback = true;
  Convention convention = Convention::kOmega1;
  std::size_t threads = 0;  // 0: hardware concurrency
};

using SweepBase = std::variant<ValidatedParams, LinearizedParams>;

struct SweepSpec {
  std::vector<Axis> axes;  // one or two; the last axis varies fastest
  SweepBase base;
  SweepMode mode = SweepMode::kRootCount;
  SweepOptions options;
};

struct BranchRecord {
  std::size_t label = 0;  // continuation-consistent in branch_curve
  std::optional<double> n_p;  // absent for direct linearized points
  bool stable = false;
  bool gamma_flip = false;
  std::optional<double> residual;
  std::optional<double> n1f;
  std::optional<double> n2f;
  std::optional<double> dark_overlap;
};

struct SweepCell {
  std::vector<std::size_t> index;  // per-axis grid index
  std::vector<double> values;      // per-axis parameter value
  std::size_t root_count = 0;
  std::size_t stable_count = 0;
  std::vector<BranchRecord> branches;
};

struct SweepDiagnostic {
  std::vector<std::size_t> index;
  std::string message;
};

struct SweepResult {
  std::vector<SweepCell> grid;  // row-major
  std::vector<SweepDiagnostic> diagnostics;
  bool coefficient_mismatch = false;
};

/// Throws Error{kInvalidSpec}.
void validate_spec(const SweepSpec& spec);

/// Evaluates every cell (possibly in parallel). Per-cell failures become
/// diagnostics; the returned grid is independent of the worker count.
SweepResult run_sweep(const SweepSpec& spec);

/// 1D kBranchCurve sweep with nearest-n_p branch labels carried from cell to
/// cell (ties go to the lower label).
SweepResult branch_curve(const SweepSpec& spec);

/// kCooling sweep. A LinearizedParams base is cooled as is; a ValidatedParams
/// base is re-solved in every cell and each stable branch is cooled.
SweepResult cooling_map(const SweepSpec& spec);

/// Returns a copy of `base` with the named field (or the virtual
/// kappa_over_omega1 axis) set to `value`. Complex fields are set real.
/// Throws Error{kInvalidSpec} on unknown names.
SystemParams with_field(const SystemParams& base, const std::string& name,
                        double value, Convention convention = Convention::kOmega1);
LinearizedParams with_field(const LinearizedParams& base,
                            const std::string& name, double value,
                            Convention convention = Convention::kOmega1);

bool is_system_field(const std::string& name) noexcept;
bool is_linearized_field(const std::string& name) noexcept;

}  // namespace qomech
