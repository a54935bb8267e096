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
#include <vector>

#include "qomech/params.hpp"
#include "qomech/polynomial.hpp"
#include "qomech/verdict.hpp"

namespace qomech {

/// Classical mechanical amplitudes at a fixed intracavity photon number.
struct MechanicalState {
  Complex beta1;
  Complex beta2;
  double delta_eff = 0.0;
};

/// Solves the two mechanical steady-state equations at |alpha|^2 = n as a
/// 4x4 real system in (Re b1, Im b1, Re b2, Im b2). Damping is ignored unless
/// `with_damping`. Throws Error{kSingularMechanicalSystem}.
MechanicalState solve_mechanical(const SystemParams& p, double n,
                                 bool with_damping = false);

/// Delta_c + 2 g1 Re b1 + g2 (b2*^2 + b2^2 + 2|b2|^2).
double effective_detuning(const SystemParams& p, Complex beta1,
                          Complex beta2) noexcept;

struct SteadyStateBranch {
  double n_p = 0.0;
  Complex alpha;
  Complex beta1;
  Complex beta2;
  double delta_eff = 0.0;
  double residual = 0.0;
  std::optional<StabilityVerdict> stability;
};

/// |eta^2/(kappa^2+Delta^2) - n| / max(1, n).
double self_consistency_residual(const SystemParams& p, double n,
                                 double delta_eff) noexcept;

/// Builds the full branch at photon number n. Throws
/// Error{kSingularMechanicalSystem | kResidualTooLarge}.
SteadyStateBranch reconstruct_branch(const ValidatedParams& p, double n_p,
                                     bool with_damping = false);

struct OracleResult {
  std::vector<double> roots;
  std::size_t skipped_points = 0;  // grid points where the 4x4 solve was singular
};

/// Independent root finder: brackets sign changes of
/// f(n) = eta^2/(kappa^2 + Delta(n)^2) - n on a uniform grid over
/// [0, (1 + margin) eta^2/kappa^2] and bisects each to 1e-12 relative.
/// Never touches the polynomial coefficients.
OracleResult oracle_roots(const ValidatedParams& p, std::size_t scan_points,
                          bool with_damping = false);

inline constexpr std::size_t kMinScanPoints = 1000;
inline constexpr std::size_t kDefaultScanPoints = 4000;

struct SolveOptions {
  bool oracle_mode = true;
  std::size_t scan_points = kDefaultScanPoints;
  bool with_mech_damping = false;
  CoefficientSet coefficients = CoefficientSet::kDerived;
};

struct BranchDiagnostic {
  enum class Kind { kCoefficientMismatch, kResidualRejected, kSingular, kOracleSkipped };
  Kind kind;
  std::string message;
};

struct BranchSet {
  std::vector<SteadyStateBranch> branches;  // ascending n_p
  std::vector<double> polynomial_roots;
  std::vector<double> oracle_roots;
  bool coefficient_mismatch = false;
  std::vector<BranchDiagnostic> diagnostics;
};

/// build_polynomial -> find_real_roots -> reconstruct_branch, cross-checked
/// against oracle_roots when options.oracle_mode is set.
BranchSet solve_branches(const ValidatedParams& p,
                         const SolveOptions& options = {});

/// True when both sorted lists have equal length and agree elementwise to
/// `rel_tol` relative.
bool roots_agree(const std::vector<double>& a, const std::vector<double>& b,
                 double rel_tol = 1e-6) noexcept;

std::string_view to_string(BranchDiagnostic::Kind kind) noexcept;

}  // namespace qomech
