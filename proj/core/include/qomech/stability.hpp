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

#include <Eigen/Core>

#include "qomech/params.hpp"
#include "qomech/steady_state.hpp"
#include "qomech/verdict.hpp"

namespace qomech {

using Matrix6c = Eigen::Matrix<Complex, 6, 6>;

/// Drift matrix of the fluctuation vector
/// (da, db1, db2, da^+, db1^+, db2^+).
struct DriftMatrix {
  Matrix6c a;
};

/// G1 = g1 alpha, G2 = 4 g2 alpha Re(beta2), G22 = g2 |alpha|^2,
/// omega2_tilde = omega2 + 2 g2 |alpha|^2; Delta copied from the branch.
LinearizedParams derive_linearized(const SteadyStateBranch& branch,
                                   const ValidatedParams& p);

DriftMatrix build_drift_matrix(const LinearizedParams& lp);

/// Relative marginal-stability threshold; the absolute value is this times
/// kappa, read back from A(0,0).
inline constexpr double kStabilityTolerance = 1e-9;

/// Throws Error{kEigenSolveFailure} if the eigen solver does not converge.
StabilityVerdict classify_stability(const DriftMatrix& a);

/// Damping substituted for exactly-zero gamma when the fallback is on.
inline constexpr double kGammaFallbackFraction = 1e-6;

struct BranchStability {
  StabilityVerdict verdict;
  /// Verdict computed with gamma as given, when the fallback replaced a zero
  /// gamma. Differs from `verdict` only on marginal branches.
  std::optional<StabilityVerdict> raw_verdict;
  bool flipped() const noexcept {
    return raw_verdict && raw_verdict->stable != verdict.stable;
  }
};

/// Classifies a linearized parameter set. With `gamma_fallback`, any gamma
/// that is exactly zero is replaced by 1e-6 kappa for the verdict.
BranchStability classify_linearized(const LinearizedParams& lp,
                                    bool gamma_fallback = true);

}  // namespace qomech
