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

#include <utility>

#include <Eigen/Core>

#include "qomech/params.hpp"
#include "qomech/stability.hpp"

namespace qomech {

using Matrix6d = Eigen::Matrix<double, 6, 6>;

/// Delta-correlated bath matrix C, <N_k(s) N_l(s')> = C_kl delta(s - s'),
/// and its symmetric part Q.
struct NoiseModel {
  Matrix6d c;
  Matrix6d q;
};

NoiseModel build_noise_model(const LinearizedParams& lp);

struct CovarianceResult {
  Matrix6c v;
  double n1f = 0.0;
  double n2f = 0.0;
  double lyap_residual = 0.0;  // ||AV + VA^T + Q||_F / ||Q||_F
  bool physical = false;       // the drift matrix was stable
};

/// Solves A V + V A^T + Q = 0 through the 36x36 Kronecker system (plain
/// transpose, complex A, real Q). Throws Error{kSingularLyapunov} when the
/// Kronecker operator is numerically singular, Error{kUnphysicalResult} when a
/// stable system yields a negative occupation.
CovarianceResult solve_lyapunov(const DriftMatrix& a, const NoiseModel& nm);

/// Real parts of V52 - 1/2 and V63 - 1/2 (1-based). Throws
/// Error{kComplexPhonon} if an imaginary part exceeds 1e-6.
std::pair<double, double> phonon_numbers(const CovarianceResult& cv);

struct DarkModeDiagnostics {
  double dark_overlap = 0.0;
  double bright_coupling = 0.0;
  double mixing_omega = 0.0;
  double mixing_g22 = 0.0;
  bool dark_flag = false;
};

inline constexpr double kDarkTolerance = 0.05;
inline constexpr double kMixingToleranceFraction = 0.01;  // of omega1

/// Throws Error{kZeroCoupling} when G1 = G2 = 0.
DarkModeDiagnostics dark_mode_diagnostics(const LinearizedParams& lp);

/// Stability, covariance (when solvable) and dark-mode numbers for one
/// linearized operating point.
struct CoolingPoint {
  StabilityVerdict verdict;
  std::optional<CovarianceResult> covariance;
  std::optional<DarkModeDiagnostics> dark;
};

CoolingPoint evaluate_cooling(const LinearizedParams& lp);

}  // namespace qomech
