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
#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/LU>

#include "qomech/cooling.hpp"
#include "qomech/errors.hpp"

namespace qomech {

namespace {

constexpr double kKroneckerRcond = 1e-14;
constexpr double kKroneckerPairTolerance = 1e-12;
constexpr double kNegativeOccupation = -1e-6;
constexpr double kImagPhonon = 1e-6;

using Matrix36c = Eigen::Matrix<Complex, 36, 36>;
using Vector36c = Eigen::Matrix<Complex, 36, 1>;

}  // namespace

NoiseModel build_noise_model(const LinearizedParams& lp) {
  NoiseModel nm;
  nm.c.setZero();
  nm.c(0, 3) = 2.0 * lp.kappa;
  nm.c(1, 4) = 2.0 * lp.gamma1 * (lp.nbar1 + 1.0);
  nm.c(2, 5) = 2.0 * lp.gamma2 * (lp.nbar2 + 1.0);
  nm.c(4, 1) = 2.0 * lp.gamma1 * lp.nbar1;
  nm.c(5, 2) = 2.0 * lp.gamma2 * lp.nbar2;
  nm.q = 0.5 * (nm.c + nm.c.transpose());
  return nm;
}

CovarianceResult solve_lyapunov(const DriftMatrix& drift, const NoiseModel& nm) {
  const Matrix6c& a = drift.a;
  // Column-major vec: vec(AV) = (I kron A) vec V, vec(V A^T) = (A kron I) vec V.
  Matrix36c k = Matrix36c::Zero();
  for (int j = 0; j < 6; ++j) {
    for (int i = 0; i < 6; ++i) {
      const int row = i + 6 * j;
      for (int m = 0; m < 6; ++m) {
        k(row, m + 6 * j) += a(i, m);
        k(row, i + 6 * m) += a(j, m);
      }
    }
  }
  Vector36c rhs;
  for (int j = 0; j < 6; ++j) {
    for (int i = 0; i < 6; ++i) rhs(i + 6 * j) = -nm.q(i, j);
  }

  // The Kronecker operator has eigenvalues l_i + l_j. Check them directly:
  // the LU condition estimate can miss an exactly singular operator.
  const StabilityVerdict verdict = classify_stability(drift);
  double min_pair = std::numeric_limits<double>::infinity();
  for (const Complex& li : verdict.eigenvalues) {
    for (const Complex& lj : verdict.eigenvalues) min_pair = std::min(min_pair, std::abs(li + lj));
  }
  if (!(min_pair > kKroneckerPairTolerance * std::max(1.0, a.norm()))) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "eigenvalue pair sums to %.3g", min_pair);
    throw Error(ErrorCode::kSingularLyapunov, buf);
  }

  const Eigen::PartialPivLU<Matrix36c> lu(k);
  const double rc = lu.rcond();
  if (!(rc > kKroneckerRcond)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "Kronecker operator rcond=%.3g", rc);
    throw Error(ErrorCode::kSingularLyapunov, buf);
  }
  Vector36c x = lu.solve(rhs);
  x += lu.solve(rhs - k * x);  // one step of iterative refinement

  CovarianceResult out;
  for (int j = 0; j < 6; ++j) {
    for (int i = 0; i < 6; ++i) out.v(i, j) = x(i + 6 * j);
  }
  const Matrix6c res = a * out.v + out.v * a.transpose() + nm.q.cast<Complex>();
  const double qn = nm.q.norm();
  out.lyap_residual = qn > 0.0 ? res.norm() / qn : res.norm();
  out.n1f = out.v(4, 1).real() - 0.5;
  out.n2f = out.v(5, 2).real() - 0.5;
  out.physical = verdict.stable;

  if (out.physical &&
      (out.n1f < kNegativeOccupation || out.n2f < kNegativeOccupation)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "stable system gave n1f=%.6g n2f=%.6g",
                  out.n1f, out.n2f);
    throw Error(ErrorCode::kUnphysicalResult, buf);
  }
  return out;
}

std::pair<double, double> phonon_numbers(const CovarianceResult& cv) {
  const Complex v52 = cv.v(4, 1), v63 = cv.v(5, 2);
  if (std::abs(v52.imag()) > kImagPhonon || std::abs(v63.imag()) > kImagPhonon) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "Im V52=%.3g, Im V63=%.3g", v52.imag(),
                  v63.imag());
    throw Error(ErrorCode::kComplexPhonon, buf);
  }
  return {v52.real() - 0.5, v63.real() - 0.5};
}

DarkModeDiagnostics dark_mode_diagnostics(const LinearizedParams& lp) {
  DarkModeDiagnostics d;
  d.bright_coupling = std::hypot(std::abs(lp.g1_eff), std::abs(lp.g2_eff));
  if (d.bright_coupling == 0.0) {
    throw Error(ErrorCode::kZeroCoupling, "G1 = G2 = 0, dark overlap undefined");
  }
  d.dark_overlap =
      std::abs(lp.g1_eff + lp.g2_eff * std::polar(1.0, lp.theta)) / d.bright_coupling;
  d.mixing_omega = std::abs(lp.omega_ex);
  d.mixing_g22 = std::abs(lp.g22);
  const double mix_tol = kMixingToleranceFraction * lp.omega1;
  d.dark_flag = d.dark_overlap < kDarkTolerance && d.mixing_omega < mix_tol &&
                d.mixing_g22 < mix_tol;
  return d;
}

CoolingPoint evaluate_cooling(const LinearizedParams& lp) {
  CoolingPoint out;
  const DriftMatrix a = build_drift_matrix(lp);
  out.verdict = classify_stability(a);
  if (out.verdict.stable) out.covariance = solve_lyapunov(a, build_noise_model(lp));
  if (lp.g1_eff != Complex(0.0) || lp.g2_eff != Complex(0.0)) {
    out.dark = dark_mode_diagnostics(lp);
  }
  return out;
}

}  // namespace qomech
