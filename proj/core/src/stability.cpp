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
#include <limits>

#include <Eigen/Eigenvalues>

#include "qomech/errors.hpp"
#include "qomech/stability.hpp"

namespace qomech {

LinearizedParams derive_linearized(const SteadyStateBranch& branch,
                                   const ValidatedParams& vp) {
  const SystemParams& p = vp.get();
  const double a2 = std::norm(branch.alpha);
  LinearizedParams lp;
  lp.delta_eff = branch.delta_eff;
  lp.omega1 = p.omega1;
  lp.omega2_tilde = p.omega2 + 2.0 * p.g2 * a2;
  lp.g1_eff = p.g1 * branch.alpha;
  lp.g2_eff = 4.0 * p.g2 * branch.alpha * branch.beta2.real();
  lp.g22 = Complex(p.g2 * a2, 0.0);
  lp.omega_ex = p.omega_ex;
  lp.theta = p.theta;
  lp.kappa = p.kappa;
  lp.gamma1 = p.gamma1;
  lp.gamma2 = p.gamma2;
  lp.nbar1 = p.nbar1;
  lp.nbar2 = p.nbar2;
  lp.origin = Origin::kBranchDerived;
  return lp;
}

DriftMatrix build_drift_matrix(const LinearizedParams& lp) {
  const Complex i(0.0, 1.0);
  const Complex e = std::polar(1.0, lp.theta);
  const Complex ec = std::conj(e);
  const Complex g1 = lp.g1_eff, g2 = lp.g2_eff, g22 = lp.g22;
  const Complex g1c = std::conj(g1), g2c = std::conj(g2), g22c = std::conj(g22);
  const double k = lp.kappa, d = lp.delta_eff, om = lp.omega_ex;
  const double w1 = lp.omega1, w2 = lp.omega2_tilde;
  const double ga1 = lp.gamma1, ga2 = lp.gamma2;

  DriftMatrix m;
  Matrix6c& a = m.a;
  a.setZero();
  // d(da, db1, db2)/dt
  a(0, 0) = -Complex(k, d);
  a(0, 1) = -i * g1;
  a(0, 2) = -i * g2;
  a(0, 4) = -i * g1;
  a(0, 5) = -i * g2;
  a(1, 0) = -i * g1c;
  a(1, 1) = -Complex(ga1, w1);
  a(1, 2) = -i * om * e;
  a(1, 3) = -i * g1;
  a(2, 0) = -i * g2c;
  a(2, 1) = -i * om * ec;
  a(2, 2) = -Complex(ga2, w2);
  a(2, 3) = -i * g2;
  a(2, 5) = -2.0 * i * g22;
  // Hermitian-conjugate rows
  a(3, 1) = i * g1c;
  a(3, 2) = i * g2c;
  a(3, 3) = -Complex(k, -d);
  a(3, 4) = i * g1c;
  a(3, 5) = i * g2c;
  a(4, 0) = i * g1c;
  a(4, 3) = i * g1;
  a(4, 4) = -Complex(ga1, -w1);
  a(4, 5) = i * om * ec;
  a(5, 0) = i * g2c;
  a(5, 2) = 2.0 * i * g22c;
  a(5, 3) = i * g2;
  a(5, 4) = i * om * e;
  a(5, 5) = -Complex(ga2, -w2);
  return m;
}

StabilityVerdict classify_stability(const DriftMatrix& a) {
  Eigen::ComplexEigenSolver<Matrix6c> es(a.a, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigenSolveFailure, "drift matrix eigenvalues");
  }
  StabilityVerdict v;
  v.max_real_part = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 6; ++k) {
    v.eigenvalues[k] = es.eigenvalues()(k);
    v.max_real_part = std::max(v.max_real_part, v.eigenvalues[k].real());
  }
  std::sort(v.eigenvalues.begin(), v.eigenvalues.end(),
            [](const Complex& x, const Complex& y) {
              return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
            });
  const double ref = std::abs(a.a(0, 0).real());
  const double tol = kStabilityTolerance * ref;
  v.stable = v.max_real_part < -tol;
  v.margin = -v.max_real_part;
  return v;
}

BranchStability classify_linearized(const LinearizedParams& lp,
                                    bool gamma_fallback) {
  BranchStability out;
  const bool zero_gamma = lp.gamma1 == 0.0 || lp.gamma2 == 0.0;
  if (!gamma_fallback || !zero_gamma) {
    out.verdict = classify_stability(build_drift_matrix(lp));
    return out;
  }
  LinearizedParams damped = lp;
  if (damped.gamma1 == 0.0) damped.gamma1 = kGammaFallbackFraction * lp.kappa;
  if (damped.gamma2 == 0.0) damped.gamma2 = kGammaFallbackFraction * lp.kappa;
  out.verdict = classify_stability(build_drift_matrix(damped));
  out.raw_verdict = classify_stability(build_drift_matrix(lp));
  return out;
}

}  // namespace qomech
