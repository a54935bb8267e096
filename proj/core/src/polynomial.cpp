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
#include <complex>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qomech/errors.hpp"
#include "qomech/polynomial.hpp"

namespace qomech {

namespace {

// cos(2 theta) is invariant under theta -> pi - theta and theta -> theta + pi;
// folding first makes mirrored inputs produce bit-identical coefficients.
double fold_theta(double theta) {
  constexpr double kPi = std::numbers::pi;
  double t = std::fmod(theta, kPi);
  if (t < 0.0) t += kPi;
  return std::min(t, kPi - t);
}

void fill_common(const SystemParams& p, double x, double z, double P,
                 std::array<double, 8>& c) {
  const double g1 = p.g1, g2 = p.g2, w1 = p.omega1, w2 = p.omega2;
  const double om2 = p.omega_ex * p.omega_ex;
  const double dc = p.delta_c, eta2 = p.eta * p.eta;
  const double y = 2.0 * std::cos(2.0 * fold_theta(p.theta));
  const double x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x, x6 = x5 * x;
  const double g1_2 = g1 * g1, g1_4 = g1_2 * g1_2;
  const double g2_2 = g2 * g2, g2_3 = g2_2 * g2, g2_4 = g2_3 * g2;
  const double w1_2 = w1 * w1, w1_3 = w1_2 * w1, w1_4 = w1_3 * w1;

  c[4] = 16.0 * g1_4 * g2 * x3 * w2 * (x + 3.0 * P - 0.5 * om2 - 0.75 * om2 * y) +
         32.0 * g1_2 * g2_2 * x3 * w1 * dc *
             (-9.0 * P - 3.0 * x + om2 + 2.0 * om2 * y) -
         256.0 * (g2_4 * w1_4 * x2 * eta2 - g2_3 * x3 * w1_3 * z);
  c[3] = -4.0 * x4 * g1_2 * g2 * dc * (2.0 * x + 14.0 * P - om2 - 1.5 * om2 * y) +
         4.0 * g1_4 * x4 * w2 * w2 - 256.0 * g2_3 * x3 * w1_3 * eta2 +
         96.0 * g2_2 * x4 * w1_2 * z;
  c[2] = -4.0 * g1_2 * x5 * w2 * dc - 96.0 * g2_2 * x4 * w1_2 * eta2 +
         16.0 * g2 * x5 * w1 * z;
  c[1] = -16.0 * g2 * x5 * eta2 * w1 + x6 * z;
  c[0] = -eta2 * x6;

  const double s = 2.0 * (x + P) - om2 * y;
  c[7] = 64.0 * g1_4 * g2_4 * w1_2 * s * s;
}

void fill_derived_high(const SystemParams& p, double x, double z, double P,
                       std::array<double, 8>& c) {
  const double g1 = p.g1, g2 = p.g2, w1 = p.omega1;
  const double om2 = p.omega_ex * p.omega_ex;
  const double dc = p.delta_c;
  const double y = 2.0 * std::cos(2.0 * fold_theta(p.theta));
  const double x2 = x * x;
  const double g1_2 = g1 * g1, g1_4 = g1_2 * g1_2;
  const double g2_2 = g2 * g2, g2_3 = g2_2 * g2, g2_4 = g2_3 * g2;
  const double w1_2 = w1 * w1, w1_3 = w1_2 * w1, w1_4 = w1_3 * w1;
  const double s = 2.0 * (x + P) - om2 * y;
  const double yp = y + 2.0;

  c[6] = 16.0 * g1_4 * g2_3 * w1 * x * s * (16.0 * P - 3.0 * om2 * yp) -
         256.0 * g1_2 * g2_4 * w1_3 * x * dc * s;
  c[5] = 16.0 * g1_4 * g2_2 * x2 *
             (24.0 * P * P - 8.0 * om2 * P * yp +
              (9.0 / 16.0) * om2 * om2 * yp * yp) +
         256.0 * g2_4 * w1_4 * x2 * z +
         64.0 * g2_3 * g1_2 * w1_2 * x2 * dc *
             (om2 + 3.5 * om2 * y - (6.0 * x + 10.0 * P));
}

// Verbatim transcription of the published listing.
void fill_published_high(const SystemParams& p, double x, double z, double P,
                         std::array<double, 8>& c) {
  const double g1 = p.g1, g2 = p.g2, w1 = p.omega1;
  const double om2 = p.omega_ex * p.omega_ex, om4 = om2 * om2;
  const double dc = p.delta_c;
  const double y = 2.0 * std::cos(2.0 * fold_theta(p.theta));
  const double x2 = x * x;
  const double g1_2 = g1 * g1, g1_4 = g1_2 * g1_2;
  const double g2_2 = g2 * g2, g2_3 = g2_2 * g2, g2_4 = g2_3 * g2;
  const double w1_2 = w1 * w1, w1_3 = w1_2 * w1, w1_4 = w1_3 * w1;
  const double two_x2p = 2.0 * (x + 2.0 * P);

  c[6] = 32.0 * g1_4 * g2_3 * w1 * x *
             (two_x2p * two_x2p - 16.0 * P * P -
              om2 * (2.0 * (1.0 + P) + y * (4.0 + 9.0 * P)) +
              1.5 * om4 * y * y) -
         256.0 * g2_4 * g1_2 * w1_3 * x * dc * (2.0 * (x + P) + om2 * y);
  const double xs5 = x + std::sqrt(5.0) * P;
  c[5] = 16.0 * g1_4 * g2_2 * x2 *
             (xs5 * xs5 + 8.0 * P * P +
              (0.75 * om4 - 0.5 * om2 * (3.0 * x + 13.0 * P)) * y +
              om4 * (11.0 / 8.0 + (9.0 / 16.0) * (y * y - 2.0)) -
              om2 * (x + 3.0 * P)) +
         256.0 * g2_4 * w1_4 * x2 * z +
         64.0 * g2_3 * g1_2 * w1_2 * x2 * dc *
             (om2 + 3.5 * om2 * y - (6.0 * x + 10.0 * P));
}

// Parlett-Reinsch diagonal balancing, radix 2.
template <typename Matrix>
void balance(Matrix& a) {
  const Eigen::Index n = a.rows();
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / 2.0) { c *= 2.0; r /= 2.0; f *= 2.0; }
      while (c >= r * 2.0) { c /= 2.0; r *= 2.0; f /= 2.0; }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

long double horner(const std::vector<long double>& d, long double t,
                   long double* deriv) {
  long double v = 0.0L, dv = 0.0L;
  for (auto it = d.rbegin(); it != d.rend(); ++it) {
    dv = dv * t + v;
    v = v * t + *it;
  }
  if (deriv) *deriv = dv;
  return v;
}

long double polish(const std::vector<long double>& d, long double t) {
  long double best = t;
  long double best_abs = std::fabs(horner(d, t, nullptr));
  for (int it = 0; it < 30 && best_abs > 0.0L; ++it) {
    long double dv = 0.0L;
    const long double v = horner(d, t, &dv);
    if (dv == 0.0L) break;
    t -= v / dv;
    const long double a = std::fabs(horner(d, t, nullptr));
    if (a < best_abs) {
      best_abs = a;
      best = t;
    } else {
      break;
    }
  }
  return best;
}

}  // namespace

int PolynomialCoefficients::degree() const noexcept {
  for (int m = 7; m >= 0; --m) {
    if (c[m] != 0.0) return m;
  }
  return -1;
}

PolynomialCoefficients build_polynomial(const ValidatedParams& vp,
                                        CoefficientSet set) {
  const SystemParams& p = vp.get();
  PolynomialCoefficients out;
  const double P = p.omega1 * p.omega2;
  out.x = P - p.omega_ex * p.omega_ex;
  out.y = 2.0 * std::cos(2.0 * fold_theta(p.theta));
  out.z = p.delta_c * p.delta_c + p.kappa * p.kappa;
  out.n_scale = (p.eta * p.eta) / (p.kappa * p.kappa);
  out.set = set;
  fill_common(p, out.x, out.z, P, out.c);
  if (set == CoefficientSet::kDerived) {
    fill_derived_high(p, out.x, out.z, P, out.c);
  } else {
    fill_published_high(p, out.x, out.z, P, out.c);
  }
  return out;
}

double evaluate(const PolynomialCoefficients& coeffs, double n) noexcept {
  double v = 0.0;
  for (int m = 7; m >= 0; --m) v = v * n + coeffs.c[m];
  return v;
}

std::vector<double> find_real_roots(const PolynomialCoefficients& coeffs) {
  const double s =
      (coeffs.n_scale > 0.0 && std::isfinite(coeffs.n_scale)) ? coeffs.n_scale
                                                               : 1.0;
  // Coefficients of the same polynomial in t = n / s.
  std::vector<long double> d(8);
  long double sm = 1.0L;
  long double dmax = 0.0L;
  for (int m = 0; m < 8; ++m) {
    d[m] = static_cast<long double>(coeffs.c[m]) * sm;
    sm *= s;
    dmax = std::max(dmax, std::fabs(d[m]));
  }
  if (dmax == 0.0L) {
    throw Error(ErrorCode::kZeroPolynomial, "all coefficients vanish");
  }
  const long double cut = static_cast<long double>(tolerance::kDeflate) * dmax;
  while (!d.empty() && std::fabs(d.back()) < cut) d.pop_back();
  const int deg = static_cast<int>(d.size()) - 1;
  if (deg < 1) {
    throw Error(ErrorCode::kZeroPolynomial,
                "no term beyond the constant survives deflation");
  }

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int j = 0; j < deg; ++j) {
    comp(0, j) = static_cast<double>(-d[deg - 1 - j] / d[deg]);
  }
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  balance(comp);

  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigenSolveFailure, "companion eigenvalues");
  }

  std::vector<double> roots;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const std::complex<double> t = es.eigenvalues()(k);
    const double re = t.real() * s;
    const double im = t.imag() * s;
    if (std::abs(im) >= tolerance::kComplexReject * (1.0 + std::abs(re))) continue;
    const double tr = static_cast<double>(polish(d, t.real()));
    const double n = tr * s;
    if (n < -tolerance::kNegative) continue;
    // n (kappa^2 + Delta^2) > eta^2 beyond the scale, so nothing physical
    // lives there; clusters near the mechanical resonance do (D^4 factor).
    if (coeffs.n_scale > 0.0 && n > coeffs.n_scale * (1.0 + tolerance::kRootAccept)) continue;
    roots.push_back(std::max(0.0, n));
  }
  std::sort(roots.begin(), roots.end());

  std::vector<double> out;
  for (double r : roots) {
    if (!out.empty() && r - out.back() < tolerance::kDedupe * (1.0 + r)) continue;
    out.push_back(r);
  }
  return out;
}

}  // namespace qomech
