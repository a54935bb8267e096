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

#include <array>
#include <vector>

#include "qomech/params.hpp"

namespace qomech {

/// Which closed form to use for the degree-7 photon-number polynomial.
/// kDerived is the default. kPublished reproduces the coefficient listing
/// verbatim, including its two non-matching entries (C5, C6); it exists so the
/// root/oracle cross-check can be exercised against a known-bad transcription.
enum class CoefficientSet { kDerived, kPublished };

struct PolynomialCoefficients {
  std::array<double, 8> c{};  // c[m] multiplies n^m
  double x = 0.0;             // omega1*omega2 - Omega^2
  double y = 0.0;             // 2 cos(2 theta)
  double z = 0.0;             // delta_c^2 + kappa^2
  /// Natural photon-number scale (eta^2 / kappa^2). Roots are located in the
  /// rescaled variable n / n_scale and none above it is returned, since every
  /// steady state has n <= eta^2 / kappa^2. Zero means "no rescaling, no bound".
  double n_scale = 0.0;
  CoefficientSet set = CoefficientSet::kDerived;

  int degree() const noexcept;
};

namespace tolerance {
inline constexpr double kRootAccept = 1e-6;
inline constexpr double kNegative = 1e-9;
inline constexpr double kDeflate = 1e-12;
inline constexpr double kDedupe = 1e-8;
inline constexpr double kComplexReject = 1e-7;
}  // namespace tolerance

PolynomialCoefficients build_polynomial(
    const ValidatedParams& p, CoefficientSet set = CoefficientSet::kDerived);

/// Real, non-negative roots, ascending, from companion-matrix eigenvalues of
/// the deflated (and rescaled) polynomial, Newton-polished in long double.
/// Throws Error{kZeroPolynomial} when every coefficient vanishes.
std::vector<double> find_real_roots(const PolynomialCoefficients& coeffs);

/// Evaluates sum c[m] n^m.
double evaluate(const PolynomialCoefficients& coeffs, double n) noexcept;

}  // namespace qomech
