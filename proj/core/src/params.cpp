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

#include <cmath>
#include <numbers>

#include "qomech/errors.hpp"
#include "qomech/params.hpp"

namespace qomech {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kNonPositiveRate: return "NonPositiveRate";
    case ErrorCode::kNegativeValue: return "NegativeValue";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::kSingularMechanicalSystem: return "SingularMechanicalSystem";
    case ErrorCode::kResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::kEigenSolveFailure: return "EigenSolveFailure";
    case ErrorCode::kSingularLyapunov: return "SingularLyapunov";
    case ErrorCode::kUnphysicalResult: return "UnphysicalResult";
    case ErrorCode::kComplexPhonon: return "ComplexPhonon";
    case ErrorCode::kZeroCoupling: return "ZeroCoupling";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnknownKey: return "UnknownKey";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

double reduce_angle(double theta) noexcept {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // fmod of a tiny negative can round up to 2pi
  return r;
}

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kNonFinite, std::string(name) + " is not finite");
  }
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    throw Error(ErrorCode::kNonPositiveRate,
                std::string(name) + " must be > 0");
  }
}

void require_nonnegative(double v, const char* name) {
  if (v < 0.0) {
    throw Error(ErrorCode::kNegativeValue, std::string(name) + " must be >= 0");
  }
}

}  // namespace

ValidatedParams validate_params(const SystemParams& p) {
  const std::pair<double, const char*> fields[] = {
      {p.delta_c, "delta_c"}, {p.omega1, "omega1"},     {p.omega2, "omega2"},
      {p.g1, "g1"},           {p.g2, "g2"},             {p.omega_ex, "omega_ex"},
      {p.theta, "theta"},     {p.eta, "eta"},           {p.kappa, "kappa"},
      {p.gamma1, "gamma1"},   {p.gamma2, "gamma2"},     {p.nbar1, "nbar1"},
      {p.nbar2, "nbar2"},
  };
  for (const auto& [v, name] : fields) require_finite(v, name);

  require_positive(p.kappa, "kappa");
  require_positive(p.omega1, "omega1");
  require_positive(p.omega2, "omega2");
  require_nonnegative(p.eta, "eta");
  require_nonnegative(p.gamma1, "gamma1");
  require_nonnegative(p.gamma2, "gamma2");
  require_nonnegative(p.nbar1, "nbar1");
  require_nonnegative(p.nbar2, "nbar2");

  SystemParams out = p;
  out.theta = reduce_angle(p.theta);
  return ValidatedParams(std::move(out));
}

LinearizedParams validate_linearized(const LinearizedParams& lp) {
  const std::pair<double, const char*> fields[] = {
      {lp.delta_eff, "delta_eff"},
      {lp.omega1, "omega1"},
      {lp.omega2_tilde, "omega2_tilde"},
      {lp.g1_eff.real(), "g1_eff"},
      {lp.g1_eff.imag(), "g1_eff"},
      {lp.g2_eff.real(), "g2_eff"},
      {lp.g2_eff.imag(), "g2_eff"},
      {lp.g22.real(), "g22"},
      {lp.g22.imag(), "g22"},
      {lp.omega_ex, "omega_ex"},
      {lp.theta, "theta"},
      {lp.kappa, "kappa"},
      {lp.gamma1, "gamma1"},
      {lp.gamma2, "gamma2"},
      {lp.nbar1, "nbar1"},
      {lp.nbar2, "nbar2"},
  };
  for (const auto& [v, name] : fields) require_finite(v, name);

  require_positive(lp.kappa, "kappa");
  require_nonnegative(lp.gamma1, "gamma1");
  require_nonnegative(lp.gamma2, "gamma2");
  require_nonnegative(lp.nbar1, "nbar1");
  require_nonnegative(lp.nbar2, "nbar2");

  LinearizedParams out = lp;
  out.theta = reduce_angle(lp.theta);
  return out;
}

}  // namespace qomech
