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

#include <complex>
#include <string>
#include <utility>

namespace qomech {

using Complex = std::complex<double>;

/// Physical rates and couplings of the driven three-mode system. All rate
/// fields share one reference unit, named by `unit_label` (metadata only).
struct SystemParams {
  double delta_c = 0.0;   // cavity-light detuning
  double omega1 = 1.0;    // mechanical frequency, linearly coupled mode
  double omega2 = 1.0;    // mechanical frequency, quadratically coupled mode
  double g1 = 0.0;        // linear coupling
  double g2 = 0.0;        // quadratic coupling
  double omega_ex = 0.0;  // phonon-exchange strength
  double theta = 0.0;     // exchange phase [rad]
  double eta = 0.0;       // drive amplitude, real and >= 0
  double kappa = 1.0;     // cavity decay
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double nbar1 = 0.0;
  double nbar2 = 0.0;
  std::string unit_label = "kappa";

  bool operator==(const SystemParams&) const = default;
};

/// SystemParams that passed validate_params. Only that function can build
/// one, so holding a ValidatedParams is proof the invariants hold.
class ValidatedParams {
 public:
  const SystemParams& get() const noexcept { return params_; }
  const SystemParams* operator->() const noexcept { return &params_; }

  bool operator==(const ValidatedParams&) const = default;

 private:
  friend ValidatedParams validate_params(const SystemParams& p);
  explicit ValidatedParams(SystemParams p) : params_(std::move(p)) {}

  SystemParams params_;
};

/// Reduces theta to [0, 2pi) and checks rate signs and finiteness.
/// Throws Error{kNonPositiveRate | kNegativeValue | kNonFinite}.
ValidatedParams validate_params(const SystemParams& p);
inline ValidatedParams validate_params(const ValidatedParams& p) {
  return validate_params(p.get());
}

enum class Origin { kBranchDerived, kDirect };

/// Effective parameters of the linearized fluctuation dynamics.
struct LinearizedParams {
  double delta_eff = 0.0;
  double omega1 = 1.0;
  double omega2_tilde = 1.0;
  Complex g1_eff{};
  Complex g2_eff{};
  Complex g22{};
  double omega_ex = 0.0;
  double theta = 0.0;
  double kappa = 1.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double nbar1 = 0.0;
  double nbar2 = 0.0;
  Origin origin = Origin::kDirect;

  bool operator==(const LinearizedParams&) const = default;
};

/// kappa > 0, every field finite, rates/occupancies non-negative; reduces
/// theta like validate_params.
LinearizedParams validate_linearized(const LinearizedParams& lp);

double reduce_angle(double theta) noexcept;

}  // namespace qomech
