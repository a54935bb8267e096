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
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qomech/cooling.hpp"
#include "qomech/errors.hpp"
#include "qomech/params.hpp"
#include "qomech/stability.hpp"
#include "qomech/steady_state.hpp"

using namespace qomech;

namespace {

SystemParams valid() {
  SystemParams p;
  p.kappa = 1.0;
  p.omega1 = p.omega2 = 5.0;
  return p;
}

ErrorCode code_of(const SystemParams& p) {
  try {
    (void)validate_params(p);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected validation error");
  return ErrorCode::kInvalidSpec;
}

}  // namespace

TEST_CASE("valid record passes unchanged") {
  const SystemParams p = valid();
  CHECK(validate_params(p).get() == p);
}

TEST_CASE("theta is reduced modulo 2 pi") {
  SystemParams p = valid();
  p.theta = 3.0 * std::numbers::pi;
  CHECK(validate_params(p)->theta == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  p.theta = -0.5 * std::numbers::pi;
  CHECK(validate_params(p)->theta == doctest::Approx(1.5 * std::numbers::pi));
  CHECK(reduce_angle(2.0 * std::numbers::pi) == 0.0);
}

TEST_CASE("rejections") {
  SystemParams p = valid();
  p.kappa = 0.0;
  CHECK(code_of(p) == ErrorCode::kNonPositiveRate);
  p = valid();
  p.omega2 = -1.0;
  CHECK(code_of(p) == ErrorCode::kNonPositiveRate);
  p = valid();
  p.eta = -1.0;
  CHECK(code_of(p) == ErrorCode::kNegativeValue);
  p = valid();
  p.gamma1 = -1e-9;
  CHECK(code_of(p) == ErrorCode::kNegativeValue);
  p = valid();
  p.nbar2 = -1.0;
  CHECK(code_of(p) == ErrorCode::kNegativeValue);
  p = valid();
  p.g2 = std::numeric_limits<double>::quiet_NaN();
  CHECK(code_of(p) == ErrorCode::kNonFinite);
  p = valid();
  p.delta_c = std::numeric_limits<double>::infinity();
  CHECK(code_of(p) == ErrorCode::kNonFinite);
}

TEST_CASE("linearized validation") {
  LinearizedParams lp;
  lp.kappa = 0.0;
  CHECK_THROWS_AS(validate_linearized(lp), Error);
  lp.kappa = 1.0;
  lp.g1_eff = {std::numeric_limits<double>::infinity(), 0.0};
  CHECK_THROWS_AS(validate_linearized(lp), Error);
  lp.g1_eff = 0.1;
  lp.theta = -std::numbers::pi;
  CHECK(validate_linearized(lp).theta == doctest::Approx(std::numbers::pi));
}

TEST_CASE("validate_params is idempotent") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    SystemParams p = testing::random_system(rng);
    p.theta += 7.0;
    const ValidatedParams once = validate_params(p);
    CHECK(validate_params(once) == once);
  }
}

TEST_CASE("uniform rate rescaling leaves dimensionless outputs unchanged") {
  std::mt19937_64 rng(4);
  SolveOptions opt;
  opt.oracle_mode = false;
  for (int i = 0; i < 30; ++i) {
    SystemParams p = testing::random_system(rng);
    p.gamma1 = p.gamma2 = 1e-4;
    const double c = 0.1 + 20.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto a = solve_branches(validate_params(p), opt);
    const auto b = solve_branches(validate_params(testing::rescale(p, c)), opt);
    CAPTURE(i);
    REQUIRE(a.branches.size() == b.branches.size());
    for (std::size_t k = 0; k < a.branches.size(); ++k) {
      CHECK(b.branches[k].n_p == doctest::Approx(a.branches[k].n_p).epsilon(1e-7));
      const auto sa = classify_linearized(
          derive_linearized(a.branches[k], validate_params(p)));
      const auto sb = classify_linearized(
          derive_linearized(b.branches[k], validate_params(testing::rescale(p, c))));
      CHECK(sa.verdict.stable == sb.verdict.stable);
    }
  }

  for (int i = 0; i < 30; ++i) {
    const LinearizedParams lp = testing::random_linearized(rng);
    const auto a = evaluate_cooling(lp);
    if (!a.covariance || !a.verdict.stable) continue;
    const auto b = evaluate_cooling(testing::rescale(lp, 3.7));
    REQUIRE(b.covariance);
    CHECK(b.verdict.stable);
    CHECK(b.covariance->n1f == doctest::Approx(a.covariance->n1f).epsilon(1e-7));
    CHECK(b.covariance->n2f == doctest::Approx(a.covariance->n2f).epsilon(1e-7));
  }
}
