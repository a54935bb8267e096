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

#include <numbers>

#include <benchmark/benchmark.h>

#include "qomech/cooling.hpp"
#include "qomech/polynomial.hpp"
#include "qomech/stability.hpp"
#include "qomech/steady_state.hpp"
#include "qomech/sweep.hpp"

using namespace qomech;

namespace {

// Seven-branch regime with quadratic coupling, in kappa units.
ValidatedParams multistable() {
  SystemParams p;
  p.omega1 = p.omega2 = 5.0;
  p.g1 = 0.05;
  p.g2 = -0.0004;
  p.omega_ex = 1.0;
  p.theta = std::numbers::pi;
  p.eta = 95.0;
  p.delta_c = 6.0;
  return validate_params(p);
}

LinearizedParams cooling_point() {
  LinearizedParams lp;
  lp.g1_eff = 0.1;
  lp.g2_eff = -0.01;
  lp.g22 = -0.01;
  lp.omega_ex = 0.1;
  lp.theta = std::numbers::pi;
  lp.kappa = 0.1;
  lp.gamma1 = lp.gamma2 = 2e-6;
  lp.nbar1 = lp.nbar2 = 300.0;
  return lp;
}

void BM_PolynomialRoots(benchmark::State& state) {
  const auto p = multistable();
  for (auto _ : state) benchmark::DoNotOptimize(find_real_roots(build_polynomial(p)));
}
BENCHMARK(BM_PolynomialRoots);

void BM_OracleRoots(benchmark::State& state) {
  const auto p = multistable();
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_roots(p, n));
}
BENCHMARK(BM_OracleRoots)->Arg(kMinScanPoints)->Arg(kDefaultScanPoints);

void BM_SolveBranches(benchmark::State& state) {
  const auto p = multistable();
  for (auto _ : state) benchmark::DoNotOptimize(solve_branches(p));
}
BENCHMARK(BM_SolveBranches);

void BM_Lyapunov(benchmark::State& state) {
  const auto lp = cooling_point();
  const auto a = build_drift_matrix(lp);
  const auto q = build_noise_model(lp);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lyapunov(a, q));
}
BENCHMARK(BM_Lyapunov);

void BM_CoolingPoint(benchmark::State& state) {
  const auto lp = cooling_point();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_cooling(lp));
}
BENCHMARK(BM_CoolingPoint);

// Stable-count sweep cells (branches, linearization, stability), one thread.
void BM_SweepCell(benchmark::State& state) {
  SweepOptions opt;
  opt.threads = 1;
  const SweepSpec spec{{Axis{"delta_c", 5.0, 7.0, 8, AxisScale::kLinear}}, multistable(),
                       SweepMode::kStableCount, opt};
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
  state.SetItemsProcessed(state.iterations() * 8);
}
BENCHMARK(BM_SweepCell);

}  // namespace

BENCHMARK_MAIN();
