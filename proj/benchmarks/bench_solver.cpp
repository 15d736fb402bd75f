// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks along the solver's hot path: grid construction, residual
// and Jacobian assembly, the banded linear solve, a Newton resolve from a
// converged state, and the full continuation sweep behind the published
// table. Sizes mirror the benchmark grids (160 .. 5120 intervals).
#include <benchmark/benchmark.h>

#include <utility>
#include <vector>

#include "halfline/grid.hpp"
#include "halfline/newton.hpp"
#include "halfline/problems.hpp"
#include "halfline/scheme.hpp"

using namespace halfline;

namespace {

const GridMapSpec kMap{GridMap::Logarithmic, 10.0};

DiscreteSolution exact_state(const QuasiUniformGrid& grid, double u0) {
  DiscreteSolution state(grid, 2);
  for (int n = 0; n <= grid.n_intervals(); ++n) {
    const auto exact = colloid_exact(u0, grid.node(n));
    state.row(n)[0] = exact[0];
    state.row(n)[1] = exact[1];
  }
  return state;
}

void BM_GridConstruction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const QuasiUniformGrid grid(kMap, n);
    benchmark::DoNotOptimize(grid.node(n / 2));
  }
}
BENCHMARK(BM_GridConstruction)->Arg(160)->Arg(1280)->Arg(5120);

void BM_ResidualAssembly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BvpSystem sys = colloid_system(7.0);
  const QuasiUniformGrid grid(kMap, n);
  const SchemeCoefficients coeffs = scheme_coefficients(grid);
  const DiscreteSolution u = exact_state(grid, 7.0);
  for (auto _ : state) {
    std::vector<double> r = residual(sys, coeffs, u);
    benchmark::DoNotOptimize(r.data());
  }
}
BENCHMARK(BM_ResidualAssembly)->Arg(160)->Arg(1280)->Arg(5120);

void BM_JacobianAssembly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BvpSystem sys = colloid_system(7.0);
  const QuasiUniformGrid grid(kMap, n);
  const SchemeCoefficients coeffs = scheme_coefficients(grid);
  const DiscreteSolution u = exact_state(grid, 7.0);
  for (auto _ : state) {
    StructuredJacobian jac = jacobian(sys, coeffs, u);
    benchmark::DoNotOptimize(&jac);
  }
}
BENCHMARK(BM_JacobianAssembly)->Arg(160)->Arg(1280)->Arg(5120);

void BM_BandedSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BvpSystem sys = colloid_system(7.0);
  const QuasiUniformGrid grid(kMap, n);
  const SchemeCoefficients coeffs = scheme_coefficients(grid);
  const DiscreteSolution u = exact_state(grid, 7.0);
  const std::vector<double> rhs = residual(sys, coeffs, u);
  for (auto _ : state) {
    // factorization cost dominates, so assemble fresh each round
    const StructuredJacobian jac = jacobian(sys, coeffs, u);
    std::vector<double> x = solve_linear(jac, rhs);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_BandedSolve)->Arg(160)->Arg(1280)->Arg(5120);

void BM_NewtonResolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BvpSystem sys = colloid_system(7.0);
  const QuasiUniformGrid grid(kMap, n);
  const DiscreteSolution start = exact_state(grid, 7.0);
  for (auto _ : state) {
    auto result = newton_solve(sys, start);
    benchmark::DoNotOptimize(result.second.iterations);
  }
}
BENCHMARK(BM_NewtonResolve)->Arg(160)->Arg(1280)->Arg(5120);

void BM_ContinuationSweep(benchmark::State& state) {
  const std::vector<int> grids = {160, 320, 640, 1280, 2560, 5120};
  for (auto _ : state) {
    const ColloidRun run = solve_colloid(7.0, kMap, grids);
    benchmark::DoNotOptimize(run.run.steps.back().solution.row(0)[1]);
  }
}
BENCHMARK(BM_ContinuationSweep);

}  // namespace

BENCHMARK_MAIN();
