// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <span>

#include "halfline/newton.hpp"
#include "halfline/richardson.hpp"
#include "halfline/scheme.hpp"

namespace halfline {

/// The electrostatics benchmark u'' = 2 sinh u on [0, inf), u(0) = u0 > 0,
/// u(inf) = 0, posed as the first-order system over (u, u'). Boundary
/// conditions are separated: one condition at each end.
BvpSystem colloid_system(double u0);

/// Closed-form (u, u') at x >= 0, +inf included. With r(x) =
/// tanh(u0/4) e^(-sqrt(2) x):
///
///   u(x)  = 2 ln((1 + r) / (1 - r)),  u'(x) = -4 sqrt(2) r / (1 - r^2),
///
/// evaluated through log1p so the decaying tail keeps full relative accuracy
/// and large x cannot overflow. Serves as the error oracle in tests.
std::array<double, 2> colloid_exact(double u0, double x);

/// Missing initial slope u'(0) = -2 sqrt(cosh u0 - 1), computed in the
/// cancellation-free form -2 sqrt(2) sinh(u0 / 2).
double colloid_dudx0(double u0);

ExactSolution colloid_exact_fn(double u0);

/// Linear problem u1' = u2, u2' = u1 with u1(0) = 1, u1(inf) = 0 and
/// solution (e^-x, -e^-x). Newton lands on it in one step, which pins down
/// solver regressions cheaply.
BvpSystem linear_fixture();
std::array<double, 2> linear_fixture_exact(double x);
ExactSolution linear_fixture_exact_fn();

/// The customary cold start for the electrostatics problem: every row set to
/// (u0, -1).
DiscreteSolution colloid_first_iterate(double u0, const QuasiUniformGrid& grid);

struct ColloidRun {
  ContinuationRun run;
  /// True when the cold start failed on the coarsest grid and the first
  /// iterate had to be rebuilt by walking u0 up in unit steps.
  bool used_parameter_continuation = false;
};

/// Mesh continuation for the electrostatics problem from the cold start.
/// If the coarsest grid refuses to converge and u0 > 1, the driver solves
/// u0 = 1, 2, ..., target on the coarsest grid, each solve warm-starting the
/// next, and retries mesh continuation from that iterate.
ColloidRun solve_colloid(double u0, const GridMapSpec& map, std::span<const int> n_list,
                         const NewtonConfig& cfg = {});

}  // namespace halfline
