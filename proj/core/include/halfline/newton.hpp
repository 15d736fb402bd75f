// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "halfline/scheme.hpp"

namespace halfline {

/// Newton iteration controls. Termination is update-based: the iteration
/// stops once the mean absolute applied update drops to tol or below.
struct NewtonConfig {
  double tol = 1e-12;
  int max_iter = 50;
  double damping = 1.0;  // step scale, in (0, 1]
};

struct NewtonReport {
  int iterations = 0;
  double final_update_norm = 0.0;
  bool converged = false;
};

/// Mean absolute value: sum |delta_i| / size. The same scalar regardless of
/// how the entries are laid out.
double update_norm(std::span<const double> delta);

/// Solves J x = rhs. Banded LU with row partial pivoting for separated
/// boundary conditions; band plus dim x dim Schur complement for coupled
/// ones. rhs is in canonical residual ordering, the result in nodal
/// ordering U_0..U_N. Throws SingularJacobianError from the factorization.
std::vector<double> solve_linear(const StructuredJacobian& jac,
                                 std::span<const double> rhs);

/// Damped Newton on the discrete system, starting from `initial` (which also
/// fixes the grid). Non-finite iterates raise DivergenceError; a run that
/// merely fails the tolerance within max_iter returns converged = false.
std::pair<DiscreteSolution, NewtonReport> newton_solve(const BvpSystem& sys,
                                                       DiscreteSolution initial,
                                                       const NewtonConfig& cfg = {});

/// Warm-start transfer to the grid with twice the intervals of the same map:
/// even fine nodes copy the coarse values, odd ones take the mean of their
/// coarse neighbours (linear interpolation in xi).
DiscreteSolution interpolate_to_finer(const DiscreteSolution& coarse);

struct ContinuationStep {
  int n_intervals;
  DiscreteSolution solution;
  NewtonReport report;
};

struct ContinuationFailure {
  int n_intervals;
  std::string reason;
};

/// Outcome of mesh continuation: the converged prefix of the grid sequence,
/// plus diagnostics for the first grid that failed, if any.
struct ContinuationRun {
  std::vector<ContinuationStep> steps;
  std::optional<ContinuationFailure> failure;

  bool completed() const noexcept { return !failure.has_value(); }
  const DiscreteSolution& finest() const { return steps.back().solution; }
  const ContinuationStep* step_for(int n_intervals) const;
};

/// Produces the first Newton iterate on the coarsest grid.
using FirstIterate = std::function<DiscreteSolution(const QuasiUniformGrid&)>;

/// Solves on every grid of a doubling sequence, warm-starting each grid from
/// the interpolated previous solution. Stops at the first failing grid and
/// keeps the converged prefix. n_list must satisfy n_list[i+1] = 2 n_list[i].
ContinuationRun continuation_solve(const BvpSystem& sys, const GridMapSpec& map,
                                   std::span<const int> n_list,
                                   const FirstIterate& first_iterate,
                                   const NewtonConfig& cfg = {});

}  // namespace halfline
