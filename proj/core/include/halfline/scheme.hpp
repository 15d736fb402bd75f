// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "halfline/band_matrix.hpp"
#include "halfline/grid.hpp"

namespace halfline {

/// Right-hand side of du/dx = f(x, u); writes the d components into f_out.
/// Only ever called at interval midpoints, so x is finite.
using OdeRhs =
    std::function<void(double x, std::span<const double> u, std::span<double> f_out)>;

/// df/du as a row-major d x d block.
using OdeJacobian =
    std::function<void(double x, std::span<const double> u, std::span<double> jac_out)>;

/// Boundary function g(u(0), u(inf)); writes d components into g_out.
using BoundaryFn = std::function<void(std::span<const double> u_left,
                                      std::span<const double> u_right,
                                      std::span<double> g_out)>;

/// dg/du(0) and dg/du(inf), each written as a row-major d x d block.
using BoundaryJacobian = std::function<void(std::span<const double> u_left,
                                            std::span<const double> u_right,
                                            std::span<double> dg_dleft,
                                            std::span<double> dg_dright)>;

/// Separated boundary conditions: the first n_left components of g depend on
/// u(0) only, the remaining n_right components on u(inf) only. This is what
/// enables the purely banded solve.
struct SeparatedBc {
  int n_left = 0;
  int n_right = 0;
};

/// g genuinely couples u(0) and u(inf); solved through the bordered path.
struct CoupledBc {};

using BcStructure = std::variant<SeparatedBc, CoupledBc>;

/// First-order boundary value problem du/dx = f(x, u) on [0, inf) closed by
/// g(u(0), u(inf)) = 0. When f_jac or g_jac is not supplied the solver falls
/// back to forward differences on f or g.
struct BvpSystem {
  int dim = 0;
  OdeRhs f;
  OdeJacobian f_jac;       // optional
  BoundaryFn g;
  BoundaryJacobian g_jac;  // optional
  BcStructure bc = CoupledBc{};
};

/// Nodal values bound to their grid; row n holds the d components at x_n.
class DiscreteSolution {
public:
  DiscreteSolution(QuasiUniformGrid grid, int dim);

  const QuasiUniformGrid& grid() const noexcept { return grid_; }
  int dim() const noexcept { return dim_; }
  int n_nodes() const noexcept { return grid_.n_nodes(); }

  std::span<double> row(int n) {
    return {values_.data() + static_cast<std::size_t>(n) * dim_,
            static_cast<std::size_t>(dim_)};
  }
  std::span<const double> row(int n) const {
    return {values_.data() + static_cast<std::size_t>(n) * dim_,
            static_cast<std::size_t>(dim_)};
  }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

private:
  QuasiUniformGrid grid_;
  int dim_;
  std::vector<double> values_;  // (N+1) x d, row-major
};

/// Jacobian of the discrete residual for separated boundary conditions.
/// Rows are permuted so that left conditions come first and right conditions
/// last, which keeps every entry within bandwidth 2 dim - 1 of the diagonal.
/// row_of maps a matrix row back to its canonical residual index.
struct BandedJacobian {
  BandMatrix matrix;
  std::vector<std::size_t> row_of;
};

/// Jacobian for coupled boundary conditions: a band over the unknowns
/// U_1..U_N bordered by the dense U_0 column block and the boundary rows,
/// eliminated later through a dim x dim Schur complement.
struct BorderedJacobian {
  BandMatrix interior;             // dim*N square, over U_1..U_N
  std::vector<double> first_block; // dim x dim: d R_0 / d U_0
  std::vector<double> g_left;      // dim x dim: d g / d U_0
  std::vector<double> g_right;     // dim x dim: d g / d U_N
};

/// Structure-aware residual Jacobian; consumed by solve_linear.
class StructuredJacobian {
public:
  StructuredJacobian(BandedJacobian repr, int dim, int n_intervals);
  StructuredJacobian(BorderedJacobian repr, int dim, int n_intervals);

  int dim() const noexcept { return dim_; }
  int n_intervals() const noexcept { return n_intervals_; }
  /// Number of unknowns, dim * (n_intervals + 1).
  std::size_t size() const noexcept;

  bool is_banded() const noexcept;
  const BandedJacobian& banded() const { return std::get<BandedJacobian>(repr_); }
  const BorderedJacobian& bordered() const {
    return std::get<BorderedJacobian>(repr_);
  }

  /// Row-major expansion in canonical ordering (interval rows then boundary
  /// rows, unknown columns U_0..U_N). Intended for tests.
  std::vector<double> to_dense() const;

private:
  std::variant<BandedJacobian, BorderedJacobian> repr_;
  int dim_;
  int n_intervals_;
};

/// Residual of the discrete system in canonical ordering: one d-block per
/// interval,
///
///   R_n = U_{n+1} - U_n - a_n f(x_{n+1/2}, b_n U_{n+1} + c_n U_n),
///
/// for n = 0..N-1, then the boundary block g(U_0, U_N). Size dim * (N+1).
/// Throws EvaluationError when f or g produces a non-finite value.
std::vector<double> residual(const BvpSystem& sys, const SchemeCoefficients& coeffs,
                             const DiscreteSolution& u);

/// Jacobian of `residual` with respect to the nodal unknowns. The interval
/// blocks are
///
///   d R_n / d U_n     = -I - a_n c_n J_f,
///   d R_n / d U_{n+1} = +I - a_n b_n J_f,
///
/// with J_f evaluated at the same blended argument as the residual.
StructuredJacobian jacobian(const BvpSystem& sys, const SchemeCoefficients& coeffs,
                            const DiscreteSolution& u);

/// Forward-difference Jacobian of f at (x, u) into a row-major d x d block;
/// step size sqrt(machine eps) * max(1, |u_j|) per column.
void fd_jacobian_f(const OdeRhs& f, double x, std::span<const double> u,
                   std::span<double> jac_out);

/// Interval-endpoint weights of the superseded midpoint interpolation
///
///   u(x_{n+1/2}) ~ w0 u_n + w1 u_{n+1},
///   w0 = (x_{n+1} - x_{n+1/2}) / (x_{n+1} - x_n),  w1 = 1 - w0.
///
/// Kept for regression comparisons: on the last interval the extended-real
/// limit gives (1, 0), so the boundary value drops out entirely. That is the
/// defect the quarter-point coefficients b, c avoid.
std::pair<double, double> legacy_midpoint_weights(const QuasiUniformGrid& grid, int n);

/// Same weights from raw abscissae x_n < x_half < x_next, all finite.
std::pair<double, double> legacy_midpoint_weights(double x_n, double x_half,
                                                  double x_next);

}  // namespace halfline
