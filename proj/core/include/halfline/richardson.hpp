// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "halfline/scheme.hpp"

namespace halfline {

/// Exact or reference solution sampled at a node. Must accept x = +inf and
/// return the limit values there.
using ExactSolution = std::function<void(double x, std::span<double> u_out)>;

/// One extrapolation step at grid ratio 2 and error order p:
/// U = u_fine + (u_fine - u_coarse) / (2^p - 1). Requires p > 0.
double extrapolate_step(double u_coarse, double u_fine, double p);

/// Triangular array U_{g,k} for a scalar quantity: column 0 holds the raw
/// per-grid values, each further column removes one more error term, using
/// orders p_k = p0 + k * order_step between columns k and k+1.
struct ExtrapolationTable {
  std::string quantity_label;
  std::vector<int> grid_sizes;               // N_0 .. N_G, doubling
  std::vector<std::vector<double>> entries;  // entries[g][k], k <= min(g, levels)
  std::vector<double> orders;                // p_0 .. p_{levels-1}

  int levels() const noexcept { return static_cast<int>(orders.size()); }
  /// Throws std::out_of_range for k > min(g, levels).
  double value(int g, int k) const;
};

ExtrapolationTable build_table(std::span<const double> raw_values,
                               std::span<const int> grid_sizes, double p0,
                               double order_step, int levels,
                               std::string quantity_label = {});

/// log2(err_coarse / err_fine); throws std::domain_error unless both errors
/// are strictly positive.
double observed_order(double err_coarse, double err_fine);

/// Even-node restriction of a solution with 2N intervals onto the nested
/// grid with N. Throws std::invalid_argument for odd interval counts.
DiscreteSolution restrict_to_coarse(const DiscreteSolution& fine);

/// A posteriori error estimate for the fine solution,
/// E_n = (U_{2N,2n} - U_{N,n}) / (2^p0 - 1), on the coarse grid's nodes.
struct ErrorEstimate {
  int coarse_n_intervals = 0;
  int dim = 0;
  double order_used = 0.0;
  std::vector<double> values;  // (N+1) x dim, row-major

  std::span<const double> row(int n) const {
    return {values.data() + static_cast<std::size_t>(n) * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
};

/// Requires the two solutions to share the map with fine.N = 2 coarse.N.
ErrorEstimate error_estimate(const DiscreteSolution& coarse,
                             const DiscreteSolution& fine, double p0);

/// Componentwise nodal error exact(x_n) - U_n, (N+1) x dim row-major.
std::vector<double> global_error(const DiscreteSolution& u, const ExactSolution& exact);

/// How nodal errors collapse to one scalar per grid.
struct NormSpec {
  enum class Kind {
    MaxOverCommonNodes,  ///< max |error| over the coarsest grid's nodes
    AtNode,              ///< |error| at one coarse node and component
  };
  Kind kind = Kind::MaxOverCommonNodes;
  int node = 0;       // AtNode: node index on the coarsest grid
  int component = 0;  // AtNode: 0-based component
};

/// Observed order for one grid pair at one extrapolation level. `order` is
/// NaN when either error vanishes (the pair carries no rate information).
struct OrderEstimate {
  int level = 0;       // extrapolation depth k
  int pair_index = 0;  // g, the pair (grids[g], grids[g+1])
  int component = 0;   // 0-based; fixed to the norm's component for AtNode
  double err_coarse = 0.0;
  double err_fine = 0.0;
  double order = 0.0;
};

/// Errors against `exact` and observed orders across a nested solution
/// sequence, at extrapolation levels 0..levels, all measured on the coarsest
/// grid's nodes. Solutions must double in N from one to the next.
std::vector<OrderEstimate> order_study(std::span<const DiscreteSolution> solutions,
                                       const ExactSolution& exact, double p0,
                                       double order_step, int levels,
                                       const NormSpec& norm = {});

/// Same study against a discrete reference solution on a finer grid of the
/// same family (its N a power-of-two multiple of every study grid's).
std::vector<OrderEstimate> order_study(std::span<const DiscreteSolution> solutions,
                                       const DiscreteSolution& reference, double p0,
                                       double order_step, int levels,
                                       const NormSpec& norm = {});

}  // namespace halfline
