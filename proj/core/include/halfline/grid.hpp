// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace halfline {

/// Grid generating function mapping [0,1] onto [0,inf].
enum class GridMap {
  Logarithmic,  ///< x = -c ln(1 - xi)
  Algebraic,    ///< x = c xi / (1 - xi)
};

/// Map kind plus its control parameter c > 0. The map sends xi = 1/2 to a
/// point of order c, so roughly half of all grid intervals land in [0, ~c].
/// The defaults are the configuration the electrostatics benchmark results
/// were produced with.
struct GridMapSpec {
  GridMap kind = GridMap::Logarithmic;
  double c = 10.0;

  bool operator==(const GridMapSpec&) const = default;
};

/// Image of xi under the map; strictly increasing, 0 at xi = 0 and +inf at
/// xi = 1. Throws std::domain_error for xi outside [0,1] and
/// std::invalid_argument for c <= 0.
double map_eval(const GridMapSpec& map, double xi);

/// Quasi-uniform grid on [0, inf]: the image of the uniform partition
/// xi_n = n/N under a grid generating function. The last node x_N is IEEE
/// +inf; the quarter points x_{n+1/4}, x_{n+1/2}, x_{n+3/4} of every
/// interval are finite, including those of the last interval. Immutable
/// after construction; safe to share between threads.
class QuasiUniformGrid {
public:
  QuasiUniformGrid(GridMapSpec map, int n_intervals);

  const GridMapSpec& map() const noexcept { return map_; }
  int n_intervals() const noexcept { return n_; }
  int n_nodes() const noexcept { return n_ + 1; }

  /// x_n for 0 <= n <= N; node(N) is +inf.
  double node(int n) const { return nodes_[static_cast<std::size_t>(n)]; }
  std::span<const double> nodes() const noexcept { return nodes_; }

  /// Quarter points of interval n, 0 <= n < N. Always finite.
  double quarter(int n) const { return quarter_[static_cast<std::size_t>(n)]; }
  double half(int n) const { return half_[static_cast<std::size_t>(n)]; }
  double three_quarter(int n) const {
    return three_quarter_[static_cast<std::size_t>(n)];
  }

private:
  GridMapSpec map_;
  int n_;
  std::vector<double> nodes_;  // N+1 entries, last one +inf
  std::vector<double> quarter_, half_, three_quarter_;  // N entries each
};

/// Per-interval coefficients of the finite difference scheme, built from the
/// quarter points only, so x_N = inf never enters:
///
///   a_n = 2 (x_{n+3/4} - x_{n+1/4})
///   b_n = (x_{n+1/2} - x_{n+1/4}) / (x_{n+3/4} - x_{n+1/4})
///   c_n = (x_{n+3/4} - x_{n+1/2}) / (x_{n+3/4} - x_{n+1/4})
///
/// a_n > 0 and b_n, c_n in (0,1) with b_n + c_n = 1 on every interval, the
/// last one included.
struct SchemeCoefficients {
  std::vector<double> a, b, c;

  int n_intervals() const noexcept { return static_cast<int>(a.size()); }
};

SchemeCoefficients scheme_coefficients(const QuasiUniformGrid& grid);

}  // namespace halfline
