// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#include "halfline/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace halfline {

double map_eval(const GridMapSpec& map, double xi) {
  if (!(map.c > 0.0)) {
    throw std::invalid_argument("grid map: control parameter c must be positive");
  }
  if (!(xi >= 0.0 && xi <= 1.0)) {
    throw std::domain_error("map_eval: xi outside [0, 1]");
  }
  switch (map.kind) {
    case GridMap::Logarithmic:
      return -map.c * std::log1p(-xi);
    case GridMap::Algebraic:
      return map.c * xi / (1.0 - xi);
  }
  throw std::invalid_argument("map_eval: unknown map kind");
}

QuasiUniformGrid::QuasiUniformGrid(GridMapSpec map, int n_intervals)
    : map_(map), n_(n_intervals) {
  if (n_ < 1) {
    throw std::invalid_argument("QuasiUniformGrid: need at least one interval");
  }
  if (!(map_.c > 0.0)) {
    throw std::invalid_argument("QuasiUniformGrid: control parameter c must be positive");
  }
  const double den = static_cast<double>(n_);
  nodes_.resize(static_cast<std::size_t>(n_) + 1);
  quarter_.resize(static_cast<std::size_t>(n_));
  half_.resize(static_cast<std::size_t>(n_));
  three_quarter_.resize(static_cast<std::size_t>(n_));
  // xi is formed as a single division so that nested grids share nodes
  // bit-for-bit: (2n)/(2N) and n/N round to the same double.
  for (int n = 0; n <= n_; ++n) {
    nodes_[static_cast<std::size_t>(n)] = map_eval(map_, static_cast<double>(n) / den);
  }
  for (int n = 0; n < n_; ++n) {
    const auto i = static_cast<std::size_t>(n);
    quarter_[i] = map_eval(map_, (n + 0.25) / den);
    half_[i] = map_eval(map_, (n + 0.5) / den);
    three_quarter_[i] = map_eval(map_, (n + 0.75) / den);
  }
}

SchemeCoefficients scheme_coefficients(const QuasiUniformGrid& grid) {
  const int n_iv = grid.n_intervals();
  SchemeCoefficients k;
  k.a.resize(static_cast<std::size_t>(n_iv));
  k.b.resize(static_cast<std::size_t>(n_iv));
  k.c.resize(static_cast<std::size_t>(n_iv));
  for (int n = 0; n < n_iv; ++n) {
    const double q1 = grid.quarter(n);
    const double q2 = grid.half(n);
    const double q3 = grid.three_quarter(n);
    const double width = q3 - q1;
    const auto i = static_cast<std::size_t>(n);
    k.a[i] = 2.0 * width;
    k.b[i] = (q2 - q1) / width;
    k.c[i] = (q3 - q2) / width;
  }
  return k;
}

}  // namespace halfline
