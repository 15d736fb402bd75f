// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace halfline {

/// Square band matrix in compact row storage: entry (i, j) is stored when
/// -lower <= j - i <= upper. Entries start out zero.
class BandMatrix {
public:
  BandMatrix(std::size_t n, int lower, int upper);

  std::size_t size() const noexcept { return n_; }
  int lower() const noexcept { return lower_; }
  int upper() const noexcept { return upper_; }

  /// Throws std::out_of_range when (i, j) lies outside the band.
  void set(std::size_t i, std::size_t j, double value);
  void add(std::size_t i, std::size_t j, double value);

  /// Zero outside the band.
  double get(std::size_t i, std::size_t j) const;

  /// Row-major n x n expansion, for tests and small problems.
  std::vector<double> to_dense() const;

private:
  friend class BandLU;

  double& slot(std::size_t i, int offset) {
    return a_[i * width_ + static_cast<std::size_t>(lower_ + offset)];
  }
  double slot(std::size_t i, int offset) const {
    return a_[i * width_ + static_cast<std::size_t>(lower_ + offset)];
  }

  std::size_t n_;
  int lower_, upper_;
  std::size_t width_;      // lower + upper + 1
  std::vector<double> a_;  // a_[i*width_ + k] = A(i, i - lower + k)
};

/// LU factorization of a band matrix with row partial pivoting. Row swaps
/// keep the factors inside the original storage width, so the factorization
/// costs O(n (lower + upper)^2) time and no extra fill.
///
/// A pivot whose magnitude falls below pivot_rtol times the largest entry of
/// its row (or an exactly zero pivot) raises SingularJacobianError carrying
/// the pivot index. The default threshold is 1e3 times machine epsilon.
class BandLU {
public:
  explicit BandLU(BandMatrix m);
  BandLU(BandMatrix m, double pivot_rtol);

  std::size_t size() const noexcept { return u_.size(); }

  void solve_in_place(std::span<double> b) const;
  std::vector<double> solve(std::span<const double> b) const;

private:
  void factor(double pivot_rtol);

  BandMatrix u_;                   // holds U; row i covers columns i..i+lower+upper
  std::vector<double> mult_;       // n x lower elimination multipliers
  std::vector<std::size_t> perm_;  // pivot row chosen at each step
};

}  // namespace halfline
