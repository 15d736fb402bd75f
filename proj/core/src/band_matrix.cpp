// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#include "halfline/band_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "halfline/errors.hpp"

namespace halfline {

BandMatrix::BandMatrix(std::size_t n, int lower, int upper)
    : n_(n),
      lower_(lower),
      upper_(upper),
      width_(static_cast<std::size_t>(lower + upper + 1)),
      a_(n * width_, 0.0) {
  if (n == 0 || lower < 0 || upper < 0) {
    throw std::invalid_argument("BandMatrix: bad shape");
  }
}

void BandMatrix::set(std::size_t i, std::size_t j, double value) {
  const auto offset = static_cast<long long>(j) - static_cast<long long>(i);
  if (i >= n_ || j >= n_ || offset < -lower_ || offset > upper_) {
    throw std::out_of_range("BandMatrix::set outside band");
  }
  slot(i, static_cast<int>(offset)) = value;
}

void BandMatrix::add(std::size_t i, std::size_t j, double value) {
  const auto offset = static_cast<long long>(j) - static_cast<long long>(i);
  if (i >= n_ || j >= n_ || offset < -lower_ || offset > upper_) {
    throw std::out_of_range("BandMatrix::add outside band");
  }
  slot(i, static_cast<int>(offset)) += value;
}

double BandMatrix::get(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) {
    throw std::out_of_range("BandMatrix::get outside matrix");
  }
  const auto offset = static_cast<long long>(j) - static_cast<long long>(i);
  if (offset < -lower_ || offset > upper_) return 0.0;
  return slot(i, static_cast<int>(offset));
}

std::vector<double> BandMatrix::to_dense() const {
  std::vector<double> dense(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j_lo = i >= static_cast<std::size_t>(lower_)
                                 ? i - static_cast<std::size_t>(lower_)
                                 : 0;
    const std::size_t j_hi = std::min(n_ - 1, i + static_cast<std::size_t>(upper_));
    for (std::size_t j = j_lo; j <= j_hi; ++j) {
      dense[i * n_ + j] = get(i, j);
    }
  }
  return dense;
}

BandLU::BandLU(BandMatrix m)
    : BandLU(std::move(m), 1e3 * std::numeric_limits<double>::epsilon()) {}

BandLU::BandLU(BandMatrix m, double pivot_rtol) : u_(std::move(m)) {
  mult_.assign(u_.n_ * static_cast<std::size_t>(u_.lower_), 0.0);
  perm_.resize(u_.n_);
  factor(pivot_rtol);
}

// Classic compact band elimination: every active row keeps its leading entry
// (the current pivot column) in storage position 0, sliding one slot left per
// elimination step it takes part in. Fill stays within lower+upper+1 slots.
void BandLU::factor(double pivot_rtol) {
  const std::size_t n = u_.n_;
  const auto kl = static_cast<std::size_t>(u_.lower_);
  const std::size_t width = u_.width_;
  auto row = [&](std::size_t i) { return u_.a_.data() + i * width; };

  // Left-justify the first `lower` rows so the alignment invariant holds at
  // the first step.
  for (std::size_t i = 0; i < std::min(kl, n); ++i) {
    const std::size_t shift = kl - i;
    double* r = row(i);
    for (std::size_t j = shift; j < width; ++j) r[j - shift] = r[j];
    for (std::size_t j = width - shift; j < width; ++j) r[j] = 0.0;
  }

  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t last = std::min(k + kl, n - 1);

    std::size_t p = k;
    double pivmag = std::abs(row(k)[0]);
    for (std::size_t i = k + 1; i <= last; ++i) {
      const double mag = std::abs(row(i)[0]);
      if (mag > pivmag) {
        pivmag = mag;
        p = i;
      }
    }
    double rowmax = 0.0;
    for (std::size_t j = 0; j < width; ++j) {
      rowmax = std::max(rowmax, std::abs(row(p)[j]));
    }
    if (pivmag == 0.0 || pivmag < pivot_rtol * rowmax) {
      throw SingularJacobianError(
          "banded LU: pivot " + std::to_string(k) + " below threshold", k);
    }

    perm_[k] = p;
    if (p != k) {
      std::swap_ranges(row(k), row(k) + width, row(p));
    }

    const double piv = row(k)[0];
    for (std::size_t i = k + 1; i <= last; ++i) {
      const double m = row(i)[0] / piv;
      mult_[k * kl + (i - k - 1)] = m;
      double* ri = row(i);
      const double* rk = row(k);
      for (std::size_t j = 1; j < width; ++j) ri[j - 1] = ri[j] - m * rk[j];
      ri[width - 1] = 0.0;
    }
  }
}

void BandLU::solve_in_place(std::span<double> b) const {
  const std::size_t n = u_.n_;
  if (b.size() != n) {
    throw std::invalid_argument("BandLU::solve_in_place: size mismatch");
  }
  const auto kl = static_cast<std::size_t>(u_.lower_);
  const std::size_t width = u_.width_;
  const double* a = u_.a_.data();

  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t p = perm_[k];
    if (p != k) std::swap(b[k], b[p]);
    const std::size_t last = std::min(k + kl, n - 1);
    for (std::size_t i = k + 1; i <= last; ++i) {
      b[i] -= mult_[k * kl + (i - k - 1)] * b[k];
    }
  }

  for (std::size_t ii = n; ii-- > 0;) {
    const double* r = a + ii * width;
    double s = b[ii];
    const std::size_t j_hi = std::min(width - 1, n - 1 - ii);
    for (std::size_t j = 1; j <= j_hi; ++j) s -= r[j] * b[ii + j];
    b[ii] = s / r[0];
  }
}

std::vector<double> BandLU::solve(std::span<const double> b) const {
  std::vector<double> x(b.begin(), b.end());
  solve_in_place(x);
  return x;
}

}  // namespace halfline
