// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace halfline {

/// The right-hand side or boundary function produced a non-finite value.
/// `block` identifies the residual block: interval index 0..N-1 for f,
/// N for the boundary block, -1 when the location is not known.
class EvaluationError : public std::runtime_error {
public:
  explicit EvaluationError(const std::string& what, int block = -1)
      : std::runtime_error(what), block_(block) {}

  int block() const noexcept { return block_; }

private:
  int block_;
};

/// A pivot in the banded or bordered LU fell below the singularity threshold.
class SingularJacobianError : public std::runtime_error {
public:
  SingularJacobianError(const std::string& what, std::size_t pivot_index)
      : std::runtime_error(what), pivot_index_(pivot_index) {}

  std::size_t pivot_index() const noexcept { return pivot_index_; }

private:
  std::size_t pivot_index_;
};

/// A Newton iterate stopped being finite.
class DivergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace halfline
