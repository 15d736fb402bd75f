// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#include "halfline/newton.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "halfline/errors.hpp"

namespace halfline {

namespace {

bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void check_config(const NewtonConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("NewtonConfig: tol must be positive");
  if (cfg.max_iter < 1) throw std::invalid_argument("NewtonConfig: max_iter must be >= 1");
  if (!(cfg.damping > 0.0 && cfg.damping <= 1.0)) {
    throw std::invalid_argument("NewtonConfig: damping must lie in (0, 1]");
  }
}

std::vector<double> solve_banded(const BandedJacobian& jac,
                                 std::span<const double> rhs) {
  const std::size_t m = jac.matrix.size();
  std::vector<double> b(m);
  for (std::size_t r = 0; r < m; ++r) b[r] = rhs[jac.row_of[r]];
  BandLU lu(jac.matrix);
  lu.solve_in_place(b);
  return b;  // row permutation does not touch the unknown ordering
}

std::vector<double> solve_bordered(const BorderedJacobian& jac, int dim,
                                   std::span<const double> rhs) {
  const auto sd = static_cast<std::size_t>(dim);
  const std::size_t nin = jac.interior.size();  // dim * N
  BandLU lu(jac.interior);

  // Interior solve against the residual blocks.
  std::vector<double> y(rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(nin));
  lu.solve_in_place(y);

  // Interior solves against the U_0 border columns.
  std::vector<std::vector<double>> x_cols(sd);
  for (std::size_t j = 0; j < sd; ++j) {
    auto& col = x_cols[j];
    col.assign(nin, 0.0);
    for (std::size_t i = 0; i < sd; ++i) col[i] = jac.first_block[i * sd + j];
    lu.solve_in_place(col);
  }

  // dim x dim Schur complement over U_0. Only the trailing block of each
  // interior solve enters, since the boundary rows touch U_N alone.
  const std::size_t tail = nin - sd;
  BandMatrix schur(sd, dim - 1, dim - 1);
  std::vector<double> t(sd);
  for (std::size_t i = 0; i < sd; ++i) {
    for (std::size_t j = 0; j < sd; ++j) {
      double s = jac.g_left[i * sd + j];
      for (std::size_t k = 0; k < sd; ++k) {
        s -= jac.g_right[i * sd + k] * x_cols[j][tail + k];
      }
      schur.set(i, j, s);
    }
    double v = rhs[nin + i];
    for (std::size_t k = 0; k < sd; ++k) {
      v -= jac.g_right[i * sd + k] * y[tail + k];
    }
    t[i] = v;
  }
  BandLU schur_lu(std::move(schur));
  schur_lu.solve_in_place(t);  // t now holds the U_0 update

  std::vector<double> x(sd + nin);
  for (std::size_t i = 0; i < sd; ++i) x[i] = t[i];
  for (std::size_t r = 0; r < nin; ++r) {
    double v = y[r];
    for (std::size_t j = 0; j < sd; ++j) v -= x_cols[j][r] * t[j];
    x[sd + r] = v;
  }
  return x;
}

}  // namespace

double update_norm(std::span<const double> delta) {
  if (delta.empty()) return 0.0;
  double s = 0.0;
  for (double v : delta) s += std::abs(v);
  return s / static_cast<double>(delta.size());
}

std::vector<double> solve_linear(const StructuredJacobian& jac,
                                 std::span<const double> rhs) {
  if (rhs.size() != jac.size()) {
    throw std::invalid_argument("solve_linear: rhs size does not match Jacobian");
  }
  if (jac.is_banded()) return solve_banded(jac.banded(), rhs);
  return solve_bordered(jac.bordered(), jac.dim(), rhs);
}

std::pair<DiscreteSolution, NewtonReport> newton_solve(const BvpSystem& sys,
                                                       DiscreteSolution initial,
                                                       const NewtonConfig& cfg) {
  check_config(cfg);
  if (!all_finite(initial.values())) {
    throw std::invalid_argument("newton_solve: initial iterate has non-finite entries");
  }
  const auto coeffs = scheme_coefficients(initial.grid());

  DiscreteSolution u = std::move(initial);
  NewtonReport report;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    const auto r = residual(sys, coeffs, u);
    const auto jac = jacobian(sys, coeffs, u);
    auto delta = solve_linear(jac, r);

    for (auto& v : delta) v *= cfg.damping;
    auto vals = u.values();
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] -= delta[i];

    report.iterations = it;
    report.final_update_norm = update_norm(delta);
    if (!all_finite(vals)) {
      throw DivergenceError("Newton iterate became non-finite at iteration " +
                            std::to_string(it));
    }
    if (report.final_update_norm <= cfg.tol) {
      report.converged = true;
      break;
    }
  }
  return {std::move(u), report};
}

DiscreteSolution interpolate_to_finer(const DiscreteSolution& coarse) {
  const auto& g = coarse.grid();
  const int n_iv = g.n_intervals();
  DiscreteSolution fine(QuasiUniformGrid(g.map(), 2 * n_iv), coarse.dim());
  const int d = coarse.dim();
  for (int n = 0; n <= n_iv; ++n) {
    auto src = coarse.row(n);
    auto dst = fine.row(2 * n);
    for (int j = 0; j < d; ++j) dst[j] = src[j];
  }
  // Odd nodes average in xi; the last one sits between x_{N-1} and x_N = inf
  // and is handled identically.
  for (int n = 0; n < n_iv; ++n) {
    auto lo = coarse.row(n);
    auto hi = coarse.row(n + 1);
    auto dst = fine.row(2 * n + 1);
    for (int j = 0; j < d; ++j) dst[j] = 0.5 * (lo[j] + hi[j]);
  }
  return fine;
}

const ContinuationStep* ContinuationRun::step_for(int n_intervals) const {
  for (const auto& s : steps) {
    if (s.n_intervals == n_intervals) return &s;
  }
  return nullptr;
}

ContinuationRun continuation_solve(const BvpSystem& sys, const GridMapSpec& map,
                                   std::span<const int> n_list,
                                   const FirstIterate& first_iterate,
                                   const NewtonConfig& cfg) {
  check_config(cfg);
  if (n_list.empty()) throw std::invalid_argument("continuation_solve: empty grid list");
  if (n_list.front() < 1) {
    throw std::invalid_argument("continuation_solve: grid sizes must be positive");
  }
  for (std::size_t i = 0; i + 1 < n_list.size(); ++i) {
    if (n_list[i + 1] != 2 * n_list[i]) {
      throw std::invalid_argument("continuation_solve: grid sizes must double");
    }
  }
  if (!first_iterate) {
    throw std::invalid_argument("continuation_solve: first_iterate is required");
  }

  ContinuationRun run;
  for (int n : n_list) {
    DiscreteSolution init =
        run.steps.empty() ? first_iterate(QuasiUniformGrid(map, n))
                          : interpolate_to_finer(run.steps.back().solution);
    if (init.grid().n_intervals() != n || !(init.grid().map() == map)) {
      throw std::invalid_argument(
          "continuation_solve: first iterate built on the wrong grid");
    }
    try {
      auto [sol, rep] = newton_solve(sys, std::move(init), cfg);
      if (!rep.converged) {
        run.failure = ContinuationFailure{
            n, "Newton did not converge within " + std::to_string(cfg.max_iter) +
                   " iterations (final update norm " +
                   std::to_string(rep.final_update_norm) + ")"};
        break;
      }
      run.steps.push_back(ContinuationStep{n, std::move(sol), rep});
    } catch (const std::runtime_error& e) {
      run.failure = ContinuationFailure{n, e.what()};
      break;
    }
  }
  return run;
}

}  // namespace halfline
