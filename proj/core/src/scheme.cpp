// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#include "halfline/scheme.hpp"

#include <cmath>
#include <limits>
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

void check_system(const BvpSystem& sys, const SchemeCoefficients& coeffs,
                  const DiscreteSolution& u) {
  if (sys.dim < 1) throw std::invalid_argument("BvpSystem: dim must be >= 1");
  if (!sys.f || !sys.g) throw std::invalid_argument("BvpSystem: f and g are required");
  if (u.dim() != sys.dim) {
    throw std::invalid_argument("system and solution dimensions differ");
  }
  if (coeffs.n_intervals() != u.grid().n_intervals()) {
    throw std::invalid_argument("scheme coefficients built for a different grid");
  }
  if (const auto* sep = std::get_if<SeparatedBc>(&sys.bc)) {
    if (sep->n_left < 0 || sep->n_right < 0 ||
        sep->n_left + sep->n_right != sys.dim) {
      throw std::invalid_argument("SeparatedBc: n_left + n_right must equal dim");
    }
  }
}

// Forward differences on both boundary arguments; same step rule as
// fd_jacobian_f.
void fd_jacobian_g(const BoundaryFn& g, std::span<const double> u_left,
                   std::span<const double> u_right, std::span<double> dg_dleft,
                   std::span<double> dg_dright) {
  const auto d = u_left.size();
  std::vector<double> base(d), bumped(d);
  std::vector<double> wl(u_left.begin(), u_left.end());
  std::vector<double> wr(u_right.begin(), u_right.end());
  g(wl, wr, base);
  if (!all_finite(base)) {
    throw EvaluationError("g returned a non-finite value during differencing");
  }
  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  for (std::size_t j = 0; j < d; ++j) {
    const double hl = sqrt_eps * std::max(1.0, std::abs(wl[j]));
    const double saved_l = wl[j];
    wl[j] = saved_l + hl;
    g(wl, wr, bumped);
    wl[j] = saved_l;
    for (std::size_t i = 0; i < d; ++i) dg_dleft[i * d + j] = (bumped[i] - base[i]) / hl;

    const double hr = sqrt_eps * std::max(1.0, std::abs(wr[j]));
    const double saved_r = wr[j];
    wr[j] = saved_r + hr;
    g(wl, wr, bumped);
    wr[j] = saved_r;
    for (std::size_t i = 0; i < d; ++i) dg_dright[i * d + j] = (bumped[i] - base[i]) / hr;
  }
}

}  // namespace

DiscreteSolution::DiscreteSolution(QuasiUniformGrid grid, int dim)
    : grid_(std::move(grid)),
      dim_(dim),
      values_(static_cast<std::size_t>(grid_.n_nodes()) * static_cast<std::size_t>(dim > 0 ? dim : 1),
              0.0) {
  if (dim < 1) throw std::invalid_argument("DiscreteSolution: dim must be >= 1");
}

void fd_jacobian_f(const OdeRhs& f, double x, std::span<const double> u,
                   std::span<double> jac_out) {
  const auto d = u.size();
  if (jac_out.size() != d * d) {
    throw std::invalid_argument("fd_jacobian_f: output block has wrong size");
  }
  std::vector<double> base(d), bumped(d);
  std::vector<double> w(u.begin(), u.end());
  f(x, w, base);
  if (!all_finite(base)) {
    throw EvaluationError("f returned a non-finite value during differencing");
  }
  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  for (std::size_t j = 0; j < d; ++j) {
    const double h = sqrt_eps * std::max(1.0, std::abs(w[j]));
    const double saved = w[j];
    w[j] = saved + h;
    f(x, w, bumped);
    w[j] = saved;
    if (!all_finite(bumped)) {
      throw EvaluationError("f returned a non-finite value during differencing");
    }
    for (std::size_t i = 0; i < d; ++i) jac_out[i * d + j] = (bumped[i] - base[i]) / h;
  }
}

std::vector<double> residual(const BvpSystem& sys, const SchemeCoefficients& coeffs,
                             const DiscreteSolution& u) {
  check_system(sys, coeffs, u);
  const int d = sys.dim;
  const int n_iv = u.grid().n_intervals();
  const auto sd = static_cast<std::size_t>(d);

  std::vector<double> r(sd * static_cast<std::size_t>(n_iv + 1));
  std::vector<double> blend(sd), fval(sd);
  for (int n = 0; n < n_iv; ++n) {
    const auto i = static_cast<std::size_t>(n);
    auto lo = u.row(n);
    auto hi = u.row(n + 1);
    const double a = coeffs.a[i], b = coeffs.b[i], c = coeffs.c[i];
    for (int j = 0; j < d; ++j) blend[static_cast<std::size_t>(j)] = b * hi[j] + c * lo[j];
    sys.f(u.grid().half(n), blend, fval);
    if (!all_finite(fval)) {
      throw EvaluationError(
          "f returned a non-finite value at interval " + std::to_string(n), n);
    }
    for (int j = 0; j < d; ++j) {
      r[i * sd + static_cast<std::size_t>(j)] = hi[j] - lo[j] - a * fval[static_cast<std::size_t>(j)];
    }
  }

  std::vector<double> gval(sd);
  sys.g(u.row(0), u.row(n_iv), gval);
  if (!all_finite(gval)) {
    throw EvaluationError("g returned a non-finite value", n_iv);
  }
  for (int j = 0; j < d; ++j) {
    r[static_cast<std::size_t>(n_iv) * sd + static_cast<std::size_t>(j)] = gval[static_cast<std::size_t>(j)];
  }
  return r;
}

StructuredJacobian jacobian(const BvpSystem& sys, const SchemeCoefficients& coeffs,
                            const DiscreteSolution& u) {
  check_system(sys, coeffs, u);
  const int d = sys.dim;
  const int n_iv = u.grid().n_intervals();
  const auto sd = static_cast<std::size_t>(d);

  std::vector<double> g_left(sd * sd), g_right(sd * sd);
  if (sys.g_jac) {
    sys.g_jac(u.row(0), u.row(n_iv), g_left, g_right);
  } else {
    fd_jacobian_g(sys.g, u.row(0), u.row(n_iv), g_left, g_right);
  }
  if (!all_finite(g_left) || !all_finite(g_right)) {
    throw EvaluationError("boundary Jacobian is not finite", n_iv);
  }

  std::vector<double> blend(sd), jf(sd * sd), D(sd * sd), E(sd * sd);
  auto fill_interval = [&](int n) {
    const auto i = static_cast<std::size_t>(n);
    auto lo = u.row(n);
    auto hi = u.row(n + 1);
    const double a = coeffs.a[i], b = coeffs.b[i], c = coeffs.c[i];
    for (int j = 0; j < d; ++j) blend[static_cast<std::size_t>(j)] = b * hi[j] + c * lo[j];
    const double x = u.grid().half(n);
    if (sys.f_jac) {
      sys.f_jac(x, blend, jf);
    } else {
      try {
        fd_jacobian_f(sys.f, x, blend, jf);
      } catch (const EvaluationError& e) {
        throw EvaluationError(e.what(), n);
      }
    }
    if (!all_finite(jf)) {
      throw EvaluationError(
          "Jacobian of f is not finite at interval " + std::to_string(n), n);
    }
    for (std::size_t p = 0; p < sd; ++p) {
      for (std::size_t q = 0; q < sd; ++q) {
        const double delta = p == q ? 1.0 : 0.0;
        D[p * sd + q] = -delta - a * c * jf[p * sd + q];
        E[p * sd + q] = delta - a * b * jf[p * sd + q];
      }
    }
  };

  if (const auto* sep = std::get_if<SeparatedBc>(&sys.bc)) {
    const int nl = sep->n_left;
    const int nr = sep->n_right;
    // A mis-declared structure would scatter entries outside the band, so the
    // cross blocks have to vanish identically.
    for (int i = 0; i < nl; ++i) {
      for (int j = 0; j < d; ++j) {
        if (g_right[static_cast<std::size_t>(i) * sd + static_cast<std::size_t>(j)] != 0.0) {
          throw std::invalid_argument("SeparatedBc: left condition " +
                                      std::to_string(i) + " depends on u(inf)");
        }
      }
    }
    for (int i = nl; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (g_left[static_cast<std::size_t>(i) * sd + static_cast<std::size_t>(j)] != 0.0) {
          throw std::invalid_argument("SeparatedBc: right condition " +
                                      std::to_string(i) + " depends on u(0)");
        }
      }
    }

    const std::size_t m = sd * static_cast<std::size_t>(n_iv + 1);
    const int band = 2 * d - 1;
    BandedJacobian bj{BandMatrix(m, band, band), std::vector<std::size_t>(m)};
    for (int i = 0; i < nl; ++i) {
      const auto r = static_cast<std::size_t>(i);
      bj.row_of[r] = sd * static_cast<std::size_t>(n_iv) + static_cast<std::size_t>(i);
      for (std::size_t j = 0; j < sd; ++j) {
        bj.matrix.set(r, j, g_left[static_cast<std::size_t>(i) * sd + j]);
      }
    }
    for (int n = 0; n < n_iv; ++n) {
      fill_interval(n);
      const auto bn = static_cast<std::size_t>(n);
      for (std::size_t i = 0; i < sd; ++i) {
        const std::size_t r = static_cast<std::size_t>(nl) + sd * bn + i;
        bj.row_of[r] = sd * bn + i;
        for (std::size_t j = 0; j < sd; ++j) {
          bj.matrix.set(r, sd * bn + j, D[i * sd + j]);
          bj.matrix.set(r, sd * (bn + 1) + j, E[i * sd + j]);
        }
      }
    }
    for (int i = 0; i < nr; ++i) {
      const std::size_t r =
          static_cast<std::size_t>(nl) + sd * static_cast<std::size_t>(n_iv) + static_cast<std::size_t>(i);
      bj.row_of[r] = r;  // canonical index coincides for trailing conditions
      for (std::size_t j = 0; j < sd; ++j) {
        bj.matrix.set(r, sd * static_cast<std::size_t>(n_iv) + j,
                      g_right[static_cast<std::size_t>(nl + i) * sd + j]);
      }
    }
    return {std::move(bj), d, n_iv};
  }

  BorderedJacobian bj{BandMatrix(sd * static_cast<std::size_t>(n_iv), 2 * d - 1, d - 1),
                      std::vector<double>(sd * sd, 0.0), std::move(g_left),
                      std::move(g_right)};
  for (int n = 0; n < n_iv; ++n) {
    fill_interval(n);
    const auto bn = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < sd; ++i) {
      const std::size_t r = sd * bn + i;
      for (std::size_t j = 0; j < sd; ++j) {
        bj.interior.set(r, sd * bn + j, E[i * sd + j]);
        if (n >= 1) {
          bj.interior.set(r, sd * (bn - 1) + j, D[i * sd + j]);
        } else {
          bj.first_block[i * sd + j] = D[i * sd + j];
        }
      }
    }
  }
  return {std::move(bj), d, n_iv};
}

StructuredJacobian::StructuredJacobian(BandedJacobian repr, int dim, int n_intervals)
    : repr_(std::move(repr)), dim_(dim), n_intervals_(n_intervals) {
  const auto& b = std::get<BandedJacobian>(repr_);
  if (dim < 1 || n_intervals < 1 || b.matrix.size() != size() ||
      b.row_of.size() != size()) {
    throw std::invalid_argument("StructuredJacobian: inconsistent banded shape");
  }
}

StructuredJacobian::StructuredJacobian(BorderedJacobian repr, int dim, int n_intervals)
    : repr_(std::move(repr)), dim_(dim), n_intervals_(n_intervals) {
  const auto& b = std::get<BorderedJacobian>(repr_);
  const auto sd = static_cast<std::size_t>(dim);
  if (dim < 1 || n_intervals < 1 ||
      b.interior.size() != sd * static_cast<std::size_t>(n_intervals) ||
      b.first_block.size() != sd * sd || b.g_left.size() != sd * sd ||
      b.g_right.size() != sd * sd) {
    throw std::invalid_argument("StructuredJacobian: inconsistent bordered shape");
  }
}

std::size_t StructuredJacobian::size() const noexcept {
  return static_cast<std::size_t>(dim_) * static_cast<std::size_t>(n_intervals_ + 1);
}

bool StructuredJacobian::is_banded() const noexcept {
  return std::holds_alternative<BandedJacobian>(repr_);
}

std::vector<double> StructuredJacobian::to_dense() const {
  const std::size_t m = size();
  std::vector<double> dense(m * m, 0.0);
  const auto sd = static_cast<std::size_t>(dim_);

  if (is_banded()) {
    const auto& b = banded();
    const auto kl = static_cast<std::size_t>(b.matrix.lower());
    const auto ku = static_cast<std::size_t>(b.matrix.upper());
    for (std::size_t r = 0; r < m; ++r) {
      const std::size_t canon = b.row_of[r];
      const std::size_t j_lo = r >= kl ? r - kl : 0;
      const std::size_t j_hi = std::min(m - 1, r + ku);
      for (std::size_t j = j_lo; j <= j_hi; ++j) {
        dense[canon * m + j] = b.matrix.get(r, j);
      }
    }
    return dense;
  }

  const auto& b = bordered();
  const std::size_t nin = b.interior.size();  // dim * N
  const auto kl = static_cast<std::size_t>(b.interior.lower());
  const auto ku = static_cast<std::size_t>(b.interior.upper());
  for (std::size_t r = 0; r < nin; ++r) {
    const std::size_t j_lo = r >= kl ? r - kl : 0;
    const std::size_t j_hi = std::min(nin - 1, r + ku);
    for (std::size_t j = j_lo; j <= j_hi; ++j) {
      dense[r * m + (sd + j)] = b.interior.get(r, j);
    }
    if (r < sd) {
      for (std::size_t j = 0; j < sd; ++j) dense[r * m + j] = b.first_block[r * sd + j];
    }
  }
  for (std::size_t i = 0; i < sd; ++i) {
    for (std::size_t j = 0; j < sd; ++j) {
      dense[(nin + i) * m + j] = b.g_left[i * sd + j];
      dense[(nin + i) * m + nin + j] = b.g_right[i * sd + j];
    }
  }
  return dense;
}

std::pair<double, double> legacy_midpoint_weights(double x_n, double x_half,
                                                  double x_next) {
  if (!(x_n < x_half && x_half < x_next) || !std::isfinite(x_next) ||
      !std::isfinite(x_n)) {
    throw std::invalid_argument(
        "legacy_midpoint_weights: need finite x_n < x_half < x_next");
  }
  const double len = x_next - x_n;
  return {(x_next - x_half) / len, (x_half - x_n) / len};
}

std::pair<double, double> legacy_midpoint_weights(const QuasiUniformGrid& grid, int n) {
  if (n < 0 || n >= grid.n_intervals()) {
    throw std::out_of_range("legacy_midpoint_weights: interval index");
  }
  if (n == grid.n_intervals() - 1) {
    // x_{n+1} is +inf: the extended-real limit keeps only the left endpoint,
    // so the boundary value drops out. Recorded, not repaired; this defect is
    // why the quarter-point coefficients replaced these weights.
    return {1.0, 0.0};
  }
  return legacy_midpoint_weights(grid.node(n), grid.half(n), grid.node(n + 1));
}

}  // namespace halfline
