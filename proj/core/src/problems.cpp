// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#include "halfline/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace halfline {

namespace {

void require_positive_u0(double u0) {
  if (!(u0 > 0.0)) {
    throw std::invalid_argument("colloid problem: u0 must be positive");
  }
}

}  // namespace

BvpSystem colloid_system(double u0) {
  require_positive_u0(u0);
  BvpSystem sys;
  sys.dim = 2;
  sys.f = [](double, std::span<const double> u, std::span<double> out) {
    out[0] = u[1];
    out[1] = 2.0 * std::sinh(u[0]);
  };
  sys.f_jac = [](double, std::span<const double> u, std::span<double> jac) {
    jac[0] = 0.0;
    jac[1] = 1.0;
    jac[2] = 2.0 * std::cosh(u[0]);
    jac[3] = 0.0;
  };
  sys.g = [u0](std::span<const double> u_left, std::span<const double> u_right,
               std::span<double> out) {
    out[0] = u_left[0] - u0;
    out[1] = u_right[0];
  };
  sys.g_jac = [](std::span<const double>, std::span<const double>,
                 std::span<double> dg_dleft, std::span<double> dg_dright) {
    dg_dleft[0] = 1.0;
    dg_dleft[1] = 0.0;
    dg_dleft[2] = 0.0;
    dg_dleft[3] = 0.0;
    dg_dright[0] = 0.0;
    dg_dright[1] = 0.0;
    dg_dright[2] = 1.0;
    dg_dright[3] = 0.0;
  };
  sys.bc = SeparatedBc{1, 1};
  return sys;
}

std::array<double, 2> colloid_exact(double u0, double x) {
  require_positive_u0(u0);
  if (std::isinf(x) && x > 0.0) return {0.0, 0.0};
  if (!(x >= 0.0)) {
    throw std::domain_error("colloid_exact: x must lie in [0, inf]");
  }
  const double r = std::tanh(0.25 * u0) * std::exp(-std::numbers::sqrt2 * x);
  const double u = 2.0 * std::log1p(2.0 * r / (1.0 - r));
  const double du = -4.0 * std::numbers::sqrt2 * r / ((1.0 - r) * (1.0 + r));
  return {u, du};
}

double colloid_dudx0(double u0) {
  require_positive_u0(u0);
  // -2 sqrt(cosh u0 - 1), via cosh u0 - 1 = 2 sinh^2(u0 / 2).
  return -2.0 * std::numbers::sqrt2 * std::sinh(0.5 * u0);
}

ExactSolution colloid_exact_fn(double u0) {
  require_positive_u0(u0);
  return [u0](double x, std::span<double> out) {
    const auto v = colloid_exact(u0, x);
    out[0] = v[0];
    out[1] = v[1];
  };
}

BvpSystem linear_fixture() {
  BvpSystem sys;
  sys.dim = 2;
  sys.f = [](double, std::span<const double> u, std::span<double> out) {
    out[0] = u[1];
    out[1] = u[0];
  };
  sys.f_jac = [](double, std::span<const double>, std::span<double> jac) {
    jac[0] = 0.0;
    jac[1] = 1.0;
    jac[2] = 1.0;
    jac[3] = 0.0;
  };
  sys.g = [](std::span<const double> u_left, std::span<const double> u_right,
             std::span<double> out) {
    out[0] = u_left[0] - 1.0;
    out[1] = u_right[0];
  };
  sys.g_jac = [](std::span<const double>, std::span<const double>,
                 std::span<double> dg_dleft, std::span<double> dg_dright) {
    dg_dleft[0] = 1.0;
    dg_dleft[1] = 0.0;
    dg_dleft[2] = 0.0;
    dg_dleft[3] = 0.0;
    dg_dright[0] = 0.0;
    dg_dright[1] = 0.0;
    dg_dright[2] = 1.0;
    dg_dright[3] = 0.0;
  };
  sys.bc = SeparatedBc{1, 1};
  return sys;
}

std::array<double, 2> linear_fixture_exact(double x) {
  const double e = std::exp(-x);
  return {e, -e};
}

ExactSolution linear_fixture_exact_fn() {
  return [](double x, std::span<double> out) {
    const auto v = linear_fixture_exact(x);
    out[0] = v[0];
    out[1] = v[1];
  };
}

DiscreteSolution colloid_first_iterate(double u0, const QuasiUniformGrid& grid) {
  require_positive_u0(u0);
  DiscreteSolution u(grid, 2);
  for (int n = 0; n < u.n_nodes(); ++n) {
    auto row = u.row(n);
    row[0] = u0;
    row[1] = -1.0;
  }
  return u;
}

ColloidRun solve_colloid(double u0, const GridMapSpec& map, std::span<const int> n_list,
                         const NewtonConfig& cfg) {
  const BvpSystem sys = colloid_system(u0);
  const FirstIterate cold = [u0](const QuasiUniformGrid& g) {
    return colloid_first_iterate(u0, g);
  };

  ColloidRun out;
  out.run = continuation_solve(sys, map, n_list, cold, cfg);
  if (out.run.completed() || !out.run.steps.empty() || !(u0 > 1.0)) return out;

  // The cold start already fails on the coarsest grid. Walk u0 up in unit
  // steps there, each converged solution warm-starting the next, then retry
  // the mesh sweep from the final iterate.
  try {
    QuasiUniformGrid coarse(map, n_list.front());
    DiscreteSolution iterate = colloid_first_iterate(1.0, coarse);
    double level = 1.0;
    while (true) {
      auto [sol, rep] = newton_solve(colloid_system(level), std::move(iterate), cfg);
      if (!rep.converged) return out;  // keep the cold-start diagnostics
      iterate = std::move(sol);
      if (level == u0) break;
      level = std::min(level + 1.0, u0);
    }
    const FirstIterate warm = [&iterate](const QuasiUniformGrid&) { return iterate; };
    out.run = continuation_solve(sys, map, n_list, warm, cfg);
    out.used_parameter_continuation = true;
  } catch (const std::runtime_error&) {
    // Parameter continuation fared no better; the cold-start failure stands.
  }
  return out;
}

}  // namespace halfline
