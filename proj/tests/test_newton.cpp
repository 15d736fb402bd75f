// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "halfline/errors.hpp"
#include "halfline/newton.hpp"
#include "halfline/problems.hpp"

using namespace halfline;

namespace {

DiscreteSolution random_state(const QuasiUniformGrid& grid, int dim, unsigned seed,
                              double lo = -1.0, double hi = 1.5) {
  DiscreteSolution u(grid, dim);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> val(lo, hi);
  for (auto& v : u.values()) v = val(rng);
  return u;
}

double boundary_defect(const BvpSystem& sys, const DiscreteSolution& u) {
  std::vector<double> g(static_cast<std::size_t>(sys.dim));
  sys.g(u.row(0), u.row(u.n_nodes() - 1), g);
  double m = 0.0;
  for (double v : g) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("update_norm is the mean absolute entry") {
  const std::vector<double> delta{3.0, -1.0};
  CHECK(update_norm(delta) == 2.0);
  CHECK(update_norm(std::vector<double>{}) == 0.0);
  const std::vector<double> scaled{6.0, -2.0};
  CHECK(update_norm(scaled) == doctest::Approx(2.0 * update_norm(delta)).epsilon(1e-15));
}

TEST_CASE("solve_linear on an identity Jacobian returns the rhs") {
  const std::size_t m = 8;  // dim 1, 7 intervals
  BandMatrix eye(m, 1, 1);
  for (std::size_t i = 0; i < m; ++i) eye.set(i, i, 1.0);
  std::vector<std::size_t> row_of(m);
  std::iota(row_of.begin(), row_of.end(), std::size_t{0});
  const StructuredJacobian jac(BandedJacobian{std::move(eye), std::move(row_of)}, 1, 7);
  std::vector<double> rhs(m);
  std::iota(rhs.begin(), rhs.end(), -3.0);
  const auto x = solve_linear(jac, rhs);
  for (std::size_t i = 0; i < m; ++i) CHECK(x[i] == rhs[i]);
}

TEST_CASE("solve_linear agrees with the dense expansion") {
  auto check_structure = [](BcStructure bc, unsigned seed) {
    auto sys = colloid_system(1.0);
    sys.bc = bc;
    const QuasiUniformGrid grid({GridMap::Algebraic, 10.0}, 6);
    const auto k = scheme_coefficients(grid);
    const auto u = random_state(grid, 2, seed);

    const auto jac = jacobian(sys, k, u);
    const auto rhs = residual(sys, k, u);
    const auto x = solve_linear(jac, rhs);
    REQUIRE(x.size() == rhs.size());

    const auto dense = jac.to_dense();
    const std::size_t m = rhs.size();
    double rhs_max = 0.0;
    for (double v : rhs) rhs_max = std::max(rhs_max, std::abs(v));
    for (std::size_t i = 0; i < m; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += dense[i * m + j] * x[j];
      CHECK(std::abs(acc - rhs[i]) <= 1e-12 * std::max(1.0, rhs_max));
    }
  };
  SUBCASE("separated") { check_structure(SeparatedBc{1, 1}, 11); }
  SUBCASE("coupled") { check_structure(CoupledBc{}, 12); }
}

TEST_CASE("the applied update is exactly the linear solve, scaled by damping") {
  const QuasiUniformGrid grid({GridMap::Algebraic, 10.0}, 5);
  const auto sys = colloid_system(1.0);
  const auto k = scheme_coefficients(grid);
  const auto u0 = colloid_first_iterate(1.0, grid);

  const auto delta = solve_linear(jacobian(sys, k, u0), residual(sys, k, u0));

  for (double damping : {1.0, 0.5}) {
    NewtonConfig cfg;
    cfg.tol = 1e-30;  // force a full first step
    cfg.max_iter = 1;
    cfg.damping = damping;
    const auto [u1, rep] = newton_solve(sys, u0, cfg);
    CHECK(rep.iterations == 1);
    CHECK(!rep.converged);
    const auto before = u0.values();
    const auto after = u1.values();
    for (std::size_t i = 0; i < after.size(); ++i) {
      CHECK(after[i] == before[i] - damping * delta[i]);
    }
  }
}

TEST_CASE("the linear fixture converges in at most two iterations") {
  const auto sys = linear_fixture();
  const QuasiUniformGrid grid({GridMap::Logarithmic, 10.0}, 16);

  for (unsigned seed : {1u, 2u, 3u}) {
    const auto init = random_state(grid, 2, seed, -5.0, 5.0);
    const auto [sol, rep] = newton_solve(sys, init);
    CHECK(rep.converged);
    CHECK(rep.iterations <= 2);
    CHECK(boundary_defect(sys, sol) <= 1e-10);

    // A converged solution is a fixed point: one more sweep moves nothing.
    const auto [again, rep2] = newton_solve(sys, sol);
    CHECK(rep2.converged);
    CHECK(rep2.iterations == 1);
    CHECK(rep2.final_update_norm <= 1e-12);
  }
}

TEST_CASE("separated and coupled paths produce the same solution") {
  auto sep = colloid_system(1.0);
  auto cpl = colloid_system(1.0);
  cpl.bc = CoupledBc{};
  const QuasiUniformGrid grid({GridMap::Algebraic, 10.0}, 20);
  const auto init = colloid_first_iterate(1.0, grid);

  const auto [u_sep, rep_sep] = newton_solve(sep, init);
  const auto [u_cpl, rep_cpl] = newton_solve(cpl, init);
  REQUIRE(rep_sep.converged);
  REQUIRE(rep_cpl.converged);
  for (std::size_t i = 0; i < u_sep.values().size(); ++i) {
    CHECK(u_sep.values()[i] ==
          doctest::Approx(u_cpl.values()[i]).epsilon(1e-14).scale(1.0));
  }
}

TEST_CASE("newton_solve validates its configuration") {
  const auto sys = linear_fixture();
  const QuasiUniformGrid grid({GridMap::Algebraic, 10.0}, 4);
  const DiscreteSolution init(grid, 2);

  NewtonConfig cfg;
  cfg.tol = 0.0;
  CHECK_THROWS_AS(newton_solve(sys, init, cfg), std::invalid_argument);
  cfg = {};
  cfg.max_iter = 0;
  CHECK_THROWS_AS(newton_solve(sys, init, cfg), std::invalid_argument);
  cfg = {};
  cfg.damping = 0.0;
  CHECK_THROWS_AS(newton_solve(sys, init, cfg), std::invalid_argument);
  cfg = {};
  cfg.damping = 1.5;
  CHECK_THROWS_AS(newton_solve(sys, init, cfg), std::invalid_argument);

  DiscreteSolution bad(grid, 2);
  bad.row(1)[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(newton_solve(sys, bad, {}), std::invalid_argument);
}

TEST_CASE("an exploding step is reported as divergence") {
  BvpSystem sys;
  sys.dim = 1;
  sys.f = [](double, std::span<const double>, std::span<double> out) { out[0] = 0.0; };
  sys.g = [](std::span<const double> l, std::span<const double>, std::span<double> out) {
    out[0] = 1e-14 * l[0] - 1e300;
  };
  sys.g_jac = [](std::span<const double>, std::span<const double>, std::span<double> jl,
                 std::span<double> jr) {
    jl[0] = 1e-14;
    jr[0] = 0.0;
  };
  sys.bc = SeparatedBc{1, 0};
  const QuasiUniformGrid grid({GridMap::Algebraic, 10.0}, 2);
  CHECK_THROWS_AS(newton_solve(sys, DiscreteSolution(grid, 1), {}), DivergenceError);
}

TEST_CASE("interpolation to the doubled grid") {
  const QuasiUniformGrid grid({GridMap::Logarithmic, 10.0}, 4);
  auto coarse = random_state(grid, 2, 77);
  const auto fine = interpolate_to_finer(coarse);

  CHECK(fine.grid().n_intervals() == 8);
  CHECK(fine.grid().map() == coarse.grid().map());
  for (int n = 0; n <= 4; ++n) {
    CHECK(fine.row(2 * n)[0] == coarse.row(n)[0]);
    CHECK(fine.row(2 * n)[1] == coarse.row(n)[1]);
  }
  for (int n = 0; n < 4; ++n) {
    CHECK(fine.row(2 * n + 1)[0] == 0.5 * (coarse.row(n)[0] + coarse.row(n + 1)[0]));
    CHECK(fine.row(2 * n + 1)[1] == 0.5 * (coarse.row(n)[1] + coarse.row(n + 1)[1]));
  }
}

TEST_CASE("restriction undoes interpolation bit-for-bit") {
  const QuasiUniformGrid grid({GridMap::Algebraic, 10.0}, 6);
  const auto coarse = random_state(grid, 2, 99);
  const auto back = restrict_to_coarse(interpolate_to_finer(coarse));
  CHECK(back.grid().n_intervals() == coarse.grid().n_intervals());
  CHECK(back.grid().map() == coarse.grid().map());
  for (std::size_t i = 0; i < coarse.values().size(); ++i) {
    CHECK(back.values()[i] == coarse.values()[i]);
  }
}

TEST_CASE("interpolation error shrinks at second order on smooth data") {
  const GridMapSpec map{GridMap::Algebraic, 10.0};
  std::vector<double> errs;
  for (int n_iv : {40, 80, 160}) {
    const QuasiUniformGrid coarse_grid(map, n_iv);
    DiscreteSolution coarse(coarse_grid, 2);
    for (int n = 0; n <= n_iv; ++n) {
      const auto v = colloid_exact(1.0, coarse_grid.node(n));
      coarse.row(n)[0] = v[0];
      coarse.row(n)[1] = v[1];
    }
    const auto fine = interpolate_to_finer(coarse);
    double err = 0.0;
    for (int n = 0; n < fine.n_nodes(); ++n) {
      const auto v = colloid_exact(1.0, fine.grid().node(n));
      err = std::max(err, std::abs(fine.row(n)[0] - v[0]));
      err = std::max(err, std::abs(fine.row(n)[1] - v[1]));
    }
    errs.push_back(err);
  }
  for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
    const double ratio = errs[i] / errs[i + 1];
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 6.0);
  }
}

TEST_CASE("mesh continuation warm-starts every refinement") {
  const auto sys = linear_fixture();
  const std::vector<int> n_list{4, 8, 16};
  int first_iterate_calls = 0;
  const FirstIterate init = [&first_iterate_calls](const QuasiUniformGrid& g) {
    ++first_iterate_calls;
    return DiscreteSolution(g, 2);
  };
  const auto run = continuation_solve(sys, {GridMap::Algebraic, 10.0}, n_list, init);

  CHECK(run.completed());
  CHECK(first_iterate_calls == 1);
  REQUIRE(run.steps.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(run.steps[i].n_intervals == n_list[i]);
    CHECK(run.steps[i].report.converged);
    CHECK(run.steps[i].report.iterations <= 2);
  }
  CHECK(run.finest().grid().n_intervals() == 16);
  CHECK(run.step_for(8) == &run.steps[1]);
  CHECK(run.step_for(7) == nullptr);
}

TEST_CASE("continuation stops at the first failing grid and keeps the prefix") {
  NewtonConfig strangled;
  strangled.max_iter = 1;
  const std::vector<int> n_list{5, 10};
  const auto run =
      continuation_solve(colloid_system(1.0), {GridMap::Algebraic, 10.0}, n_list,
                         [](const QuasiUniformGrid& g) { return colloid_first_iterate(1.0, g); },
                         strangled);
  CHECK(!run.completed());
  CHECK(run.steps.empty());
  REQUIRE(run.failure.has_value());
  CHECK(run.failure->n_intervals == 5);
  CHECK(!run.failure->reason.empty());
}

TEST_CASE("continuation validates the grid sequence") {
  const auto sys = linear_fixture();
  const FirstIterate init = [](const QuasiUniformGrid& g) { return DiscreteSolution(g, 2); };
  const GridMapSpec map{GridMap::Algebraic, 10.0};
  CHECK_THROWS_AS(continuation_solve(sys, map, std::vector<int>{}, init),
                  std::invalid_argument);
  CHECK_THROWS_AS(continuation_solve(sys, map, std::vector<int>{4, 9}, init),
                  std::invalid_argument);
  CHECK_THROWS_AS(continuation_solve(sys, map, std::vector<int>{0, 0}, init),
                  std::invalid_argument);
  // first iterate built on the wrong grid
  const FirstIterate wrong = [&](const QuasiUniformGrid&) {
    return DiscreteSolution(QuasiUniformGrid(map, 3), 2);
  };
  CHECK_THROWS_AS(continuation_solve(sys, map, std::vector<int>{4, 8}, wrong),
                  std::invalid_argument);
}
