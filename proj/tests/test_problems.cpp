// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <variant>
#include <vector>

#include "halfline/problems.hpp"
#include "halfline/richardson.hpp"

using namespace halfline;

namespace {

double max_nodal_error(const DiscreteSolution& u, const ExactSolution& exact) {
  const auto err = global_error(u, exact);
  double m = 0.0;
  for (double e : err) m = std::max(m, std::abs(e));
  return m;
}

}  // namespace

TEST_CASE("the closed form honors its boundary values") {
  for (double u0 : {0.5, 1.0, 3.0, 7.0, 10.0}) {
    CAPTURE(u0);
    const auto at0 = colloid_exact(u0, 0.0);
    CHECK(at0[0] == doctest::Approx(u0).epsilon(1e-14));
    CHECK(at0[1] == doctest::Approx(colloid_dudx0(u0)).epsilon(1e-13));

    const auto limit = colloid_exact(u0, std::numeric_limits<double>::infinity());
    CHECK(limit[0] == 0.0);
    CHECK(limit[1] == 0.0);
  }
}

TEST_CASE("the wall slope at reference strengths") {
  CHECK(colloid_dudx0(7.0) == doctest::Approx(-46.789615734913319).epsilon(1e-15));
  CHECK(colloid_dudx0(1.0) == doctest::Approx(-1.473880).epsilon(1e-6));
}

TEST_CASE("the wall slope agrees with its textbook form where that form is stable") {
  for (double u0 : {0.5, 1.0, 3.0, 7.0, 10.0}) {
    CAPTURE(u0);
    CHECK(colloid_dudx0(u0) ==
          doctest::Approx(-2.0 * std::sqrt(std::cosh(u0) - 1.0)).epsilon(1e-14));
  }
  // At u0 = 1e-8 the subtraction cosh(u0) - 1 underflows to zero; the
  // implemented form must still deliver the limit -sqrt(2) u0.
  CHECK(-2.0 * std::sqrt(std::cosh(1e-8) - 1.0) == 0.0);
  CHECK(colloid_dudx0(1e-8) ==
        doctest::Approx(-std::numbers::sqrt2 * 1e-8).epsilon(1e-10));
}

TEST_CASE("the closed form satisfies the differential equation") {
  const double h = 1e-6;
  for (double u0 : {1.0, 7.0}) {
    for (double x : {0.3, 0.9, 2.0}) {
      CAPTURE(u0);
      CAPTURE(x);
      const auto mid = colloid_exact(u0, x);
      const auto lo = colloid_exact(u0, x - h);
      const auto hi = colloid_exact(u0, x + h);
      CHECK((hi[0] - lo[0]) / (2.0 * h) == doctest::Approx(mid[1]).epsilon(1e-7));
      CHECK((hi[1] - lo[1]) / (2.0 * h) ==
            doctest::Approx(2.0 * std::sinh(mid[0])).epsilon(1e-7));
    }
  }
}

TEST_CASE("the far tail stays finite all the way to infinity") {
  const auto far = colloid_exact(7.0, 100.0);
  CHECK(far[0] > 0.0);
  CHECK(far[0] < 1e-60);
  CHECK(far[1] < 0.0);
  CHECK(far[1] > -1e-60);

  const auto very_far = colloid_exact(7.0, 5e4);
  CHECK(very_far[0] == 0.0);
  CHECK(very_far[1] == 0.0);
  CHECK(std::isfinite(colloid_exact(7.0, 1e308)[0]));
}

TEST_CASE("the closed form decays monotonically") {
  const double u0 = 3.0;
  const std::vector<double> xs{0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  auto prev = colloid_exact(u0, xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const auto cur = colloid_exact(u0, xs[i]);
    CHECK(cur[0] > 0.0);
    CHECK(cur[0] < prev[0]);
    CHECK(cur[1] < 0.0);
    CHECK(cur[1] > prev[1]);  // slope relaxes toward zero from below
    prev = cur;
  }
}

TEST_CASE("the closed form rejects points outside its domain") {
  CHECK_THROWS_AS(colloid_exact(1.0, -1e-12), std::domain_error);
  CHECK_THROWS_AS(colloid_exact(1.0, -std::numeric_limits<double>::infinity()),
                  std::domain_error);
  CHECK_THROWS_AS(colloid_exact(1.0, std::numeric_limits<double>::quiet_NaN()),
                  std::domain_error);
  for (double bad : {0.0, -3.0, std::numeric_limits<double>::quiet_NaN()}) {
    CHECK_THROWS_AS(colloid_exact(bad, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(colloid_system(bad), std::invalid_argument);
    CHECK_THROWS_AS(colloid_dudx0(bad), std::invalid_argument);
    CHECK_THROWS_AS(colloid_exact_fn(bad), std::invalid_argument);
  }
}

TEST_CASE("the electrostatics system carries the expected pieces") {
  const auto sys = colloid_system(3.0);
  CHECK(sys.dim == 2);
  REQUIRE(std::holds_alternative<SeparatedBc>(sys.bc));
  CHECK(std::get<SeparatedBc>(sys.bc).n_left == 1);
  CHECK(std::get<SeparatedBc>(sys.bc).n_right == 1);
  REQUIRE(static_cast<bool>(sys.f));
  REQUIRE(static_cast<bool>(sys.f_jac));
  REQUIRE(static_cast<bool>(sys.g));
  REQUIRE(static_cast<bool>(sys.g_jac));

  const std::vector<double> u{0.3, -2.5};
  std::vector<double> out(2);
  sys.f(1.7, u, out);
  CHECK(out[0] == -2.5);
  CHECK(out[1] == 2.0 * std::sinh(0.3));

  std::vector<double> jac(4);
  sys.f_jac(1.7, u, jac);
  CHECK(jac[0] == 0.0);
  CHECK(jac[1] == 1.0);
  CHECK(jac[2] == 2.0 * std::cosh(0.3));
  CHECK(jac[3] == 0.0);

  const std::vector<double> left{5.0, 9.0};
  const std::vector<double> right{4.0, 7.0};
  sys.g(left, right, out);
  CHECK(out[0] == 2.0);  // u(0) - u0
  CHECK(out[1] == 4.0);  // u(inf)

  std::vector<double> jl(4), jr(4);
  sys.g_jac(left, right, jl, jr);
  CHECK(jl == std::vector<double>{1.0, 0.0, 0.0, 0.0});
  CHECK(jr == std::vector<double>{0.0, 0.0, 1.0, 0.0});
}

TEST_CASE("the linear fixture solves to its exponential at second order") {
  const auto sys = linear_fixture();
  const GridMapSpec map{GridMap::Algebraic, 10.0};

  std::vector<double> errs;
  for (int n_iv : {16, 32}) {
    const auto [sol, rep] = newton_solve(sys, DiscreteSolution(QuasiUniformGrid(map, n_iv), 2));
    REQUIRE(rep.converged);
    CHECK(rep.iterations <= 2);
    errs.push_back(max_nodal_error(sol, linear_fixture_exact_fn()));
  }
  CHECK(errs[0] > 1e-6);  // the grids are coarse enough to see real error
  const double ratio = errs[0] / errs[1];
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.5);
}

TEST_CASE("the exponential fixture values") {
  const auto at0 = linear_fixture_exact(0.0);
  CHECK(at0[0] == 1.0);
  CHECK(at0[1] == -1.0);
  const auto limit = linear_fixture_exact(std::numeric_limits<double>::infinity());
  CHECK(limit[0] == 0.0);
  CHECK(limit[1] == 0.0);
  std::vector<double> out(2);
  linear_fixture_exact_fn()(2.0, out);
  CHECK(out[0] == std::exp(-2.0));
  CHECK(out[1] == -std::exp(-2.0));
}

TEST_CASE("the cold start fills every node the same way") {
  const QuasiUniformGrid grid({GridMap::Logarithmic, 10.0}, 6);
  const auto u = colloid_first_iterate(2.5, grid);
  CHECK(u.dim() == 2);
  CHECK(u.grid().n_intervals() == 6);
  for (int n = 0; n < u.n_nodes(); ++n) {
    CHECK(u.row(n)[0] == 2.5);
    CHECK(u.row(n)[1] == -1.0);
  }
  CHECK_THROWS_AS(colloid_first_iterate(0.0, grid), std::invalid_argument);
}

TEST_CASE("the benchmark driver walks the mesh sequence from the cold start") {
  const std::vector<int> n_list{5, 10, 20};
  const auto res = solve_colloid(1.0, {GridMap::Algebraic, 10.0}, n_list);

  CHECK(!res.used_parameter_continuation);
  REQUIRE(res.run.completed());
  REQUIRE(res.run.steps.size() == 3);
  CHECK(res.run.steps[0].report.iterations <= 10);
  for (std::size_t i = 1; i < 3; ++i) {
    CHECK(res.run.steps[i].report.iterations <= 5);  // warm starts converge fast
  }

  const auto& fine = res.run.finest();
  CHECK(fine.grid().n_intervals() == 20);

  std::vector<double> g(2);
  colloid_system(1.0).g(fine.row(0), fine.row(fine.n_nodes() - 1), g);
  CHECK(std::abs(g[0]) <= 1e-10);
  CHECK(std::abs(g[1]) <= 1e-10);

  CHECK(max_nodal_error(fine, colloid_exact_fn(1.0)) < 0.05);
}

TEST_CASE("the converged solution does not remember its first iterate") {
  const GridMapSpec map{GridMap::Algebraic, 10.0};
  const QuasiUniformGrid grid(map, 20);
  const auto sys = colloid_system(1.0);

  const auto [from_cold, rep_cold] = newton_solve(sys, colloid_first_iterate(1.0, grid));
  REQUIRE(rep_cold.converged);

  DiscreteSolution sampled(grid, 2);
  for (int n = 0; n < sampled.n_nodes(); ++n) {
    const auto v = colloid_exact(1.0, grid.node(n));
    sampled.row(n)[0] = v[0];
    sampled.row(n)[1] = v[1];
  }
  const auto [from_exact, rep_exact] = newton_solve(sys, sampled);
  REQUIRE(rep_exact.converged);
  CHECK(rep_exact.iterations <= rep_cold.iterations);

  for (std::size_t i = 0; i < from_cold.values().size(); ++i) {
    CHECK(std::abs(from_cold.values()[i] - from_exact.values()[i]) <= 1e-9);
  }
}

TEST_CASE("a failure on the coarsest grid is reported, not papered over") {
  NewtonConfig strangled;
  strangled.max_iter = 1;
  const std::vector<int> n_list{5, 10};
  const auto res = solve_colloid(1.0, {GridMap::Algebraic, 10.0}, n_list, strangled);
  CHECK(!res.run.completed());
  CHECK(!res.used_parameter_continuation);  // u0 = 1 leaves nothing to walk up from
  CHECK(res.run.steps.empty());
  REQUIRE(res.run.failure.has_value());
  CHECK(res.run.failure->n_intervals == 5);
}
