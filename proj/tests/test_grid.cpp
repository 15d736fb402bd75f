// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "halfline/grid.hpp"

using namespace halfline;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("map_eval pins the endpoints") {
  for (auto kind : {GridMap::Logarithmic, GridMap::Algebraic}) {
    const GridMapSpec map{kind, 3.5};
    CHECK(map_eval(map, 0.0) == 0.0);
    CHECK(map_eval(map, 1.0) == kInf);
  }
}

TEST_CASE("map_eval matches hand-evaluated points") {
  // -c ln(1 - 1/2) = c ln 2
  CHECK(map_eval({GridMap::Logarithmic, 10.0}, 0.5) ==
        doctest::Approx(6.931471805599453).epsilon(1e-15));
  // c xi / (1 - xi) at xi = 1/2 is exactly c
  CHECK(map_eval({GridMap::Algebraic, 1.0}, 0.5) == 1.0);
  CHECK(map_eval({GridMap::Algebraic, 10.0}, 0.5) == 10.0);
  CHECK(map_eval({GridMap::Algebraic, 1.0}, 0.25) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("map_eval is strictly increasing and the algebraic map dominates") {
  std::mt19937 rng(20260816);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double c : {0.5, 1.0, 10.0}) {
    for (int trial = 0; trial < 200; ++trial) {
      double x1 = unit(rng), x2 = unit(rng);
      if (x1 > x2) std::swap(x1, x2);
      if (x1 == x2) continue;
      const GridMapSpec log_map{GridMap::Logarithmic, c};
      const GridMapSpec alg_map{GridMap::Algebraic, c};
      CHECK(map_eval(log_map, x1) < map_eval(log_map, x2));
      CHECK(map_eval(alg_map, x1) < map_eval(alg_map, x2));
      // ln(1/(1-xi)) < xi/(1-xi) for xi in (0,1)
      if (x1 > 0.0) CHECK(map_eval(log_map, x1) < map_eval(alg_map, x1));
    }
  }
}

TEST_CASE("map_eval rejects bad arguments") {
  CHECK_THROWS_AS(map_eval({GridMap::Algebraic, 0.0}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(map_eval({GridMap::Algebraic, -1.0}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(map_eval({GridMap::Logarithmic, 1.0}, -0.1), std::domain_error);
  CHECK_THROWS_AS(map_eval({GridMap::Logarithmic, 1.0}, 1.1), std::domain_error);
  CHECK_THROWS_AS(map_eval({GridMap::Logarithmic, 1.0},
                           std::numeric_limits<double>::quiet_NaN()),
                  std::domain_error);
}

TEST_CASE("single-interval grid has hand-checkable quarter points") {
  const QuasiUniformGrid g({GridMap::Algebraic, 1.0}, 1);
  CHECK(g.n_intervals() == 1);
  CHECK(g.node(0) == 0.0);
  CHECK(g.node(1) == kInf);
  // xi = 1/4, 1/2, 3/4 under xi/(1-xi)
  CHECK(g.quarter(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(g.half(0) == 1.0);
  CHECK(g.three_quarter(0) == 3.0);
}

TEST_CASE("coefficients of the single-interval grid") {
  const QuasiUniformGrid g({GridMap::Algebraic, 1.0}, 1);
  const auto k = scheme_coefficients(g);
  REQUIRE(k.n_intervals() == 1);
  // a = 2 (3 - 1/3), b = (1 - 1/3)/(3 - 1/3), c = (3 - 1)/(3 - 1/3)
  CHECK(k.a[0] == doctest::Approx(16.0 / 3.0).epsilon(1e-15));
  CHECK(k.b[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(k.c[0] == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("grid invariants across maps and sizes") {
  for (auto kind : {GridMap::Logarithmic, GridMap::Algebraic}) {
    for (double c : {1.0, 10.0}) {
      for (int n_iv : {1, 5, 16, 160}) {
        CAPTURE(static_cast<int>(kind));
        CAPTURE(c);
        CAPTURE(n_iv);
        const QuasiUniformGrid g({kind, c}, n_iv);

        CHECK(g.node(0) == 0.0);
        CHECK(g.node(n_iv) == kInf);
        for (int n = 0; n < n_iv; ++n) {
          CHECK(std::isfinite(g.node(n)));
          CHECK(g.node(n) < g.quarter(n));
          CHECK(g.quarter(n) < g.half(n));
          CHECK(g.half(n) < g.three_quarter(n));
          CHECK(g.three_quarter(n) < g.node(n + 1));
          CHECK(std::isfinite(g.three_quarter(n)));
        }

        const auto k = scheme_coefficients(g);
        for (int n = 0; n < n_iv; ++n) {
          CHECK(k.a[n] > 0.0);
          CHECK(std::isfinite(k.a[n]));
          CHECK(k.b[n] > 0.0);
          CHECK(k.b[n] < 1.0);
          CHECK(k.c[n] > 0.0);
          CHECK(k.c[n] < 1.0);
          CHECK(std::abs(k.b[n] + k.c[n] - 1.0) <= 2.0 * std::numeric_limits<double>::epsilon());
        }

        // Last finite node sits where the map says it must.
        if (n_iv > 1) {
          const double last = g.node(n_iv - 1);
          const double expected = kind == GridMap::Logarithmic
                                      ? c * std::log(static_cast<double>(n_iv))
                                      : c * static_cast<double>(n_iv - 1);
          CHECK(last == doctest::Approx(expected).epsilon(1e-14));
        }
      }
    }
  }
}

TEST_CASE("doubling the grid keeps every old node bit-for-bit") {
  for (auto kind : {GridMap::Logarithmic, GridMap::Algebraic}) {
    const GridMapSpec map{kind, 10.0};
    for (int n_iv : {5, 20, 160}) {
      const QuasiUniformGrid coarse(map, n_iv);
      const QuasiUniformGrid fine(map, 2 * n_iv);
      for (int n = 0; n <= n_iv; ++n) {
        CHECK(fine.node(2 * n) == coarse.node(n));
      }
      // A coarse quarter point is the fine midpoint of the left child
      // interval, and the coarse midpoint is a fine node.
      for (int n = 0; n < n_iv; ++n) {
        CHECK(coarse.quarter(n) == fine.half(2 * n));
        CHECK(coarse.half(n) == fine.node(2 * n + 1));
        CHECK(coarse.three_quarter(n) == fine.half(2 * n + 1));
      }
    }
  }
}

TEST_CASE("grid construction rejects bad shapes") {
  CHECK_THROWS_AS(QuasiUniformGrid({GridMap::Algebraic, 1.0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(QuasiUniformGrid({GridMap::Algebraic, 1.0}, -3), std::invalid_argument);
  CHECK_THROWS_AS(QuasiUniformGrid({GridMap::Algebraic, 0.0}, 4), std::invalid_argument);
}
