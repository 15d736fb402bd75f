// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "halfline/grid.hpp"

namespace halfline::cli {

/// Everything a subcommand needs. Defaults are the settings the benchmark
/// results were produced with: colloid problem, logarithmic map with c = 10,
/// the full doubling sequence 5 .. 5120, and Newton tolerance 1e-12.
struct RunConfig {
  std::string problem = "colloid";  // "colloid" | "linear"
  double u0 = 1.0;
  GridMapSpec map;
  std::vector<int> n_list = {5, 10, 20, 40, 80, 160, 320, 640, 1280, 2560, 5120};
  double tol = 1e-12;
  int max_iter = 50;
  double p0 = 2.0;
  double order_step = 2.0;
  int quantity_component = 2;  // 1-based, as printed: 1 = field, 2 = derivative
  int quantity_node = 0;       // node index on the coarsest grid
  bool at_node_norm = false;   // converge: measure errors at the quantity location
  std::array<int, 2> pair = {20, 40};
  int reference_n = 0;  // converge: > 0 replaces the exact solution by a fine solve
  std::string format = "csv";  // "csv" | "json"
  std::string out;             // output path; empty writes the table to stdout
};

/// Exit code 0 on success, 1 when a requested solve does not converge.
/// Configuration mistakes surface as std::invalid_argument for the caller
/// (the command line front end maps them to exit code 2).
int cmd_solve(const RunConfig& config);
int cmd_converge(const RunConfig& config);
int cmd_extrapolate(const RunConfig& config);
int cmd_estimate(const RunConfig& config);

}  // namespace halfline::cli
