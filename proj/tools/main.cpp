// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#include <charconv>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using halfline::cli::RunConfig;

long parse_int(const std::string& text, const char* what) {
  long value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (auto [p, ec] = std::from_chars(first, last, value);
      ec != std::errc{} || p != last) {
    throw std::invalid_argument(std::string(what) + ": '" + text + "' is not an integer");
  }
  return value;
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const long v = parse_int(text.substr(start, end - start), "n-list");
    if (v < 1) throw std::invalid_argument("n-list entries must be positive");
    out.push_back(static_cast<int>(v));
    start = end + 1;
  }
  return out;
}

std::array<int, 2> parse_pair(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw std::invalid_argument("pair must be two integers N,2N");
  }
  return {static_cast<int>(parse_int(text.substr(0, comma), "pair")),
          static_cast<int>(parse_int(text.substr(comma + 1), "pair"))};
}

/// "comp=<1|2>,node=<int>", either part optional.
void parse_quantity(const std::string& text, RunConfig& cfg) {
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string part = text.substr(start, end - start);
    start = end + 1;
    const std::size_t eq = part.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("quantity parts must look like comp=2 or node=0");
    }
    const std::string key = part.substr(0, eq);
    const long value = parse_int(part.substr(eq + 1), "quantity");
    if (key == "comp") {
      cfg.quantity_component = static_cast<int>(value);
    } else if (key == "node") {
      cfg.quantity_node = static_cast<int>(value);
    } else {
      throw std::invalid_argument("unknown quantity key '" + key + "'");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite difference BVP solver on [0, inf) with Richardson extrapolation"};
  app.require_subcommand(1);
  app.set_config("--config")->description("TOML config file; flags override it");

  std::string problem = "colloid";
  double u0 = 1.0;
  std::string map_str = "log";
  double c = 10.0;
  std::string n_list_str;
  double tol = 1e-12;
  int max_iter = 50;
  double p0 = 2.0;
  double order_step = 2.0;
  std::string quantity_str;
  std::string pair_str;
  int reference_n = 0;
  std::string format = "csv";
  std::string out;

  app.add_option("--problem", problem, "Problem to solve")
      ->check(CLI::IsMember({"colloid", "linear"}));
  app.add_option("--u0", u0, "Left boundary value for the colloid problem");
  app.add_option("--map", map_str, "Grid map")->check(CLI::IsMember({"log", "alg"}));
  app.add_option("--c", c, "Grid map scale parameter");
  app.add_option("--n-list", n_list_str,
                 "Comma separated doubling interval counts (default 5,10,...,5120)");
  app.add_option("--tol", tol, "Newton tolerance on the mean absolute update");
  app.add_option("--max-iter", max_iter, "Newton iteration cap per grid");
  app.add_option("--p0", p0, "Leading error order");
  app.add_option("--order-step", order_step, "Order increment per extrapolation level");
  auto* quantity_opt = app.add_option(
      "--quantity", quantity_str, "Tracked scalar, e.g. comp=2,node=0 (extrapolate; "
                                  "selects the error location for converge)");
  app.add_option("--pair", pair_str, "Grid pair N,2N for estimate (default 20,40)");
  app.add_option("--reference-n", reference_n,
                 "converge: measure errors against a solve at this N instead of the "
                 "closed form");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out, "Output file path (default: stdout)");

  auto* solve = app.add_subcommand("solve", "Mesh continuation; finest-grid solution table");
  auto* converge = app.add_subcommand("converge", "Errors and observed orders per grid pair");
  auto* extrapolate =
      app.add_subcommand("extrapolate", "Triangular extrapolation table for one quantity");
  auto* estimate = app.add_subcommand("estimate", "A posteriori error estimate for a grid pair");
  for (auto* sub : {solve, converge, extrapolate, estimate}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    cfg.problem = problem;
    cfg.u0 = u0;
    cfg.map.kind = map_str == "log" ? halfline::GridMap::Logarithmic
                                    : halfline::GridMap::Algebraic;
    cfg.map.c = c;
    if (!n_list_str.empty()) cfg.n_list = parse_n_list(n_list_str);
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.p0 = p0;
    cfg.order_step = order_step;
    if (quantity_opt->count() > 0) {
      parse_quantity(quantity_str, cfg);
      cfg.at_node_norm = true;
    }
    if (!pair_str.empty()) cfg.pair = parse_pair(pair_str);
    cfg.reference_n = reference_n;
    cfg.format = format;
    cfg.out = out;

    if (app.got_subcommand(solve)) return halfline::cli::cmd_solve(cfg);
    if (app.got_subcommand(converge)) return halfline::cli::cmd_converge(cfg);
    if (app.got_subcommand(extrapolate)) return halfline::cli::cmd_extrapolate(cfg);
    return halfline::cli::cmd_estimate(cfg);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
}
