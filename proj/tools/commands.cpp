// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "halfline/problems.hpp"
#include "halfline/richardson.hpp"
#include "table.hpp"

namespace halfline::cli {

namespace {

struct Problem {
  BvpSystem system;
  ExactSolution exact;
  FirstIterate first_iterate;
};

Problem make_problem(const RunConfig& cfg) {
  if (cfg.problem == "colloid") {
    const double u0 = cfg.u0;
    return {colloid_system(u0), colloid_exact_fn(u0),
            [u0](const QuasiUniformGrid& g) { return colloid_first_iterate(u0, g); }};
  }
  if (cfg.problem == "linear") {
    return {linear_fixture(), linear_fixture_exact_fn(),
            [](const QuasiUniformGrid& g) { return DiscreteSolution(g, 2); }};
  }
  throw std::invalid_argument("unknown problem '" + cfg.problem +
                              "' (expected colloid or linear)");
}

NewtonConfig newton_config(const RunConfig& cfg) {
  NewtonConfig nc;
  nc.tol = cfg.tol;
  nc.max_iter = cfg.max_iter;
  return nc;
}

void check_common(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") {
    throw std::invalid_argument("unknown format '" + cfg.format +
                                "' (expected csv or json)");
  }
  if (cfg.n_list.empty()) throw std::invalid_argument("n-list must not be empty");
}

/// Runs the mesh continuation, printing the per-grid summary. Returns false
/// (after reporting on stderr) when some grid fails to converge.
bool run_sweep(const RunConfig& cfg, const Problem& prob, std::span<const int> n_list,
               ContinuationRun& run) {
  if (cfg.problem == "colloid") {
    auto res = solve_colloid(cfg.u0, cfg.map, n_list, newton_config(cfg));
    if (res.used_parameter_continuation) {
      std::printf("# cold start failed on N=%d; reached u0=%g by parameter continuation\n",
                  n_list.front(), cfg.u0);
    }
    run = std::move(res.run);
  } else {
    run = continuation_solve(prob.system, cfg.map, n_list, prob.first_iterate,
                             newton_config(cfg));
  }
  for (const auto& step : run.steps) {
    std::printf("# N=%d iterations=%d converged\n", step.n_intervals,
                step.report.iterations);
  }
  if (!run.completed()) {
    std::fprintf(stderr, "solve failed at N=%d: %s\n", run.failure->n_intervals,
                 run.failure->reason.c_str());
    return false;
  }
  return true;
}

nlohmann::ordered_json base_metadata(const RunConfig& cfg) {
  nlohmann::ordered_json meta;
  meta["problem"] = cfg.problem;
  if (cfg.problem == "colloid") meta["u0"] = cfg.u0;
  meta["map"] = cfg.map.kind == GridMap::Logarithmic ? "log" : "alg";
  meta["c"] = cfg.map.c;
  meta["tol"] = cfg.tol;
  meta["max_iter"] = cfg.max_iter;
  return meta;
}

void append_sweep_metadata(nlohmann::ordered_json& meta, const ContinuationRun& run) {
  auto& grids = meta["grids"] = nlohmann::ordered_json::array();
  for (const auto& step : run.steps) {
    grids.push_back({{"n", step.n_intervals},
                     {"iterations", step.report.iterations},
                     {"converged", step.report.converged}});
  }
}

void write_output(const RunConfig& cfg, const Table& table,
                  const nlohmann::ordered_json& metadata) {
  const std::string text =
      cfg.format == "json" ? emit_json(table, metadata) : emit_csv(table);
  if (cfg.out.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw std::invalid_argument("cannot open output file '" + cfg.out + "'");
  file << text;
  if (!file) throw std::runtime_error("writing '" + cfg.out + "' failed");
}

double max_abs_component(std::span<const double> values, int dim, int component) {
  double m = 0.0;
  for (std::size_t i = static_cast<std::size_t>(component); i < values.size();
       i += static_cast<std::size_t>(dim)) {
    m = std::max(m, std::abs(values[i]));
  }
  return m;
}

}  // namespace

int cmd_solve(const RunConfig& cfg) {
  check_common(cfg);
  const Problem prob = make_problem(cfg);
  ContinuationRun run;
  if (!run_sweep(cfg, prob, cfg.n_list, run)) return 1;

  const DiscreteSolution& u = run.finest();
  const int n_iv = u.grid().n_intervals();
  const auto err = global_error(u, prob.exact);

  Table table;
  table.columns = {"n", "xi", "x", "u1", "u2", "e1", "e2"};
  for (int n = 0; n <= n_iv; ++n) {
    const auto row = u.row(n);
    const auto e = err.begin() + 2 * n;
    table.rows.push_back({static_cast<long long>(n),
                          static_cast<double>(n) / static_cast<double>(n_iv),
                          u.grid().node(n), row[0], row[1], e[0], e[1]});
  }

  auto meta = base_metadata(cfg);
  append_sweep_metadata(meta, run);
  meta["finest_n"] = n_iv;
  write_output(cfg, table, meta);
  return 0;
}

int cmd_converge(const RunConfig& cfg) {
  check_common(cfg);
  if (cfg.n_list.size() < 2) {
    throw std::invalid_argument("converge needs at least two grids in n-list");
  }
  const Problem prob = make_problem(cfg);

  // With --reference-n the study measures errors against a discrete solution
  // on that grid instead of the closed form; the sweep is simply continued
  // past the study grids up to the reference resolution.
  std::vector<int> sweep_list = cfg.n_list;
  if (cfg.reference_n > 0) {
    int n = sweep_list.back();
    while (n < cfg.reference_n) {
      n *= 2;
      sweep_list.push_back(n);
    }
    if (n != cfg.reference_n && cfg.reference_n != cfg.n_list.back()) {
      throw std::invalid_argument(
          "reference-n must continue the doubling sequence of n-list");
    }
  }

  ContinuationRun run;
  if (!run_sweep(cfg, prob, sweep_list, run)) return 1;

  std::vector<DiscreteSolution> study;
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
    study.push_back(run.steps[i].solution);
  }
  const int levels = std::min<int>(2, static_cast<int>(study.size()) - 1);

  NormSpec norm;
  if (cfg.at_node_norm) {
    norm.kind = NormSpec::Kind::AtNode;
    norm.node = cfg.quantity_node;
    norm.component = cfg.quantity_component - 1;
  }

  const auto entries =
      cfg.reference_n > 0
          ? order_study(study, run.finest(), cfg.p0, cfg.order_step, levels, norm)
          : order_study(study, prob.exact, cfg.p0, cfg.order_step, levels, norm);

  Table table;
  table.columns = {"level", "n_coarse", "n_fine", "component",
                   "err_coarse", "err_fine", "order"};
  for (const auto& e : entries) {
    table.rows.push_back({static_cast<long long>(e.level),
                          static_cast<long long>(cfg.n_list[static_cast<std::size_t>(e.pair_index)]),
                          static_cast<long long>(cfg.n_list[static_cast<std::size_t>(e.pair_index) + 1]),
                          static_cast<long long>(e.component + 1), e.err_coarse,
                          e.err_fine, e.order});
  }
  for (const auto& e : entries) {
    if (e.pair_index == static_cast<int>(study.size()) - 2) {
      std::printf("# level %d, pair (%d,%d), component %d: order %s\n", e.level,
                  cfg.n_list[static_cast<std::size_t>(e.pair_index)],
                  cfg.n_list[static_cast<std::size_t>(e.pair_index) + 1],
                  e.component + 1, format_double(e.order).c_str());
    }
  }

  auto meta = base_metadata(cfg);
  append_sweep_metadata(meta, run);
  meta["p0"] = cfg.p0;
  meta["order_step"] = cfg.order_step;
  meta["levels"] = levels;
  meta["norm"] = cfg.at_node_norm ? "at_node" : "max_over_common_nodes";
  if (cfg.reference_n > 0) meta["reference_n"] = cfg.reference_n;
  write_output(cfg, table, meta);
  return 0;
}

int cmd_extrapolate(const RunConfig& cfg) {
  check_common(cfg);
  if (cfg.quantity_component < 1 || cfg.quantity_component > 2) {
    throw std::invalid_argument("quantity component must be 1 or 2");
  }
  if (cfg.quantity_node < 0 || cfg.quantity_node > cfg.n_list.front()) {
    throw std::invalid_argument("quantity node must lie on the coarsest grid");
  }
  const Problem prob = make_problem(cfg);
  ContinuationRun run;
  if (!run_sweep(cfg, prob, cfg.n_list, run)) return 1;

  // The tracked quantity sits at a coarsest-grid node; by nesting the same
  // point is node n * (N_g / N_0) on grid g.
  std::vector<double> raw;
  for (const auto& step : run.steps) {
    const int scale = step.n_intervals / cfg.n_list.front();
    raw.push_back(step.solution.row(cfg.quantity_node * scale)[cfg.quantity_component - 1]);
  }
  const int levels = std::min<int>(2, static_cast<int>(raw.size()) - 1);
  const std::string label = "comp=" + std::to_string(cfg.quantity_component) +
                            ",node=" + std::to_string(cfg.quantity_node);
  const auto tab = build_table(raw, cfg.n_list, cfg.p0, cfg.order_step, levels, label);

  Table table;
  table.columns = {"N"};
  for (int k = 0; k <= levels; ++k) table.columns.push_back("k" + std::to_string(k));
  for (std::size_t g = 0; g < tab.entries.size(); ++g) {
    std::vector<Cell> row{static_cast<long long>(tab.grid_sizes[g])};
    for (int k = 0; k <= levels; ++k) {
      if (k < static_cast<int>(tab.entries[g].size())) {
        row.emplace_back(tab.entries[g][static_cast<std::size_t>(k)]);
      } else {
        row.emplace_back(std::monostate{});
      }
    }
    table.rows.push_back(std::move(row));
  }
  std::printf("# %s, most extrapolated: %s\n", label.c_str(),
              format_double(tab.entries.back().back()).c_str());

  auto meta = base_metadata(cfg);
  append_sweep_metadata(meta, run);
  meta["quantity"] = label;
  meta["p0"] = cfg.p0;
  meta["order_step"] = cfg.order_step;
  meta["levels"] = levels;
  write_output(cfg, table, meta);
  return 0;
}

int cmd_estimate(const RunConfig& cfg) {
  check_common(cfg);
  if (cfg.pair[1] != 2 * cfg.pair[0] || cfg.pair[0] < 1) {
    throw std::invalid_argument("pair must be N,2N");
  }
  const Problem prob = make_problem(cfg);
  const std::vector<int> n_list{cfg.pair[0], cfg.pair[1]};
  ContinuationRun run;
  if (!run_sweep(cfg, prob, n_list, run)) return 1;

  const DiscreteSolution& coarse = run.steps[0].solution;
  const DiscreteSolution& fine = run.steps[1].solution;
  const auto est = error_estimate(coarse, fine, cfg.p0);
  const auto fine_on_coarse = restrict_to_coarse(fine);
  const auto err = global_error(fine_on_coarse, prob.exact);

  Table table;
  table.columns = {"n", "x", "E1", "E2", "e1", "e2"};
  int violations[2] = {0, 0};
  for (int n = 0; n <= est.coarse_n_intervals; ++n) {
    const auto e_row = est.row(n);
    const auto t = err.begin() + 2 * n;
    table.rows.push_back({static_cast<long long>(n), coarse.grid().node(n), e_row[0],
                          e_row[1], t[0], t[1]});
    for (int j = 0; j < 2; ++j) {
      if (std::abs(e_row[j]) < std::abs(t[j])) ++violations[j];
    }
  }

  for (int j = 0; j < 2; ++j) {
    const double est_max = max_abs_component(est.values, 2, j);
    const double err_max = max_abs_component(err, 2, j);
    std::printf("# component %d: max|E|=%s max|e|=%s bound_holds=%s pointwise_violations=%d\n",
                j + 1, format_double(est_max).c_str(), format_double(err_max).c_str(),
                est_max >= err_max ? "yes" : "no", violations[j]);
  }

  auto meta = base_metadata(cfg);
  append_sweep_metadata(meta, run);
  meta["p0"] = cfg.p0;
  meta["pair"] = {cfg.pair[0], cfg.pair[1]};
  write_output(cfg, table, meta);
  return 0;
}

}  // namespace halfline::cli
