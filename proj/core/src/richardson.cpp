// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#include "halfline/richardson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace halfline {

double extrapolate_step(double u_coarse, double u_fine, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("extrapolate_step: order must be positive");
  return u_fine + (u_fine - u_coarse) / (std::pow(2.0, p) - 1.0);
}

double ExtrapolationTable::value(int g, int k) const {
  if (g < 0 || g >= static_cast<int>(entries.size()) || k < 0 ||
      k >= static_cast<int>(entries[static_cast<std::size_t>(g)].size())) {
    throw std::out_of_range("ExtrapolationTable::value: no entry (g, k)");
  }
  return entries[static_cast<std::size_t>(g)][static_cast<std::size_t>(k)];
}

ExtrapolationTable build_table(std::span<const double> raw_values,
                               std::span<const int> grid_sizes, double p0,
                               double order_step, int levels,
                               std::string quantity_label) {
  if (raw_values.size() != grid_sizes.size()) {
    throw std::invalid_argument("build_table: one raw value per grid required");
  }
  if (levels < 0) throw std::invalid_argument("build_table: levels must be >= 0");
  if (raw_values.size() < static_cast<std::size_t>(levels) + 1) {
    throw std::invalid_argument("build_table: need at least levels + 1 grids");
  }
  for (std::size_t g = 0; g + 1 < grid_sizes.size(); ++g) {
    if (grid_sizes[g + 1] != 2 * grid_sizes[g]) {
      throw std::invalid_argument("build_table: grid sizes must double");
    }
  }

  ExtrapolationTable t;
  t.quantity_label = std::move(quantity_label);
  t.grid_sizes.assign(grid_sizes.begin(), grid_sizes.end());
  t.orders.resize(static_cast<std::size_t>(levels));
  for (int k = 0; k < levels; ++k) {
    t.orders[static_cast<std::size_t>(k)] = p0 + k * order_step;
    if (!(t.orders[static_cast<std::size_t>(k)] > 0.0)) {
      throw std::invalid_argument("build_table: derived order p_k must stay positive");
    }
  }

  const int n_grids = static_cast<int>(raw_values.size());
  t.entries.resize(static_cast<std::size_t>(n_grids));
  for (int g = 0; g < n_grids; ++g) {
    auto& row = t.entries[static_cast<std::size_t>(g)];
    row.resize(static_cast<std::size_t>(std::min(g, levels)) + 1);
    row[0] = raw_values[static_cast<std::size_t>(g)];
    for (int k = 1; k <= std::min(g, levels); ++k) {
      row[static_cast<std::size_t>(k)] =
          extrapolate_step(t.value(g - 1, k - 1), t.value(g, k - 1),
                           t.orders[static_cast<std::size_t>(k - 1)]);
    }
  }
  return t;
}

double observed_order(double err_coarse, double err_fine) {
  if (!(err_coarse > 0.0) || !(err_fine > 0.0)) {
    throw std::domain_error("observed_order: both errors must be positive");
  }
  return std::log2(err_coarse / err_fine);
}

DiscreteSolution restrict_to_coarse(const DiscreteSolution& fine) {
  const int n_fine = fine.grid().n_intervals();
  if (n_fine % 2 != 0) {
    throw std::invalid_argument("restrict_to_coarse: interval count must be even");
  }
  const int n_coarse = n_fine / 2;
  DiscreteSolution coarse(QuasiUniformGrid(fine.grid().map(), n_coarse), fine.dim());
  for (int n = 0; n <= n_coarse; ++n) {
    auto src = fine.row(2 * n);
    auto dst = coarse.row(n);
    for (int j = 0; j < fine.dim(); ++j) dst[j] = src[j];
  }
  return coarse;
}

ErrorEstimate error_estimate(const DiscreteSolution& coarse,
                             const DiscreteSolution& fine, double p0) {
  if (!(coarse.grid().map() == fine.grid().map())) {
    throw std::invalid_argument("error_estimate: solutions use different maps");
  }
  if (fine.grid().n_intervals() != 2 * coarse.grid().n_intervals()) {
    throw std::invalid_argument("error_estimate: fine grid must halve the coarse one");
  }
  if (fine.dim() != coarse.dim()) {
    throw std::invalid_argument("error_estimate: dimensions differ");
  }
  if (!(p0 > 0.0)) throw std::invalid_argument("error_estimate: order must be positive");

  const double denom = std::pow(2.0, p0) - 1.0;
  ErrorEstimate est;
  est.coarse_n_intervals = coarse.grid().n_intervals();
  est.dim = coarse.dim();
  est.order_used = p0;
  est.values.resize(coarse.values().size());
  const auto cv = coarse.values();
  for (int n = 0; n <= est.coarse_n_intervals; ++n) {
    auto f = fine.row(2 * n);
    for (int j = 0; j < est.dim; ++j) {
      const auto i =
          static_cast<std::size_t>(n) * static_cast<std::size_t>(est.dim) + static_cast<std::size_t>(j);
      est.values[i] = (f[j] - cv[i]) / denom;
    }
  }
  return est;
}

std::vector<double> global_error(const DiscreteSolution& u, const ExactSolution& exact) {
  if (!exact) throw std::invalid_argument("global_error: exact solution is required");
  const int d = u.dim();
  std::vector<double> err(u.values().size());
  std::vector<double> ref(static_cast<std::size_t>(d));
  for (int n = 0; n < u.n_nodes(); ++n) {
    exact(u.grid().node(n), ref);
    auto row = u.row(n);
    for (int j = 0; j < d; ++j) {
      err[static_cast<std::size_t>(n) * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] =
          ref[static_cast<std::size_t>(j)] - row[j];
    }
  }
  return err;
}

namespace {

// Shared core of both order_study overloads: `exact_on_common` holds the
// reference values on the coarsest grid's nodes, (N0+1) x d row-major.
std::vector<OrderEstimate> order_study_impl(std::span<const DiscreteSolution> solutions,
                                            const std::vector<double>& exact_on_common,
                                            double p0, double order_step, int levels,
                                            const NormSpec& norm) {
  const int n_seq = static_cast<int>(solutions.size());
  if (n_seq < 2) throw std::invalid_argument("order_study: need at least two solutions");
  const int d = solutions[0].dim();
  const int n0 = solutions[0].grid().n_intervals();
  for (int g = 0; g + 1 < n_seq; ++g) {
    if (solutions[static_cast<std::size_t>(g) + 1].grid().n_intervals() !=
        2 * solutions[static_cast<std::size_t>(g)].grid().n_intervals()) {
      throw std::invalid_argument("order_study: solution grids must double");
    }
  }
  for (const auto& s : solutions) {
    if (s.dim() != d) throw std::invalid_argument("order_study: dimensions differ");
    if (!(s.grid().map() == solutions[0].grid().map())) {
      throw std::invalid_argument("order_study: solutions use different maps");
    }
  }
  if (levels < 0 || levels > n_seq - 1) {
    throw std::invalid_argument("order_study: not enough grids for requested levels");
  }
  if (norm.kind == NormSpec::Kind::AtNode &&
      (norm.node < 0 || norm.node > n0 || norm.component < 0 || norm.component >= d)) {
    throw std::invalid_argument("order_study: AtNode location out of range");
  }

  const std::size_t stride = static_cast<std::size_t>(d);
  const std::size_t n_common = static_cast<std::size_t>(n0) + 1;

  // Values of every solution on the common nodes.
  std::vector<std::vector<double>> vals(static_cast<std::size_t>(n_seq));
  for (int g = 0; g < n_seq; ++g) {
    const auto& s = solutions[static_cast<std::size_t>(g)];
    const int step = s.grid().n_intervals() / n0;
    auto& v = vals[static_cast<std::size_t>(g)];
    v.resize(n_common * stride);
    for (int n = 0; n <= n0; ++n) {
      auto row = s.row(n * step);
      for (int j = 0; j < d; ++j) {
        v[static_cast<std::size_t>(n) * stride + static_cast<std::size_t>(j)] = row[j];
      }
    }
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<OrderEstimate> out;

  auto scalar_error = [&](const std::vector<double>& v, int component) {
    if (norm.kind == NormSpec::Kind::AtNode) {
      const auto i = static_cast<std::size_t>(norm.node) * stride +
                     static_cast<std::size_t>(norm.component);
      return std::abs(v[i] - exact_on_common[i]);
    }
    double m = 0.0;
    for (std::size_t n = 0; n < n_common; ++n) {
      const auto i = n * stride + static_cast<std::size_t>(component);
      m = std::max(m, std::abs(v[i] - exact_on_common[i]));
    }
    return m;
  };

  std::vector<std::vector<double>> level_vals = vals;
  for (int k = 0; k <= levels; ++k) {
    if (k > 0) {
      const double p = p0 + (k - 1) * order_step;
      std::vector<std::vector<double>> next(static_cast<std::size_t>(n_seq));
      for (int g = k; g < n_seq; ++g) {
        auto& dst = next[static_cast<std::size_t>(g)];
        const auto& cv = level_vals[static_cast<std::size_t>(g) - 1];
        const auto& fv = level_vals[static_cast<std::size_t>(g)];
        dst.resize(n_common * stride);
        for (std::size_t i = 0; i < dst.size(); ++i) {
          dst[i] = extrapolate_step(cv[i], fv[i], p);
        }
      }
      level_vals = std::move(next);
    }

    const int comp_lo = norm.kind == NormSpec::Kind::AtNode ? norm.component : 0;
    const int comp_hi = norm.kind == NormSpec::Kind::AtNode ? norm.component + 1 : d;
    for (int g = k; g + 1 < n_seq; ++g) {
      for (int comp = comp_lo; comp < comp_hi; ++comp) {
        OrderEstimate e;
        e.level = k;
        e.pair_index = g;
        e.component = comp;
        e.err_coarse = scalar_error(level_vals[static_cast<std::size_t>(g)], comp);
        e.err_fine = scalar_error(level_vals[static_cast<std::size_t>(g) + 1], comp);
        e.order = (e.err_coarse > 0.0 && e.err_fine > 0.0)
                      ? observed_order(e.err_coarse, e.err_fine)
                      : nan;
        out.push_back(e);
      }
    }
  }
  return out;
}

std::vector<double> sample_exact_on_common(const DiscreteSolution& coarsest,
                                           const ExactSolution& exact) {
  if (!exact) throw std::invalid_argument("order_study: exact solution is required");
  const int d = coarsest.dim();
  const int n0 = coarsest.grid().n_intervals();
  std::vector<double> vals(static_cast<std::size_t>(n0 + 1) * static_cast<std::size_t>(d));
  std::vector<double> ref(static_cast<std::size_t>(d));
  for (int n = 0; n <= n0; ++n) {
    exact(coarsest.grid().node(n), ref);
    for (int j = 0; j < d; ++j) {
      vals[static_cast<std::size_t>(n) * static_cast<std::size_t>(d) +
           static_cast<std::size_t>(j)] = ref[static_cast<std::size_t>(j)];
    }
  }
  return vals;
}

}  // namespace

std::vector<OrderEstimate> order_study(std::span<const DiscreteSolution> solutions,
                                       const ExactSolution& exact, double p0,
                                       double order_step, int levels,
                                       const NormSpec& norm) {
  if (solutions.empty()) throw std::invalid_argument("order_study: no solutions");
  const auto exact_vals = sample_exact_on_common(solutions[0], exact);
  return order_study_impl(solutions, exact_vals, p0, order_step, levels, norm);
}

std::vector<OrderEstimate> order_study(std::span<const DiscreteSolution> solutions,
                                       const DiscreteSolution& reference, double p0,
                                       double order_step, int levels,
                                       const NormSpec& norm) {
  if (solutions.empty()) throw std::invalid_argument("order_study: no solutions");
  const int n0 = solutions[0].grid().n_intervals();
  if (!(reference.grid().map() == solutions[0].grid().map()) ||
      reference.dim() != solutions[0].dim()) {
    throw std::invalid_argument("order_study: reference incompatible with study grids");
  }
  const int n_ref = reference.grid().n_intervals();
  if (n_ref % n0 != 0) {
    throw std::invalid_argument("order_study: reference grid is not nested");
  }
  const int step = n_ref / n0;
  const int d = reference.dim();
  std::vector<double> exact_vals(static_cast<std::size_t>(n0 + 1) *
                                 static_cast<std::size_t>(d));
  for (int n = 0; n <= n0; ++n) {
    auto row = reference.row(n * step);
    for (int j = 0; j < d; ++j) {
      exact_vals[static_cast<std::size_t>(n) * static_cast<std::size_t>(d) +
                 static_cast<std::size_t>(j)] = row[j];
    }
  }
  return order_study_impl(solutions, exact_vals, p0, order_step, levels, norm);
}

}  // namespace halfline
