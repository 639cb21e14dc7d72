#include "ransim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <boost/math/distributions/students_t.hpp>

#include "ransim/errors.hpp"

namespace ransim {

namespace {

struct GridView {
  std::vector<const std::vector<int>*> rows;  // aligned with graph node indices
  int common_rb_count = 0;

  int owner(int node, int rb) const {
    const auto& row = *rows[static_cast<std::size_t>(node)];
    return rb < static_cast<int>(row.size()) ? row[static_cast<std::size_t>(rb)]
                                             : kUnallocated;
  }
};

GridView align(const RBGrid& grid, const InterferenceGraph& graph) {
  std::set<int> grid_ids;
  for (const auto& [bs_id, row] : grid.cells) grid_ids.insert(bs_id);
  const std::set<int> graph_ids(graph.bs_ids().begin(), graph.bs_ids().end());
  if (grid_ids != graph_ids) {
    throw Error(ErrorCode::GridGraphMismatch,
                "grid covers " + std::to_string(grid_ids.size()) + " BSs, graph " +
                    std::to_string(graph_ids.size()));
  }
  GridView view;
  view.rows.reserve(graph.bs_ids().size());
  for (const int bs_id : graph.bs_ids()) {
    const auto& row = grid.cells.at(bs_id);
    view.rows.push_back(&row);
    view.common_rb_count = std::max(view.common_rb_count, static_cast<int>(row.size()));
  }
  return view;
}

}  // namespace

SharedRbStats shared_rb_stats(const RBGrid& grid,
                              const InterferenceGraph& graph,
                              const MetricOptions& options) {
  const GridView view = align(grid, graph);
  const int n = graph.n();

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!options.partial_requires_edge || graph.adjacent(i, j)) pairs.emplace_back(i, j);
    }
  }

  std::vector<std::vector<int>> components;
  if (options.full_scope == FullScope::ConnectedComponent) {
    for (auto& component : graph.connected_components()) {
      if (component.size() >= 2) components.push_back(std::move(component));
    }
  }

  SharedRbStats stats;
  stats.common_rb_count = view.common_rb_count;
  for (int rb = 0; rb < view.common_rb_count; ++rb) {
    std::set<int> partial_owners;
    for (const auto& [i, j] : pairs) {
      const int a = view.owner(i, rb);
      if (a != kUnallocated && a == view.owner(j, rb)) partial_owners.insert(a);
    }
    if (!partial_owners.empty()) {
      stats.partial_count += 1;
      for (const int mno : partial_owners) stats.per_mno[mno].partial += 1;
    }

    std::set<int> full_owners;
    if (options.full_scope == FullScope::Cluster) {
      const int first = view.owner(0, rb);
      if (first != kUnallocated) {
        bool everywhere = true;
        for (int i = 1; i < n; ++i) {
          if (view.owner(i, rb) != first) {
            everywhere = false;
            break;
          }
        }
        if (everywhere) full_owners.insert(first);
      }
    } else {
      for (const auto& component : components) {
        const int first = view.owner(component.front(), rb);
        if (first == kUnallocated) continue;
        bool everywhere = true;
        for (const int node : component) {
          if (view.owner(node, rb) != first) {
            everywhere = false;
            break;
          }
        }
        if (everywhere) full_owners.insert(first);
      }
    }
    if (!full_owners.empty()) {
      stats.full_count += 1;
      for (const int mno : full_owners) stats.per_mno[mno].full += 1;
    }
  }

  if (view.common_rb_count > 0) {
    stats.partial_pct = 100.0 * stats.partial_count / view.common_rb_count;
    stats.full_pct = 100.0 * stats.full_count / view.common_rb_count;
  }
  return stats;
}

int partial_shared_count(const RBGrid& grid, const InterferenceGraph& graph) {
  const GridView view = align(grid, graph);
  const int n = graph.n();
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (graph.adjacent(i, j)) edges.emplace_back(i, j);
    }
  }
  int count = 0;
  for (int rb = 0; rb < view.common_rb_count; ++rb) {
    for (const auto& [i, j] : edges) {
      const int a = view.owner(i, rb);
      if (a != kUnallocated && a == view.owner(j, rb)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

AggregateStats aggregate_runs(const std::vector<double>& values, double confidence) {
  if (values.empty()) {
    throw Error(ErrorCode::EmptyInput, "no values to aggregate");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw Error(ErrorCode::ConfigError, "confidence must be in (0, 1)");
  }
  AggregateStats stats;
  stats.n_runs = static_cast<int>(values.size());
  stats.confidence = confidence;

  double sum = 0.0;
  for (const double v : values) sum += v;
  stats.mean = sum / stats.n_runs;

  if (stats.n_runs == 1) return stats;
  double ss = 0.0;
  for (const double v : values) ss += (v - stats.mean) * (v - stats.mean);
  if (ss <= 0.0) return stats;

  const double stddev = std::sqrt(ss / (stats.n_runs - 1));
  const boost::math::students_t_distribution<double> dist(stats.n_runs - 1);
  const double t = boost::math::quantile(dist, (1.0 + confidence) / 2.0);
  stats.ci_halfwidth = t * stddev / std::sqrt(static_cast<double>(stats.n_runs));
  return stats;
}

}  // namespace ransim
