#pragma once

#include <map>
#include <vector>

#include "ransim/rb_grid.hpp"
#include "ransim/topology.hpp"

namespace ransim {

enum class FullScope { Cluster, ConnectedComponent };

struct MetricOptions {
  FullScope full_scope = FullScope::Cluster;
  // Partial coordination counts an RB only when the two BSs sharing it are
  // joined by an interference edge; disable to count any BS pair.
  bool partial_requires_edge = true;
};

struct MnoSharedCounts {
  int partial = 0;
  int full = 0;
};

struct SharedRbStats {
  int common_rb_count = 0;
  int partial_count = 0;
  int full_count = 0;
  double partial_pct = 0.0;
  double full_pct = 0.0;
  std::map<int, MnoSharedCounts> per_mno;
};

// RB index r is fully coordinated when one MNO owns cell r at every BS of the
// scope, partially coordinated when some MNO owns cell r at two BSs joined by
// an interference edge. Percentages are over the common RB count (shorter
// BS arrays are padded with Unallocated).
SharedRbStats shared_rb_stats(const RBGrid& grid,
                              const InterferenceGraph& graph,
                              const MetricOptions& options = {});

// The CoordinationAware objective: number of partially coordinated RB indices.
int partial_shared_count(const RBGrid& grid, const InterferenceGraph& graph);

struct AggregateStats {
  int n_runs = 0;
  double mean = 0.0;
  double ci_halfwidth = 0.0;
  double confidence = 0.0;
};

// Student-t interval: halfwidth = t((1+confidence)/2, n-1) * s / sqrt(n);
// zero when n = 1 or all values are equal.
AggregateStats aggregate_runs(const std::vector<double>& values, double confidence);

}  // namespace ransim
