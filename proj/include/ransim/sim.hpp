#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ransim/config.hpp"
#include "ransim/metrics.hpp"
#include "ransim/rb_grid.hpp"
#include "ransim/rng.hpp"

namespace ransim {

struct RunResult {
  EnforcementStrategy strategy = EnforcementStrategy::Fcfs;
  int mno_count = 0;
  int run_index = 0;
  uint64_t seed = 0;
  double full_pct = 0.0;
  double partial_pct = 0.0;
  double mean_congestion = 0.0;
  int admitted = 0;
  double throughput_bps = 0.0;  // mean per-TTI aggregate over all MNOs
};

struct AggregateRow {
  EnforcementStrategy strategy = EnforcementStrategy::Fcfs;
  int mno_count = 0;
  int n = 0;
  double mean_partial = 0.0;
  double ci_partial = 0.0;
  double mean_full = 0.0;
  double ci_full = 0.0;
};

struct ExperimentResult {
  std::vector<RunResult> rows;        // sorted by (strategy name, mno_count, run)
  std::vector<AggregateRow> aggregates;
};

// Chains the splitmix64 finalizer over the run key so any row is
// reproducible in isolation: mix64(mix64(mix64(base) ^ mno_count) ^ run).
uint64_t derive_seed(uint64_t base_seed, int mno_count, int run_index);

// The scenario draw shared by all strategies of a (mno_count, run) cell.
std::vector<MnoProfile> draw_mno_profiles(const ScenarioConfig& config,
                                          const Topology& topology,
                                          int mno_count,
                                          uint64_t seed);

Topology scenario_topology(const ScenarioConfig& config);

// One full slicing window: request generation, admission/allocation/
// enforcement, notifications, then the TTI scheduling loop and metrics.
RunResult run_single(const ScenarioConfig& config,
                     EnforcementStrategy strategy,
                     int mno_count,
                     int run_index);

// Full (strategy x mno_count x run) sweep, rows and per-cell aggregates.
ExperimentResult run_sweep(const ScenarioConfig& config);

// run_sweep plus raw.csv / aggregate.csv under out_dir.
ExperimentResult run_experiment(const ScenarioConfig& config, const std::string& out_dir);

void write_raw_csv(const std::vector<RunResult>& rows, std::ostream& out);
void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& out);

// Grid CSV: one row per BS, first field bs_id, then one field per RB index
// holding the owning mno_id or -1.
void write_grid_csv(const RBGrid& grid, std::ostream& out);

}  // namespace ransim
