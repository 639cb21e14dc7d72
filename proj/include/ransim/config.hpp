#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ransim/metrics.hpp"
#include "ransim/mno_agent.hpp"
#include "ransim/rb_grid.hpp"
#include "ransim/topology.hpp"

namespace ransim {

enum class DemandMode {
  // demand_rbs ~ U[demand_min, demand_max] RBs, independent of MNO count.
  Absolute,
  // demand_rbs ~ U[demand_min, demand_max] percent of the per-MNO fair share
  // (total capacity / mno_count); keeps the grid near a constant fill level
  // across the MNO-count sweep.
  FairShareFraction,
};

struct ScenarioConfig {
  // Topology source: CSV path wins when set, synthetic otherwise.
  std::optional<std::string> topology_csv;
  SyntheticTopologyParams synthetic;

  double threshold_km = 1.0;
  int num_mnos = 2;
  std::vector<int> mno_sweep;  // empty -> {num_mnos}

  DemandMode demand_mode = DemandMode::Absolute;
  double demand_min = 10;
  double demand_max = 50;
  double lambda_congestion = 1.0;
  double mno_budget = 1e18;
  int num_classes = 1;
  int mus_per_mno = 8;

  int num_runs = 1;
  uint64_t base_seed = 1;
  std::vector<EnforcementStrategy> strategies = {
      EnforcementStrategy::Fcfs, EnforcementStrategy::Greedy,
      EnforcementStrategy::CoordinationAware};

  int slicing_window_ttis = 100;
  Directive directive;
  double rb_bandwidth_hz = kDefaultRbBandwidthHz;

  double confidence = 0.95;
  MetricOptions metric_options;

  // Effective sweep list and validation (throws ConfigError).
  std::vector<int> sweep() const;
  void validate() const;
};

ScenarioConfig load_scenario_config(const std::string& path);
ScenarioConfig scenario_config_from_toml(const std::string& text);

}  // namespace ransim
