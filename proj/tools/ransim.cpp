#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ransim/config.hpp"
#include "ransim/metrics.hpp"
#include "ransim/mno_agent.hpp"
#include "ransim/scm.hpp"
#include "ransim/sim.hpp"
#include "ransim/topology.hpp"

namespace {

struct EnforceOptions {
  std::string topology_path;
  std::string policy_path;
  std::string requests_path;
  std::string strategy = "coordination_aware";
  std::string order_csv;
  std::string out_path;
  double threshold_km = 1.0;
};

std::vector<int> parse_order(const std::string& csv) {
  std::vector<int> order;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    order.push_back(std::stoi(item));
  }
  return order;
}

void emit_grid(const ransim::RBGrid& grid, const std::string& out_path) {
  if (out_path.empty()) {
    ransim::write_grid_csv(grid, std::cout);
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    throw ransim::Error(ransim::ErrorCode::IoError, "cannot open " + out_path);
  }
  ransim::write_grid_csv(grid, file);
}

std::map<int, int> capacities_of(const ransim::Topology& topology) {
  std::map<int, int> capacities;
  for (const auto& bs : topology.stations) capacities[bs.bs_id] = bs.num_rbs;
  return capacities;
}

int run_enforce(const EnforceOptions& options) {
  const ransim::Topology topology = ransim::load_topology(options.topology_path);
  const auto graph = ransim::build_interference_graph(topology, options.threshold_km);
  const auto capacities = capacities_of(topology);
  const auto strategy = ransim::enforcement_strategy_from_string(options.strategy);

  ransim::SlicePolicy policy;
  std::vector<int> order;
  if (!options.requests_path.empty()) {
    std::map<int, double> prices;
    for (const auto& bs : topology.stations) prices[bs.bs_id] = bs.price_per_rb;

    ransim::ClassBuffers buffers;
    for (const auto& request : ransim::requests_from_json_file(options.requests_path)) {
      ransim::submit_request(buffers, request);
    }
    const auto requests = ransim::collect_requests(buffers);
    const auto admission = ransim::admission_control(requests, capacities, prices);
    for (const auto& [request, reason] : admission.rejections) {
      std::cerr << "rejected mno " << request.mno_id << ": " << ransim::to_string(reason)
                << "\n";
    }
    policy = ransim::allocate_slices(admission.admitted, capacities);
    std::vector<ransim::SliceRequest> admitted = admission.admitted;
    std::sort(admitted.begin(), admitted.end(),
              [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    for (const auto& request : admitted) order.push_back(request.mno_id);
  } else {
    policy = ransim::policy_from_json_file(options.policy_path);
    order = options.order_csv.empty() ? policy.mno_ids() : parse_order(options.order_csv);
  }

  const ransim::RBGrid grid =
      ransim::enforce_slicing(policy, capacities, graph, strategy, order);
  const auto stats = ransim::shared_rb_stats(grid, graph);
  std::cerr << "partial_shared=" << stats.partial_count << " (" << stats.partial_pct
            << "%), full_shared=" << stats.full_count << " (" << stats.full_pct << "%)\n";
  emit_grid(grid, options.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RAN slicing simulator: slice requests, admission/allocation/"
               "enforcement over an RB grid, and multi-BS coordination metrics"};
  app.require_subcommand(1);

  // simulate
  std::string config_path;
  std::string out_dir = "results";
  std::optional<uint64_t> seed_override;
  std::optional<int> runs_override;
  auto* simulate = app.add_subcommand("simulate", "run the configured experiment sweep");
  simulate->add_option("--config", config_path, "scenario TOML")->required();
  simulate->add_option("--out", out_dir, "output directory");
  simulate->add_option("--seed", seed_override, "override base_seed");
  simulate->add_option("--runs", runs_override, "override num_runs");

  // enforce
  EnforceOptions enforce_options;
  auto* enforce = app.add_subcommand("enforce", "enforce a slicing policy over the RB grid");
  enforce->add_option("--topology", enforce_options.topology_path, "topology CSV")->required();
  auto* policy_opt = enforce->add_option("--policy", enforce_options.policy_path,
                                         "policy JSON (bs_id -> mno_id -> count)");
  auto* requests_opt = enforce->add_option("--requests", enforce_options.requests_path,
                                           "request batch JSON (runs AC and RSA first)");
  policy_opt->excludes(requests_opt);
  enforce->add_option("--strategy", enforce_options.strategy,
                      "fcfs | greedy | coordination_aware");
  enforce->add_option("--order", enforce_options.order_csv,
                      "submission order as comma-separated mno_ids");
  enforce->add_option("--threshold-km", enforce_options.threshold_km, "interference range");
  enforce->add_option("--out", enforce_options.out_path, "grid CSV path (default stdout)");

  // oracle
  EnforceOptions oracle_options;
  uint64_t max_labelings = 1000000;
  auto* oracle = app.add_subcommand("oracle", "exhaustive optimal enforcement (small instances)");
  oracle->add_option("--topology", oracle_options.topology_path, "topology CSV")->required();
  oracle->add_option("--policy", oracle_options.policy_path, "policy JSON")->required();
  oracle->add_option("--threshold-km", oracle_options.threshold_km, "interference range");
  oracle->add_option("--max-labelings", max_labelings, "enumeration budget");
  oracle->add_option("--out", oracle_options.out_path, "grid CSV path (default stdout)");

  // topology validate
  std::string topology_path;
  double validate_threshold = 1.0;
  auto* topology_cmd = app.add_subcommand("topology", "topology utilities");
  topology_cmd->require_subcommand(1);
  auto* validate = topology_cmd->add_subcommand("validate", "parse and check a topology CSV");
  validate->add_option("csv", topology_path, "topology CSV")->required();
  validate->add_option("--threshold-km", validate_threshold, "interference range");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      ransim::ScenarioConfig config = ransim::load_scenario_config(config_path);
      if (seed_override.has_value()) {
        config.base_seed = *seed_override;
        if (!config.topology_csv.has_value()) config.synthetic.seed = *seed_override;
      }
      if (runs_override.has_value()) config.num_runs = *runs_override;
      config.validate();
      const auto result = ransim::run_experiment(config, out_dir);
      std::cout << result.rows.size() << " runs -> " << out_dir << "/raw.csv, "
                << result.aggregates.size() << " cells -> " << out_dir
                << "/aggregate.csv\n";
      return 0;
    }
    if (enforce->parsed()) {
      if (enforce_options.policy_path.empty() && enforce_options.requests_path.empty()) {
        std::cerr << "enforce needs --policy or --requests\n";
        return 1;
      }
      return run_enforce(enforce_options);
    }
    if (oracle->parsed()) {
      const ransim::Topology topology = ransim::load_topology(oracle_options.topology_path);
      const auto graph =
          ransim::build_interference_graph(topology, oracle_options.threshold_km);
      const auto policy = ransim::policy_from_json_file(oracle_options.policy_path);
      const auto result =
          ransim::oracle_enforce(policy, capacities_of(topology), graph, max_labelings);
      std::cerr << "optimal_shared=" << result.optimal_shared << "\n";
      emit_grid(result.grid, oracle_options.out_path);
      return 0;
    }
    if (validate->parsed()) {
      const ransim::Topology topology = ransim::load_topology(topology_path);
      const auto graph = ransim::build_interference_graph(topology, validate_threshold);
      std::cout << "ok: " << topology.size() << " base stations, " << graph.edge_count()
                << " interference edges at " << validate_threshold << " km\n";
      return 0;
    }
  } catch (const ransim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
