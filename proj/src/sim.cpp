#include "ransim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ransim/errors.hpp"
#include "ransim/mno_agent.hpp"
#include "ransim/scm.hpp"

namespace ransim {

namespace {

constexpr int kMaxBestResponseRounds = 100;

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

}  // namespace

uint64_t derive_seed(uint64_t base_seed, int mno_count, int run_index) {
  uint64_t seed = mix64(base_seed);
  seed = mix64(seed ^ static_cast<uint64_t>(mno_count));
  seed = mix64(seed ^ static_cast<uint64_t>(run_index));
  return seed;
}

Topology scenario_topology(const ScenarioConfig& config) {
  if (config.topology_csv.has_value()) {
    return load_topology(*config.topology_csv);
  }
  return make_synthetic_topology(config.synthetic);
}

std::vector<MnoProfile> draw_mno_profiles(const ScenarioConfig& config,
                                          const Topology& topology,
                                          int mno_count,
                                          uint64_t seed) {
  long total_capacity = 0;
  double lat_min = 90.0, lat_max = -90.0, lon_min = 180.0, lon_max = -180.0;
  for (const auto& bs : topology.stations) {
    total_capacity += bs.num_rbs;
    lat_min = std::min(lat_min, bs.latitude);
    lat_max = std::max(lat_max, bs.latitude);
    lon_min = std::min(lon_min, bs.longitude);
    lon_max = std::max(lon_max, bs.longitude);
  }
  // MU positions fall in the deployment's bounding box, padded a little so a
  // single-BS topology still has an area to draw from.
  lat_min -= 0.005;
  lat_max += 0.005;
  lon_min -= 0.005;
  lon_max += 0.005;

  Rng rng(seed);
  std::vector<MnoProfile> profiles;
  profiles.reserve(static_cast<std::size_t>(mno_count));
  for (int i = 1; i <= mno_count; ++i) {
    MnoProfile profile;
    profile.mno_id = i;
    profile.class_id = (i - 1) % config.num_classes;
    profile.lambda_congestion = config.lambda_congestion;
    profile.max_price = config.mno_budget;

    if (config.demand_mode == DemandMode::Absolute) {
      profile.demand_rbs = rng.uniform_int(static_cast<int>(std::lround(config.demand_min)),
                                           static_cast<int>(std::lround(config.demand_max)));
    } else {
      const double fraction = rng.uniform_real(config.demand_min, config.demand_max) / 100.0;
      const double fair_share = static_cast<double>(total_capacity) / mno_count;
      profile.demand_rbs = std::max(1, static_cast<int>(std::floor(fraction * fair_share)));
    }

    for (int u = 0; u < config.mus_per_mno; ++u) {
      MobileUser mu;
      mu.mu_id = u + 1;
      mu.latitude = rng.uniform_real(lat_min, lat_max);
      mu.longitude = rng.uniform_real(lon_min, lon_max);
      mu.spectral_efficiency = rng.uniform_real(0.5, 6.0);
      profile.mus.push_back(mu);
    }
    profiles.push_back(std::move(profile));
  }
  return profiles;
}

RunResult run_single(const ScenarioConfig& config,
                     EnforcementStrategy strategy,
                     int mno_count,
                     int run_index) {
  const Topology topology = scenario_topology(config);
  const InterferenceGraph graph = build_interference_graph(topology, config.threshold_km);

  std::map<int, int> capacities;
  std::map<int, double> prices;
  long total_capacity = 0;
  for (const auto& bs : topology.stations) {
    capacities[bs.bs_id] = bs.num_rbs;
    prices[bs.bs_id] = bs.price_per_rb;
    total_capacity += bs.num_rbs;
  }
  if (config.demand_mode == DemandMode::Absolute &&
      std::lround(config.demand_max) * mno_count > total_capacity) {
    throw Error(ErrorCode::ConfigError,
                "demand_max infeasible for " + std::to_string(mno_count) + " MNOs");
  }

  const uint64_t seed = derive_seed(config.base_seed, mno_count, run_index);
  const std::vector<MnoProfile> profiles =
      draw_mno_profiles(config, topology, mno_count, seed);

  // Slice request generation: distributed best-response dynamics, then each
  // MNO formulates its request against the others' final load.
  const BestResponseDynamicsResult dynamics =
      run_best_response_dynamics(profiles, prices, capacities, kMaxBestResponseRounds);

  const DviSnapshot snapshot = snapshot_dvi(topology);
  ClassBuffers buffers;
  long timestamp = 0;
  for (const auto& profile : profiles) {
    std::map<int, int> others_load;
    for (const auto& [mno_id, allocation] : dynamics.allocations) {
      if (mno_id == profile.mno_id) continue;
      for (const auto& [bs_id, count] : allocation) others_load[bs_id] += count;
    }
    submit_request(buffers, generate_request(profile, snapshot, others_load, ++timestamp));
  }
  const std::vector<SliceRequest> requests = collect_requests(buffers);

  // Network slice generation: AC -> RSA -> SE.
  const AdmissionResult admission = admission_control(requests, capacities, prices);
  const SlicePolicy policy = allocate_slices(admission.admitted, capacities);

  std::vector<SliceRequest> by_timestamp = admission.admitted;
  std::sort(by_timestamp.begin(), by_timestamp.end(),
            [](const SliceRequest& a, const SliceRequest& b) {
              return a.timestamp < b.timestamp;
            });
  std::vector<int> request_order;
  request_order.reserve(by_timestamp.size());
  for (const auto& request : by_timestamp) request_order.push_back(request.mno_id);

  const RBGrid grid = enforce_slicing(policy, capacities, graph, strategy, request_order);

  // Admission/rejection notifications feed each MNO's resource pool.
  NotificationOutbox outbox;
  for (const auto& request : admission.admitted) {
    Admitted admitted;
    for (const auto& [bs_id, row] : policy.grants) {
      const auto it = row.find(request.mno_id);
      if (it != row.end()) {
        admitted.granted[bs_id] = it->second;
        admitted.price += it->second * prices.at(bs_id);
      }
    }
    notify(outbox, Notification{request.mno_id, admitted});
  }
  for (const auto& [request, reason] : admission.rejections) {
    notify(outbox, Notification{request.mno_id, Rejected{reason}});
  }

  std::map<int, ResourcePool> pools;
  for (const auto& profile : profiles) {
    auto notification = outbox.poll(profile.mno_id);
    if (!notification.has_value() || !notification->admitted()) continue;
    const auto& admitted = std::get<Admitted>(notification->decision);
    ResourcePool pool;
    pool.mno_id = profile.mno_id;
    pool.granted = admitted.granted;
    pool.price_paid = admitted.price;
    for (const auto& [bs_id, row] : grid.cells) {
      for (int rb = 0; rb < static_cast<int>(row.size()); ++rb) {
        if (row[static_cast<std::size_t>(rb)] == profile.mno_id) {
          pool.rb_indices[bs_id].push_back(rb);
        }
      }
    }
    pools.emplace(profile.mno_id, std::move(pool));
  }

  // MU scheduling and transmission: the short time-scale loop.
  double throughput_sum = 0.0;
  for (int tti = 0; tti < config.slicing_window_ttis; ++tti) {
    for (const auto& profile : profiles) {
      const auto pool_it = pools.find(profile.mno_id);
      if (pool_it == pools.end()) continue;
      const TtiSchedule schedule = schedule_tti(pool_it->second, profile.mus,
                                                config.directive, tti,
                                                config.rb_bandwidth_hz);
      throughput_sum += schedule.total_throughput_bps();
    }
  }

  const SharedRbStats stats = shared_rb_stats(grid, graph, config.metric_options);
  double congestion_sum = 0.0;
  for (const auto& bs : topology.stations) {
    congestion_sum += static_cast<double>(grid.allocated_count(bs.bs_id)) / bs.num_rbs;
  }

  RunResult result;
  result.strategy = strategy;
  result.mno_count = mno_count;
  result.run_index = run_index;
  result.seed = seed;
  result.full_pct = stats.full_pct;
  result.partial_pct = stats.partial_pct;
  result.mean_congestion = topology.size() > 0 ? congestion_sum / topology.size() : 0.0;
  result.admitted = static_cast<int>(admission.admitted.size());
  result.throughput_bps = throughput_sum / config.slicing_window_ttis;
  return result;
}

ExperimentResult run_sweep(const ScenarioConfig& config) {
  config.validate();

  std::vector<EnforcementStrategy> strategies;
  for (const auto strategy : config.strategies) {
    if (std::find(strategies.begin(), strategies.end(), strategy) == strategies.end()) {
      strategies.push_back(strategy);
    }
  }

  ExperimentResult result;
  for (const auto strategy : strategies) {
    for (const int mno_count : config.sweep()) {
      for (int run = 0; run < config.num_runs; ++run) {
        result.rows.push_back(run_single(config, strategy, mno_count, run));
      }
    }
  }

  std::sort(result.rows.begin(), result.rows.end(),
            [](const RunResult& a, const RunResult& b) {
              const std::string sa = to_string(a.strategy);
              const std::string sb = to_string(b.strategy);
              if (sa != sb) return sa < sb;
              if (a.mno_count != b.mno_count) return a.mno_count < b.mno_count;
              return a.run_index < b.run_index;
            });

  // One aggregate row per (strategy, mno_count) cell, same ordering.
  std::size_t i = 0;
  while (i < result.rows.size()) {
    std::size_t j = i;
    std::vector<double> partial;
    std::vector<double> full;
    while (j < result.rows.size() && result.rows[j].strategy == result.rows[i].strategy &&
           result.rows[j].mno_count == result.rows[i].mno_count) {
      partial.push_back(result.rows[j].partial_pct);
      full.push_back(result.rows[j].full_pct);
      ++j;
    }
    const AggregateStats partial_stats = aggregate_runs(partial, config.confidence);
    const AggregateStats full_stats = aggregate_runs(full, config.confidence);
    AggregateRow row;
    row.strategy = result.rows[i].strategy;
    row.mno_count = result.rows[i].mno_count;
    row.n = partial_stats.n_runs;
    row.mean_partial = partial_stats.mean;
    row.ci_partial = partial_stats.ci_halfwidth;
    row.mean_full = full_stats.mean;
    row.ci_full = full_stats.ci_halfwidth;
    result.aggregates.push_back(row);
    i = j;
  }
  return result;
}

void write_raw_csv(const std::vector<RunResult>& rows, std::ostream& out) {
  out << "strategy,mno_count,run,seed,full_pct,partial_pct,mean_congestion,admitted,throughput\n";
  for (const auto& row : rows) {
    out << to_string(row.strategy) << ',' << row.mno_count << ',' << row.run_index << ','
        << row.seed << ',' << format_double(row.full_pct) << ','
        << format_double(row.partial_pct) << ',' << format_double(row.mean_congestion) << ','
        << row.admitted << ',' << format_double(row.throughput_bps) << '\n';
  }
}

void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& out) {
  out << "strategy,mno_count,n,mean_partial,ci_partial,mean_full,ci_full\n";
  for (const auto& row : rows) {
    out << to_string(row.strategy) << ',' << row.mno_count << ',' << row.n << ','
        << format_double(row.mean_partial) << ',' << format_double(row.ci_partial) << ','
        << format_double(row.mean_full) << ',' << format_double(row.ci_full) << '\n';
  }
}

void write_grid_csv(const RBGrid& grid, std::ostream& out) {
  for (const auto& [bs_id, row] : grid.cells) {
    out << bs_id;
    for (const int cell : row) out << ',' << cell;
    out << '\n';
  }
}

ExperimentResult run_experiment(const ScenarioConfig& config, const std::string& out_dir) {
  ExperimentResult result = run_sweep(config);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::IoError, out_dir + ": " + ec.message());
  }

  const auto write_file = [&](const std::string& name, const auto& writer) {
    const std::filesystem::path path = std::filesystem::path(out_dir) / name;
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      throw Error(ErrorCode::IoError, "cannot open " + path.string());
    }
    writer(file);
    file.flush();
    if (!file) {
      throw Error(ErrorCode::IoError, "write failed: " + path.string());
    }
  };
  write_file("raw.csv", [&](std::ostream& out) { write_raw_csv(result.rows, out); });
  write_file("aggregate.csv",
             [&](std::ostream& out) { write_aggregate_csv(result.aggregates, out); });
  return result;
}

}  // namespace ransim
