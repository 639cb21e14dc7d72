#include "ransim/mno_agent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ransim/errors.hpp"

namespace ransim {

std::size_t ResourcePool::total_rb_indices() const {
  std::size_t total = 0;
  for (const auto& [bs_id, indices] : rb_indices) total += indices.size();
  return total;
}

double TtiSchedule::total_throughput_bps() const {
  double total = 0.0;
  for (const auto& [mu_id, rate] : throughput_bps) total += rate;
  return total;
}

std::map<int, int> best_response(const MnoProfile& profile,
                                 const std::map<int, double>& prices,
                                 const std::map<int, int>& capacities,
                                 const std::map<int, int>& others_load) {
  long free_total = 0;
  for (const auto& [bs_id, capacity] : capacities) {
    if (prices.find(bs_id) == prices.end()) {
      throw Error(ErrorCode::ConfigError, "no price for bs " + std::to_string(bs_id));
    }
    const auto load_it = others_load.find(bs_id);
    const int load = load_it == others_load.end() ? 0 : load_it->second;
    if (load > capacity) {
      throw Error(ErrorCode::InsufficientCapacity,
                  "load exceeds capacity at bs " + std::to_string(bs_id));
    }
    free_total += capacity - load;
  }
  if (free_total < profile.demand_rbs) {
    throw Error(ErrorCode::InsufficientCapacity,
                std::to_string(profile.demand_rbs) + " RBs demanded, " +
                    std::to_string(free_total) + " free");
  }

  std::map<int, int> allocation;
  for (const auto& [bs_id, capacity] : capacities) allocation[bs_id] = 0;

  // One RB unit at a time to the cheapest marginal BS; exact for the
  // separable convex slice cost. Map order gives the lower-bs_id tie-break.
  for (int unit = 0; unit < profile.demand_rbs; ++unit) {
    double best_cost = std::numeric_limits<double>::infinity();
    int best_bs = -1;
    for (const auto& [bs_id, capacity] : capacities) {
      const auto load_it = others_load.find(bs_id);
      const int load = load_it == others_load.end() ? 0 : load_it->second;
      const int x = allocation[bs_id];
      if (load + x >= capacity) continue;
      const double c = static_cast<double>(capacity);
      const double marginal =
          prices.at(bs_id) +
          profile.lambda_congestion * (2.0 * (load + x) + 1.0) / (c * c);
      if (marginal < best_cost) {
        best_cost = marginal;
        best_bs = bs_id;
      }
    }
    allocation[best_bs] += 1;
  }
  return allocation;
}

std::map<int, int> others_load_from_snapshot(const DviSnapshot& snapshot) {
  std::map<int, int> load;
  for (const auto& record : snapshot.records) {
    load[record.bs_id] = static_cast<int>(std::lround(record.congestion * record.num_rbs));
  }
  return load;
}

SliceRequest generate_request(const MnoProfile& profile,
                              const DviSnapshot& snapshot,
                              const std::map<int, int>& others_load_estimate,
                              long timestamp) {
  std::map<int, double> prices;
  std::map<int, int> capacities;
  for (const auto& record : snapshot.records) {
    prices[record.bs_id] = record.price_per_rb;
    capacities[record.bs_id] = record.num_rbs;
  }
  for (const auto& [bs_id, load] : others_load_estimate) {
    if (!snapshot.contains(bs_id)) {
      throw Error(ErrorCode::InvalidRequest,
                  "load estimate for bs " + std::to_string(bs_id) + " not in snapshot");
    }
  }
  SliceRequest request;
  request.mno_id = profile.mno_id;
  request.class_id = profile.class_id;
  request.timestamp = timestamp;
  request.max_price = profile.max_price;
  request.demanded = best_response(profile, prices, capacities, others_load_estimate);
  return request;
}

BestResponseDynamicsResult run_best_response_dynamics(
    const std::vector<MnoProfile>& profiles,
    const std::map<int, double>& prices,
    const std::map<int, int>& capacities,
    int max_rounds) {
  long total_capacity = 0;
  for (const auto& [bs_id, capacity] : capacities) total_capacity += capacity;
  long total_demand = 0;
  for (const auto& profile : profiles) total_demand += profile.demand_rbs;
  if (total_demand > total_capacity) {
    throw Error(ErrorCode::InsufficientCapacity,
                "aggregate demand " + std::to_string(total_demand) + " over " +
                    std::to_string(total_capacity) + " RBs");
  }

  std::vector<const MnoProfile*> order;
  order.reserve(profiles.size());
  for (const auto& profile : profiles) order.push_back(&profile);
  std::sort(order.begin(), order.end(),
            [](const MnoProfile* a, const MnoProfile* b) { return a->mno_id < b->mno_id; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i]->mno_id == order[i - 1]->mno_id) {
      throw Error(ErrorCode::InvalidRequest,
                  "duplicate mno_id " + std::to_string(order[i]->mno_id));
    }
  }

  BestResponseDynamicsResult result;
  for (const auto* profile : order) {
    for (const auto& [bs_id, capacity] : capacities) {
      result.allocations[profile->mno_id][bs_id] = 0;
    }
  }

  for (int round = 1; round <= max_rounds; ++round) {
    bool changed = false;
    for (const auto* profile : order) {
      std::map<int, int> others_load;
      for (const auto& [bs_id, capacity] : capacities) others_load[bs_id] = 0;
      for (const auto& [mno_id, allocation] : result.allocations) {
        if (mno_id == profile->mno_id) continue;
        for (const auto& [bs_id, count] : allocation) others_load[bs_id] += count;
      }
      auto response = best_response(*profile, prices, capacities, others_load);
      if (response != result.allocations[profile->mno_id]) {
        result.allocations[profile->mno_id] = std::move(response);
        changed = true;
      }
    }
    if (!changed) {
      result.converged = true;
      break;
    }
    result.rounds = round;
  }
  return result;
}

namespace {

std::vector<MobileUser> sorted_by_mu_id(const std::vector<MobileUser>& mus) {
  std::vector<MobileUser> sorted = mus;
  std::sort(sorted.begin(), sorted.end(),
            [](const MobileUser& a, const MobileUser& b) { return a.mu_id < b.mu_id; });
  return sorted;
}

std::size_t max_rate_index(const std::vector<MobileUser>& sorted) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].spectral_efficiency > sorted[best].spectral_efficiency) best = i;
  }
  return best;
}

}  // namespace

TtiSchedule schedule_tti(const ResourcePool& pool,
                         const std::vector<MobileUser>& mus,
                         const Directive& directive,
                         int tti_index,
                         double rb_bandwidth_hz) {
  TtiSchedule schedule;
  schedule.tti_index = tti_index;
  for (const auto& mu : mus) schedule.throughput_bps[mu.mu_id] = 0.0;
  if (mus.empty() || pool.total_rb_indices() == 0) return schedule;

  const auto sorted = sorted_by_mu_id(mus);
  const std::size_t n = sorted.size();
  std::vector<int> rb_counts(n, 0);

  const auto assign = [&](int bs_id, int rb_index, std::size_t mu_pos) {
    schedule.assignments.push_back({bs_id, rb_index, sorted[mu_pos].mu_id});
    rb_counts[mu_pos] += 1;
  };

  switch (directive.kind) {
    case DirectiveKind::RoundRobin: {
      for (const auto& [bs_id, indices] : pool.rb_indices) {
        std::vector<int> rbs = indices;
        std::sort(rbs.begin(), rbs.end());
        for (std::size_t k = 0; k < rbs.size(); ++k) {
          assign(bs_id, rbs[k], (static_cast<std::size_t>(tti_index) + k) % n);
        }
      }
      break;
    }
    case DirectiveKind::MaxRate: {
      const std::size_t best = max_rate_index(sorted);
      for (const auto& [bs_id, indices] : pool.rb_indices) {
        std::vector<int> rbs = indices;
        std::sort(rbs.begin(), rbs.end());
        for (const int rb : rbs) assign(bs_id, rb, best);
      }
      break;
    }
    case DirectiveKind::MinRateGuarantee: {
      const auto rate_of = [&](std::size_t i) {
        return rb_counts[i] * sorted[i].spectral_efficiency * rb_bandwidth_hz;
      };
      const auto all_met = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
          if (rate_of(i) < directive.min_rate_bps) return false;
        }
        return true;
      };
      // Cycle over MUs still below the floor, then hand the rest to MaxRate.
      std::size_t cursor = static_cast<std::size_t>(tti_index) % n;
      const std::size_t best = max_rate_index(sorted);
      for (const auto& [bs_id, indices] : pool.rb_indices) {
        std::vector<int> rbs = indices;
        std::sort(rbs.begin(), rbs.end());
        for (const int rb : rbs) {
          if (all_met()) {
            assign(bs_id, rb, best);
            continue;
          }
          while (rate_of(cursor) >= directive.min_rate_bps) cursor = (cursor + 1) % n;
          assign(bs_id, rb, cursor);
          cursor = (cursor + 1) % n;
        }
      }
      break;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    schedule.throughput_bps[sorted[i].mu_id] =
        rb_counts[i] * sorted[i].spectral_efficiency * rb_bandwidth_hz;
  }
  return schedule;
}

}  // namespace ransim
