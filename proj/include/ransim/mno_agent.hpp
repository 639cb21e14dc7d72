#pragma once

#include <map>
#include <vector>

#include "ransim/middleware.hpp"

namespace ransim {

struct MobileUser {
  int mu_id = 0;
  double latitude = 0.0;
  double longitude = 0.0;
  double spectral_efficiency = 1.0;  // bits/s/Hz per RB, fixed per run
};

struct MnoProfile {
  int mno_id = 0;
  int class_id = 0;
  int demand_rbs = 1;             // total RBs wanted per slicing window
  double lambda_congestion = 0.0; // congestion weight in the slice cost
  double max_price = 0.0;
  std::vector<MobileUser> mus;
};

struct ResourcePool {
  int mno_id = 0;
  std::map<int, int> granted;                // bs_id -> RB count
  std::map<int, std::vector<int>> rb_indices;  // bs_id -> owned RB indices
  double price_paid = 0.0;

  std::size_t total_rb_indices() const;
};

enum class DirectiveKind { RoundRobin, MaxRate, MinRateGuarantee };

struct Directive {
  DirectiveKind kind = DirectiveKind::RoundRobin;
  double min_rate_bps = 0.0;  // per-MU rate floor, MinRateGuarantee only
};

struct TtiAssignment {
  int bs_id = 0;
  int rb_index = 0;
  int mu_id = 0;
};

struct TtiSchedule {
  int tti_index = 0;
  std::vector<TtiAssignment> assignments;
  std::map<int, double> throughput_bps;  // mu_id -> rate this TTI

  double total_throughput_bps() const;
};

// LTE resource block width, used for throughput bookkeeping.
inline constexpr double kDefaultRbBandwidthHz = 180e3;

// Splits profile.demand_rbs across BSs one unit at a time, always picking the
// BS with the lowest marginal cost
//   p_b + lambda * (2*(others_load_b + x_b) + 1) / C_b^2
// (ties to the lower bs_id). This greedy is exact for the separable convex
// slice cost  sum_b [ p_b*x_b + lambda*((others_load_b + x_b)/C_b)^2 ].
std::map<int, int> best_response(const MnoProfile& profile,
                                 const std::map<int, double>& prices,
                                 const std::map<int, int>& capacities,
                                 const std::map<int, int>& others_load);

// SRG step: derives prices/capacities from the DVI snapshot and wraps the
// best response into a submittable request. `timestamp` is assigned by the
// caller and must exceed the MNO's previous one.
SliceRequest generate_request(const MnoProfile& profile,
                              const DviSnapshot& snapshot,
                              const std::map<int, int>& others_load_estimate,
                              long timestamp);

// others_load estimate taken from the snapshot's cumulative congestion only.
std::map<int, int> others_load_from_snapshot(const DviSnapshot& snapshot);

struct BestResponseDynamicsResult {
  std::map<int, std::map<int, int>> allocations;  // mno_id -> (bs_id -> count)
  bool converged = false;
  int rounds = 0;
};

// Round-robin over MNOs in mno_id order until a fixed point (no MNO changes
// its allocation) or max_rounds passes.
BestResponseDynamicsResult run_best_response_dynamics(
    const std::vector<MnoProfile>& profiles,
    const std::map<int, double>& prices,
    const std::map<int, int>& capacities,
    int max_rounds);

// ATC step: turns a high-level directive into a per-TTI RB assignment over
// the MNO's pool. Empty pool or empty MU list yields an empty schedule.
TtiSchedule schedule_tti(const ResourcePool& pool,
                         const std::vector<MobileUser>& mus,
                         const Directive& directive,
                         int tti_index,
                         double rb_bandwidth_hz = kDefaultRbBandwidthHz);

}  // namespace ransim
