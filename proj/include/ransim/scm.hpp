#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "ransim/middleware.hpp"
#include "ransim/rb_grid.hpp"
#include "ransim/topology.hpp"

namespace ransim {

struct AdmissionResult {
  std::vector<SliceRequest> admitted;  // in input order
  std::vector<std::pair<SliceRequest, RejectReason>> rejections;
};

// AC: a request is Unfeasible if it demands more than a BS holds (or an
// unknown BS), OverBudget if the full-demand price exceeds its max_price.
// Requests are judged in the order produced by collect_requests.
AdmissionResult admission_control(const std::vector<SliceRequest>& requests,
                                  const std::map<int, int>& capacities,
                                  const std::map<int, double>& prices);

// RSA: grants demands exactly where a BS is not oversubscribed; otherwise
// proportional shares by largest remainder (ties to the lower mno_id).
SlicePolicy allocate_slices(const std::vector<SliceRequest>& admitted,
                            const std::map<int, int>& capacities);

// SE: lays out each BS's grants as contiguous blocks from index 0, unallocated
// cells at the tail. The MNO block order is per strategy:
//   Fcfs              - request_order (submission timestamps) at every BS
//   Greedy            - per-BS grant count descending, tie lower mno_id
//   CoordinationAware - total granted descending everywhere, tie lower mno_id,
//                       then adjacent-block swaps kept while the partial
//                       shared-RB count strictly improves (scan order: bs_id,
//                       then block position)
RBGrid enforce_slicing(const SlicePolicy& policy,
                       const std::map<int, int>& capacities,
                       const InterferenceGraph& graph,
                       EnforcementStrategy strategy,
                       const std::vector<int>& request_order);

struct OracleResult {
  RBGrid grid;
  int optimal_shared = 0;
};

// Exhaustive reference: enumerates every RB labeling consistent with the
// per-BS grant counts and returns a grid maximizing the partial shared-RB
// count (ties: lexicographically smallest grid). Guarded by the labeling
// budget; intended for <= 3 BSs, <= 3 MNOs, <= 8 RBs.
OracleResult oracle_enforce(const SlicePolicy& policy,
                            const std::map<int, int>& capacities,
                            const InterferenceGraph& graph,
                            uint64_t max_labelings = 1000000);

// Throws PolicyInvariantViolation unless counts are non-negative and each
// BS's grants fit its capacity.
void check_policy(const SlicePolicy& policy, const std::map<int, int>& capacities);

// Policy JSON: object of bs_id -> (object of mno_id -> RB count).
SlicePolicy policy_from_json(const std::string& text);
SlicePolicy policy_from_json_file(const std::string& path);

}  // namespace ransim
