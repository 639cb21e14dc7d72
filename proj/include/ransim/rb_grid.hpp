#pragma once

#include <map>
#include <string>
#include <vector>

namespace ransim {

// Owner value for a grid cell that is not assigned to any MNO.
inline constexpr int kUnallocated = -1;

// Per-(BS, MNO) RB grant counts produced by the RSA procedure.
struct SlicePolicy {
  // grants[bs_id][mno_id] = RB count
  std::map<int, std::map<int, int>> grants;

  int granted(int bs_id, int mno_id) const;
  int total_granted(int mno_id) const;
  std::vector<int> mno_ids() const;
};

// Per-BS array mapping RB index -> owning mno_id (or kUnallocated).
struct RBGrid {
  std::map<int, std::vector<int>> cells;  // keyed by bs_id

  int owner(int bs_id, int rb_index) const;
  int allocated_count(int bs_id) const;
};

enum class EnforcementStrategy { Fcfs, Greedy, CoordinationAware };

std::string to_string(EnforcementStrategy strategy);
EnforcementStrategy enforcement_strategy_from_string(const std::string& name);

}  // namespace ransim
