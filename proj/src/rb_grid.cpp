#include "ransim/rb_grid.hpp"

#include <algorithm>

#include "ransim/errors.hpp"

namespace ransim {

int SlicePolicy::granted(int bs_id, int mno_id) const {
  const auto bs_it = grants.find(bs_id);
  if (bs_it == grants.end()) return 0;
  const auto mno_it = bs_it->second.find(mno_id);
  return mno_it == bs_it->second.end() ? 0 : mno_it->second;
}

int SlicePolicy::total_granted(int mno_id) const {
  int total = 0;
  for (const auto& [bs_id, row] : grants) {
    const auto it = row.find(mno_id);
    if (it != row.end()) total += it->second;
  }
  return total;
}

std::vector<int> SlicePolicy::mno_ids() const {
  std::vector<int> ids;
  for (const auto& [bs_id, row] : grants) {
    for (const auto& [mno_id, count] : row) {
      if (std::find(ids.begin(), ids.end(), mno_id) == ids.end()) ids.push_back(mno_id);
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

int RBGrid::owner(int bs_id, int rb_index) const {
  const auto it = cells.find(bs_id);
  if (it == cells.end()) return kUnallocated;
  if (rb_index < 0 || rb_index >= static_cast<int>(it->second.size())) return kUnallocated;
  return it->second[static_cast<std::size_t>(rb_index)];
}

int RBGrid::allocated_count(int bs_id) const {
  const auto it = cells.find(bs_id);
  if (it == cells.end()) return 0;
  return static_cast<int>(std::count_if(it->second.begin(), it->second.end(),
                                        [](int cell) { return cell != kUnallocated; }));
}

std::string to_string(EnforcementStrategy strategy) {
  switch (strategy) {
    case EnforcementStrategy::Fcfs: return "fcfs";
    case EnforcementStrategy::Greedy: return "greedy";
    case EnforcementStrategy::CoordinationAware: return "coordination_aware";
  }
  return "unknown";
}

EnforcementStrategy enforcement_strategy_from_string(const std::string& name) {
  if (name == "fcfs") return EnforcementStrategy::Fcfs;
  if (name == "greedy") return EnforcementStrategy::Greedy;
  if (name == "coordination_aware") return EnforcementStrategy::CoordinationAware;
  throw Error(ErrorCode::ConfigError, "unknown strategy '" + name + "'");
}

}  // namespace ransim
