#include "ransim/scm.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ransim/metrics.hpp"

namespace ransim {

void check_policy(const SlicePolicy& policy, const std::map<int, int>& capacities) {
  for (const auto& [bs_id, row] : policy.grants) {
    const auto cap_it = capacities.find(bs_id);
    if (cap_it == capacities.end()) {
      throw Error(ErrorCode::PolicyInvariantViolation,
                  "grants at unknown bs " + std::to_string(bs_id));
    }
    int total = 0;
    for (const auto& [mno_id, count] : row) {
      if (count < 0) {
        throw Error(ErrorCode::PolicyInvariantViolation,
                    "negative grant at bs " + std::to_string(bs_id));
      }
      total += count;
    }
    if (total > cap_it->second) {
      throw Error(ErrorCode::PolicyInvariantViolation,
                  "grants exceed capacity at bs " + std::to_string(bs_id));
    }
  }
}

AdmissionResult admission_control(const std::vector<SliceRequest>& requests,
                                  const std::map<int, int>& capacities,
                                  const std::map<int, double>& prices) {
  AdmissionResult result;
  for (const auto& request : requests) {
    bool unfeasible = false;
    for (const auto& [bs_id, demand] : request.demanded) {
      if (demand == 0) continue;
      const auto cap_it = capacities.find(bs_id);
      const int capacity = cap_it == capacities.end() ? 0 : cap_it->second;
      if (demand > capacity) {
        unfeasible = true;
        break;
      }
    }
    if (unfeasible) {
      result.rejections.emplace_back(request, RejectReason::Unfeasible);
      continue;
    }
    // Price at full demand: RSA never grants more than was asked for.
    double price = 0.0;
    for (const auto& [bs_id, demand] : request.demanded) {
      const auto price_it = prices.find(bs_id);
      if (price_it != prices.end()) price += demand * price_it->second;
    }
    if (price > request.max_price) {
      result.rejections.emplace_back(request, RejectReason::OverBudget);
      continue;
    }
    result.admitted.push_back(request);
  }
  return result;
}

SlicePolicy allocate_slices(const std::vector<SliceRequest>& admitted,
                            const std::map<int, int>& capacities) {
  // Sum demands per (bs, mno); map order keeps everything deterministic.
  std::map<int, std::map<int, long>> demands;
  for (const auto& request : admitted) {
    for (const auto& [bs_id, demand] : request.demanded) {
      if (demand > 0) demands[bs_id][request.mno_id] += demand;
    }
  }

  SlicePolicy policy;
  for (const auto& [bs_id, bs_demands] : demands) {
    const auto cap_it = capacities.find(bs_id);
    if (cap_it == capacities.end()) {
      throw Error(ErrorCode::ConfigError, "no capacity for bs " + std::to_string(bs_id));
    }
    const long capacity = cap_it->second;
    long total_demand = 0;
    for (const auto& [mno_id, demand] : bs_demands) total_demand += demand;

    auto& row = policy.grants[bs_id];
    if (total_demand <= capacity) {
      for (const auto& [mno_id, demand] : bs_demands) row[mno_id] = static_cast<int>(demand);
      continue;
    }

    // Largest remainder over the exact rational shares demand*C/total.
    long granted_total = 0;
    std::vector<std::pair<long, int>> remainders;  // (remainder, mno_id)
    for (const auto& [mno_id, demand] : bs_demands) {
      const long numerator = demand * capacity;
      row[mno_id] = static_cast<int>(numerator / total_demand);
      granted_total += numerator / total_demand;
      remainders.emplace_back(numerator % total_demand, mno_id);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    long leftover = capacity - granted_total;
    for (const auto& [remainder, mno_id] : remainders) {
      if (leftover <= 0) break;
      row[mno_id] += 1;
      --leftover;
    }
  }
  return policy;
}

namespace {

// mno blocks at one BS, in placement order; zero-count blocks are omitted.
struct Block {
  int mno_id = 0;
  int count = 0;
};

using BlockLayout = std::map<int, std::vector<Block>>;

RBGrid layout_grid(const BlockLayout& blocks, const std::map<int, int>& capacities) {
  RBGrid grid;
  for (const auto& [bs_id, capacity] : capacities) {
    auto& row = grid.cells[bs_id];
    row.assign(static_cast<std::size_t>(capacity), kUnallocated);
    const auto it = blocks.find(bs_id);
    if (it == blocks.end()) continue;
    std::size_t offset = 0;
    for (const auto& block : it->second) {
      for (int k = 0; k < block.count; ++k) row[offset + k] = block.mno_id;
      offset += static_cast<std::size_t>(block.count);
    }
  }
  return grid;
}

// Adjacent-block swap local search on the partial shared-RB count.
void improve_alignment(RBGrid& grid, BlockLayout& blocks, const InterferenceGraph& graph) {
  std::map<int, int> node_of;
  for (int i = 0; i < graph.n(); ++i) node_of[graph.bs_ids()[i]] = i;
  std::vector<std::vector<int>*> rows(graph.bs_ids().size(), nullptr);
  for (auto& [bs_id, row] : grid.cells) {
    const auto it = node_of.find(bs_id);
    if (it == node_of.end()) {
      throw Error(ErrorCode::GridGraphMismatch, "bs " + std::to_string(bs_id) + " not in graph");
    }
    rows[static_cast<std::size_t>(it->second)] = &row;
  }
  for (const auto* row : rows) {
    if (row == nullptr) {
      throw Error(ErrorCode::GridGraphMismatch, "graph BS missing from grid");
    }
  }

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < graph.n(); ++i) {
    for (int j = i + 1; j < graph.n(); ++j) {
      if (graph.adjacent(i, j)) edges.emplace_back(i, j);
    }
  }
  if (edges.empty()) return;

  const auto owner_at = [&](int node, int rb) {
    const auto& row = *rows[static_cast<std::size_t>(node)];
    return rb < static_cast<int>(row.size()) ? row[static_cast<std::size_t>(rb)]
                                             : kUnallocated;
  };
  const auto shared_at = [&](int rb) {
    for (const auto& [i, j] : edges) {
      const int a = owner_at(i, rb);
      if (a != kUnallocated && a == owner_at(j, rb)) return true;
    }
    return false;
  };
  const auto shared_in = [&](int begin, int end) {
    int count = 0;
    for (int rb = begin; rb < end; ++rb) {
      if (shared_at(rb)) ++count;
    }
    return count;
  };

  bool improved = true;
  while (improved) {
    improved = false;
    for (auto& [bs_id, bs_blocks] : blocks) {
      auto& row = grid.cells.at(bs_id);
      int offset = 0;
      for (std::size_t pos = 0; pos + 1 < bs_blocks.size(); ++pos) {
        const Block first = bs_blocks[pos];
        const Block second = bs_blocks[pos + 1];
        const int begin = offset;
        const int end = offset + first.count + second.count;

        const int before = shared_in(begin, end);
        for (int k = 0; k < second.count; ++k) row[begin + k] = second.mno_id;
        for (int k = 0; k < first.count; ++k) row[begin + second.count + k] = first.mno_id;
        const int after = shared_in(begin, end);

        if (after > before) {
          bs_blocks[pos] = second;
          bs_blocks[pos + 1] = first;
          improved = true;
        } else {
          for (int k = 0; k < first.count; ++k) row[begin + k] = first.mno_id;
          for (int k = 0; k < second.count; ++k) row[begin + first.count + k] = second.mno_id;
        }
        offset += bs_blocks[pos].count;
      }
    }
  }
}

}  // namespace

RBGrid enforce_slicing(const SlicePolicy& policy,
                       const std::map<int, int>& capacities,
                       const InterferenceGraph& graph,
                       EnforcementStrategy strategy,
                       const std::vector<int>& request_order) {
  check_policy(policy, capacities);
  for (const int mno_id : policy.mno_ids()) {
    if (std::find(request_order.begin(), request_order.end(), mno_id) == request_order.end()) {
      throw Error(ErrorCode::PolicyInvariantViolation,
                  "request_order misses mno " + std::to_string(mno_id));
    }
  }

  BlockLayout blocks;
  switch (strategy) {
    case EnforcementStrategy::Fcfs: {
      // Submission order at every BS.
      for (const auto& [bs_id, row] : policy.grants) {
        for (const int mno_id : request_order) {
          const auto it = row.find(mno_id);
          if (it != row.end() && it->second > 0) {
            blocks[bs_id].push_back({mno_id, it->second});
          }
        }
      }
      break;
    }
    case EnforcementStrategy::Greedy: {
      // Largest grant first, BS by BS.
      for (const auto& [bs_id, row] : policy.grants) {
        std::vector<Block> bs_blocks;
        for (const auto& [mno_id, count] : row) {
          if (count > 0) bs_blocks.push_back({mno_id, count});
        }
        std::sort(bs_blocks.begin(), bs_blocks.end(), [](const Block& a, const Block& b) {
          if (a.count != b.count) return a.count > b.count;
          return a.mno_id < b.mno_id;
        });
        blocks[bs_id] = std::move(bs_blocks);
      }
      break;
    }
    case EnforcementStrategy::CoordinationAware: {
      // One global order (total grant descending) so equal ranks align, then
      // local search on the partial shared-RB count.
      std::vector<int> order = policy.mno_ids();
      std::sort(order.begin(), order.end(), [&policy](int a, int b) {
        const int ta = policy.total_granted(a);
        const int tb = policy.total_granted(b);
        if (ta != tb) return ta > tb;
        return a < b;
      });
      for (const auto& [bs_id, row] : policy.grants) {
        for (const int mno_id : order) {
          const auto it = row.find(mno_id);
          if (it != row.end() && it->second > 0) {
            blocks[bs_id].push_back({mno_id, it->second});
          }
        }
      }
      break;
    }
  }

  RBGrid grid = layout_grid(blocks, capacities);
  if (strategy == EnforcementStrategy::CoordinationAware) {
    improve_alignment(grid, blocks, graph);
  }
  return grid;
}

namespace {

uint64_t capped_labeling_count(const std::vector<int>& row, uint64_t cap) {
  // Multinomial over the row's value multiplicities, saturating at cap + 1.
  std::map<int, int> multiplicity;
  for (const int v : row) multiplicity[v] += 1;
  unsigned __int128 count = 1;
  int remaining = static_cast<int>(row.size());
  for (const auto& [value, m] : multiplicity) {
    for (int i = 1; i <= m; ++i) {
      count = count * static_cast<unsigned>(remaining) / static_cast<unsigned>(i);
      --remaining;
      if (count > cap) return cap + 1;
    }
  }
  return static_cast<uint64_t>(count);
}

}  // namespace

OracleResult oracle_enforce(const SlicePolicy& policy,
                            const std::map<int, int>& capacities,
                            const InterferenceGraph& graph,
                            uint64_t max_labelings) {
  check_policy(policy, capacities);

  // Base rows sorted ascending: next_permutation then walks every distinct
  // labeling in lexicographic order, so the first optimum found is the
  // lexicographically smallest grid.
  std::vector<int> bs_order;
  std::vector<std::vector<int>> base_rows;
  unsigned __int128 total = 1;
  for (const auto& [bs_id, capacity] : capacities) {
    std::vector<int> row;
    row.reserve(static_cast<std::size_t>(capacity));
    const auto grants_it = policy.grants.find(bs_id);
    if (grants_it != policy.grants.end()) {
      for (const auto& [mno_id, count] : grants_it->second) {
        row.insert(row.end(), static_cast<std::size_t>(count), mno_id);
      }
    }
    row.resize(static_cast<std::size_t>(capacity), kUnallocated);
    std::sort(row.begin(), row.end());

    total *= capped_labeling_count(row, max_labelings);
    if (total > max_labelings) {
      throw Error(ErrorCode::InstanceTooLarge,
                  "more than " + std::to_string(max_labelings) + " labelings");
    }
    bs_order.push_back(bs_id);
    base_rows.push_back(std::move(row));
  }

  RBGrid candidate;
  for (std::size_t i = 0; i < bs_order.size(); ++i) candidate.cells[bs_order[i]] = base_rows[i];

  OracleResult best;
  best.optimal_shared = -1;

  // Nested lexicographic enumeration, earlier BS outermost.
  const std::size_t n = bs_order.size();
  std::vector<std::vector<int>*> rows;
  rows.reserve(n);
  for (const int bs_id : bs_order) rows.push_back(&candidate.cells[bs_id]);

  const auto evaluate = [&]() {
    const int shared = partial_shared_count(candidate, graph);
    if (shared > best.optimal_shared) {
      best.optimal_shared = shared;
      best.grid = candidate;
    }
  };

  const auto enumerate = [&](auto&& self, std::size_t level) -> void {
    if (level == n) {
      evaluate();
      return;
    }
    auto& row = *rows[level];
    std::sort(row.begin(), row.end());
    do {
      self(self, level + 1);
    } while (std::next_permutation(row.begin(), row.end()));
  };
  enumerate(enumerate, 0);

  return best;
}

SlicePolicy policy_from_json(const std::string& text) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!parsed.is_object()) {
    throw Error(ErrorCode::ParseError, "expected {bs_id: {mno_id: count}}");
  }
  SlicePolicy policy;
  try {
    for (const auto& [bs_key, row] : parsed.items()) {
      for (const auto& [mno_key, count] : row.items()) {
        policy.grants[std::stoi(bs_key)][std::stoi(mno_key)] = count.get<int>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad policy key: ") + e.what());
  }
  return policy;
}

SlicePolicy policy_from_json_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::FileNotFound, path);
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  return policy_from_json(buffer.str());
}

}  // namespace ransim
