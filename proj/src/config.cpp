#include "ransim/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ransim/errors.hpp"
#include "ransim/toml_lite.hpp"

namespace ransim {

std::vector<int> ScenarioConfig::sweep() const {
  if (mno_sweep.empty()) return {num_mnos};
  return mno_sweep;
}

void ScenarioConfig::validate() const {
  if (num_runs < 1) {
    throw Error(ErrorCode::ConfigError, "num_runs must be >= 1");
  }
  if (num_mnos < 1) {
    throw Error(ErrorCode::ConfigError, "num_mnos must be >= 1");
  }
  for (const int count : sweep()) {
    if (count < 1) {
      throw Error(ErrorCode::ConfigError, "mno_sweep values must be >= 1");
    }
  }
  if (strategies.empty()) {
    throw Error(ErrorCode::ConfigError, "at least one strategy required");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw Error(ErrorCode::ConfigError, "confidence must be in (0, 1)");
  }
  if (demand_min <= 0.0 || demand_max < demand_min) {
    throw Error(ErrorCode::ConfigError, "need 0 < demand_min <= demand_max");
  }
  if (demand_mode == DemandMode::FairShareFraction && demand_max > 100.0) {
    throw Error(ErrorCode::ConfigError,
                "fair-share demand fractions are percentages, max 100");
  }
  if (slicing_window_ttis < 1) {
    throw Error(ErrorCode::ConfigError, "slicing_window_ttis must be >= 1");
  }
  if (num_classes < 1) {
    throw Error(ErrorCode::ConfigError, "num_classes must be >= 1");
  }
  if (mus_per_mno < 0) {
    throw Error(ErrorCode::ConfigError, "mus_per_mno must be >= 0");
  }
  if (!(threshold_km > 0.0)) {
    throw Error(ErrorCode::ConfigError, "threshold_km must be > 0");
  }
  if (!(rb_bandwidth_hz > 0.0)) {
    throw Error(ErrorCode::ConfigError, "rb_bandwidth_hz must be > 0");
  }
  if (directive.min_rate_bps < 0.0) {
    throw Error(ErrorCode::ConfigError, "min_rate must be >= 0");
  }
  if (mno_budget < 0.0) {
    throw Error(ErrorCode::ConfigError, "mno_budget must be >= 0");
  }
}

namespace {

DirectiveKind directive_kind_from_string(const std::string& name) {
  if (name == "round_robin") return DirectiveKind::RoundRobin;
  if (name == "max_rate") return DirectiveKind::MaxRate;
  if (name == "min_rate_guarantee") return DirectiveKind::MinRateGuarantee;
  throw Error(ErrorCode::ConfigError, "unknown directive '" + name + "'");
}

DemandMode demand_mode_from_string(const std::string& name) {
  if (name == "absolute") return DemandMode::Absolute;
  if (name == "fair_share_fraction") return DemandMode::FairShareFraction;
  throw Error(ErrorCode::ConfigError, "unknown demand_mode '" + name + "'");
}

FullScope full_scope_from_string(const std::string& name) {
  if (name == "cluster") return FullScope::Cluster;
  if (name == "connected_component") return FullScope::ConnectedComponent;
  throw Error(ErrorCode::ConfigError, "unknown full_scope '" + name + "'");
}

Placement placement_from_string(const std::string& name) {
  if (name == "grid") return Placement::Grid;
  if (name == "uniform") return Placement::UniformRandom;
  throw Error(ErrorCode::ConfigError, "unknown placement '" + name + "'");
}

class Reader {
 public:
  explicit Reader(const toml::Table& table) : table_(table) {}

  bool has(const std::string& key) { return table_.count(key) > 0; }

  const toml::Value* get(const std::string& key) {
    const auto it = table_.find(key);
    if (it == table_.end()) return nullptr;
    used_.insert(key);
    return &it->second;
  }

  int read_int(const std::string& key, int fallback) {
    const auto* value = get(key);
    if (value == nullptr) return fallback;
    if (!value->is_int()) throw Error(ErrorCode::ConfigError, key + " must be an integer");
    return static_cast<int>(value->as_int());
  }

  uint64_t read_u64(const std::string& key, uint64_t fallback) {
    const auto* value = get(key);
    if (value == nullptr) return fallback;
    if (!value->is_int()) throw Error(ErrorCode::ConfigError, key + " must be an integer");
    return static_cast<uint64_t>(value->as_int());
  }

  double read_float(const std::string& key, double fallback) {
    const auto* value = get(key);
    if (value == nullptr) return fallback;
    if (!value->is_int() && !value->is_float()) {
      throw Error(ErrorCode::ConfigError, key + " must be a number");
    }
    return value->as_float();
  }

  bool read_bool(const std::string& key, bool fallback) {
    const auto* value = get(key);
    if (value == nullptr) return fallback;
    if (!value->is_bool()) throw Error(ErrorCode::ConfigError, key + " must be a boolean");
    return value->as_bool();
  }

  std::string read_string(const std::string& key, const std::string& fallback) {
    const auto* value = get(key);
    if (value == nullptr) return fallback;
    if (!value->is_string()) throw Error(ErrorCode::ConfigError, key + " must be a string");
    return value->as_string();
  }

  void check_all_used() const {
    for (const auto& [key, value] : table_) {
      if (used_.count(key) == 0) {
        throw Error(ErrorCode::ConfigError, "unknown config key '" + key + "'");
      }
    }
  }

 private:
  const toml::Table& table_;
  std::set<std::string> used_;
};

}  // namespace

ScenarioConfig scenario_config_from_toml(const std::string& text) {
  const toml::Table table = toml::parse(text);
  Reader reader(table);
  ScenarioConfig config;

  if (reader.has("topology_csv")) {
    config.topology_csv = reader.read_string("topology_csv", "");
  }
  config.synthetic.n_bs = reader.read_int("synthetic.n_bs", config.synthetic.n_bs);
  config.synthetic.num_rbs = reader.read_int("synthetic.num_rbs", config.synthetic.num_rbs);
  config.synthetic.price_per_rb =
      reader.read_float("synthetic.price_per_rb", config.synthetic.price_per_rb);
  config.synthetic.placement = placement_from_string(
      reader.read_string("synthetic.placement", "uniform"));
  config.synthetic.lat_min = reader.read_float("synthetic.lat_min", config.synthetic.lat_min);
  config.synthetic.lat_max = reader.read_float("synthetic.lat_max", config.synthetic.lat_max);
  config.synthetic.lon_min = reader.read_float("synthetic.lon_min", config.synthetic.lon_min);
  config.synthetic.lon_max = reader.read_float("synthetic.lon_max", config.synthetic.lon_max);

  config.threshold_km = reader.read_float("threshold_km", config.threshold_km);
  config.num_mnos = reader.read_int("num_mnos", config.num_mnos);
  if (const auto* value = reader.get("mno_sweep")) {
    config.mno_sweep.clear();
    for (const int64_t v : value->as_int_array()) config.mno_sweep.push_back(static_cast<int>(v));
  }

  config.demand_mode = demand_mode_from_string(reader.read_string("demand_mode", "absolute"));
  config.demand_min = reader.read_float("demand_min", config.demand_min);
  config.demand_max = reader.read_float("demand_max", config.demand_max);
  config.lambda_congestion = reader.read_float("lambda_congestion", config.lambda_congestion);
  config.mno_budget = reader.read_float("mno_budget", config.mno_budget);
  config.num_classes = reader.read_int("num_classes", config.num_classes);
  config.mus_per_mno = reader.read_int("mus_per_mno", config.mus_per_mno);

  config.num_runs = reader.read_int("num_runs", config.num_runs);
  config.base_seed = reader.read_u64("base_seed", config.base_seed);
  // The synthetic cluster stays fixed across runs; its seed follows base_seed
  // unless pinned explicitly.
  config.synthetic.seed = reader.read_u64("synthetic.seed", config.base_seed);

  if (const auto* value = reader.get("strategies")) {
    config.strategies.clear();
    for (const auto& name : value->as_string_array()) {
      config.strategies.push_back(enforcement_strategy_from_string(name));
    }
  }

  config.slicing_window_ttis = reader.read_int("slicing_window_ttis", config.slicing_window_ttis);
  config.directive.kind = directive_kind_from_string(reader.read_string("directive", "round_robin"));
  config.directive.min_rate_bps = reader.read_float("min_rate", 0.0);
  config.rb_bandwidth_hz = reader.read_float("rb_bandwidth_hz", config.rb_bandwidth_hz);

  config.confidence = reader.read_float("confidence", config.confidence);
  config.metric_options.full_scope =
      full_scope_from_string(reader.read_string("full_scope", "cluster"));
  config.metric_options.partial_requires_edge =
      reader.read_bool("partial_requires_edge", true);

  reader.check_all_used();
  config.validate();
  return config;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::FileNotFound, path);
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  return scenario_config_from_toml(buffer.str());
}

}  // namespace ransim
