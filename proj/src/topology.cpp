#include "ransim/topology.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ransim/rng.hpp"

namespace ransim {

const BaseStation& Topology::at(int bs_id) const {
  for (const auto& bs : stations) {
    if (bs.bs_id == bs_id) return bs;
  }
  throw Error(ErrorCode::ParseError, "unknown bs_id " + std::to_string(bs_id));
}

bool Topology::contains(int bs_id) const {
  return std::any_of(stations.begin(), stations.end(),
                     [bs_id](const BaseStation& bs) { return bs.bs_id == bs_id; });
}

std::vector<int> Topology::bs_ids() const {
  std::vector<int> ids;
  ids.reserve(stations.size());
  for (const auto& bs : stations) ids.push_back(bs.bs_id);
  return ids;
}

InterferenceGraph::InterferenceGraph(std::vector<int> bs_ids, std::vector<uint8_t> adjacency)
    : bs_ids_(std::move(bs_ids)), adjacency_(std::move(adjacency)) {}

std::size_t InterferenceGraph::edge_count() const {
  std::size_t count = 0;
  for (int i = 0; i < n(); ++i) {
    for (int j = i + 1; j < n(); ++j) {
      if (adjacent(i, j)) ++count;
    }
  }
  return count;
}

std::vector<std::vector<int>> InterferenceGraph::connected_components() const {
  std::vector<int> component(bs_ids_.size(), -1);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < n(); ++start) {
    if (component[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<int> nodes;
    std::vector<int> stack = {start};
    component[start] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      nodes.push_back(v);
      for (int w = 0; w < n(); ++w) {
        if (adjacent(v, w) && component[w] < 0) {
          component[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(nodes.begin(), nodes.end());
    out.push_back(std::move(nodes));
  }
  return out;
}

namespace {

constexpr double kEarthRadiusKm = 6371.0;
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(const std::string& raw, double& out) {
  const std::string s = trim(raw);
  if (s.empty()) return false;
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto result = std::from_chars(begin, end, out);
  return result.ec == std::errc() && result.ptr == end;
}

bool parse_int(const std::string& raw, int& out) {
  const std::string s = trim(raw);
  if (s.empty()) return false;
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto result = std::from_chars(begin, end, out);
  return result.ec == std::errc() && result.ptr == end;
}

[[noreturn]] void row_error(int line_number, const std::string& what) {
  throw Error(ErrorCode::ParseError,
              "line " + std::to_string(line_number) + ": " + what);
}

}  // namespace

double haversine_km(LatLon a, LatLon b) {
  const double lat1 = a.latitude * kDegToRad;
  const double lat2 = b.latitude * kDegToRad;
  const double dlat = (b.latitude - a.latitude) * kDegToRad;
  const double dlon = (b.longitude - a.longitude) * kDegToRad;
  const double s1 = std::sin(dlat / 2.0);
  const double s2 = std::sin(dlon / 2.0);
  const double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

Topology parse_topology_csv(const std::string& text) {
  Topology topology;
  std::set<int> seen_ids;
  std::stringstream stream(text);
  std::string line;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_number == 1) continue;  // header
    if (trim(line).empty()) continue;

    const auto fields = split_csv_row(line);
    if (fields.size() < 5) row_error(line_number, "expected 5 columns");

    BaseStation bs;
    if (!parse_int(fields[0], bs.bs_id)) row_error(line_number, "bad bs_id");
    if (!parse_double(fields[1], bs.latitude)) row_error(line_number, "bad lat");
    if (!parse_double(fields[2], bs.longitude)) row_error(line_number, "bad lon");
    if (!parse_int(fields[3], bs.num_rbs)) row_error(line_number, "bad num_rbs");
    if (!parse_double(fields[4], bs.price_per_rb)) row_error(line_number, "bad price_per_rb");

    if (bs.latitude < -90.0 || bs.latitude > 90.0) row_error(line_number, "lat out of range");
    if (bs.longitude < -180.0 || bs.longitude > 180.0) row_error(line_number, "lon out of range");
    if (bs.num_rbs < 1) row_error(line_number, "num_rbs must be >= 1");
    if (bs.price_per_rb < 0.0) row_error(line_number, "negative price_per_rb");

    if (!seen_ids.insert(bs.bs_id).second) {
      throw Error(ErrorCode::DuplicateBsId, "bs_id " + std::to_string(bs.bs_id));
    }
    topology.stations.push_back(bs);
  }
  if (topology.stations.empty()) {
    throw Error(ErrorCode::EmptyTopology, "no data rows");
  }
  std::sort(topology.stations.begin(), topology.stations.end(),
            [](const BaseStation& a, const BaseStation& b) { return a.bs_id < b.bs_id; });
  return topology;
}

Topology load_topology(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::FileNotFound, path);
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_topology_csv(buffer.str());
}

InterferenceGraph build_interference_graph(const Topology& topology, double threshold_km) {
  if (!(threshold_km > 0.0)) {
    throw Error(ErrorCode::InvalidThreshold, "threshold_km must be > 0");
  }
  const int n = static_cast<int>(topology.size());
  std::vector<uint8_t> adjacency(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = haversine_km(topology.stations[i].position(),
                                    topology.stations[j].position());
      if (d <= threshold_km) {
        adjacency[static_cast<std::size_t>(i) * n + j] = 1;
        adjacency[static_cast<std::size_t>(j) * n + i] = 1;
      }
    }
  }
  return InterferenceGraph(topology.bs_ids(), std::move(adjacency));
}

Topology make_synthetic_topology(const SyntheticTopologyParams& params) {
  if (params.n_bs < 1) {
    throw Error(ErrorCode::EmptyTopology, "n_bs must be >= 1");
  }
  if (params.num_rbs < 1) {
    throw Error(ErrorCode::ConfigError, "num_rbs must be >= 1");
  }
  Topology topology;
  Rng rng(mix64(params.seed));
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(params.n_bs))));
  const int rows = (params.n_bs + cols - 1) / cols;
  for (int i = 0; i < params.n_bs; ++i) {
    BaseStation bs;
    bs.bs_id = i + 1;
    bs.num_rbs = params.num_rbs;
    bs.price_per_rb = params.price_per_rb;
    if (params.placement == Placement::Grid) {
      const int r = i / cols;
      const int c = i % cols;
      const double fr = rows > 1 ? static_cast<double>(r) / (rows - 1) : 0.5;
      const double fc = cols > 1 ? static_cast<double>(c) / (cols - 1) : 0.5;
      bs.latitude = params.lat_min + fr * (params.lat_max - params.lat_min);
      bs.longitude = params.lon_min + fc * (params.lon_max - params.lon_min);
    } else {
      bs.latitude = rng.uniform_real(params.lat_min, params.lat_max);
      bs.longitude = rng.uniform_real(params.lon_min, params.lon_max);
    }
    topology.stations.push_back(bs);
  }
  return topology;
}

}  // namespace ransim
