#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ransim/errors.hpp"

namespace ransim {

struct LatLon {
  double latitude = 0.0;
  double longitude = 0.0;
};

struct BaseStation {
  int bs_id = 0;
  double latitude = 0.0;   // degrees, [-90, 90]
  double longitude = 0.0;  // degrees, [-180, 180]
  int num_rbs = 0;         // RBs per slicing window, >= 1
  double price_per_rb = 0.0;

  LatLon position() const { return {latitude, longitude}; }
};

// Ordered by bs_id ascending, never empty.
struct Topology {
  std::vector<BaseStation> stations;

  std::size_t size() const { return stations.size(); }
  const BaseStation& at(int bs_id) const;
  bool contains(int bs_id) const;
  std::vector<int> bs_ids() const;
};

// Symmetric boolean adjacency over the topology's BSs, zero diagonal.
// Row/column i corresponds to bs_ids[i].
class InterferenceGraph {
 public:
  InterferenceGraph() = default;
  InterferenceGraph(std::vector<int> bs_ids, std::vector<uint8_t> adjacency);

  int n() const { return static_cast<int>(bs_ids_.size()); }
  const std::vector<int>& bs_ids() const { return bs_ids_; }
  bool adjacent(int i, int j) const { return adjacency_[index(i, j)] != 0; }
  std::size_t edge_count() const;

  // Connected components over interference edges, as lists of node indices.
  std::vector<std::vector<int>> connected_components() const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * bs_ids_.size() + static_cast<std::size_t>(j);
  }

  std::vector<int> bs_ids_;
  std::vector<uint8_t> adjacency_;  // row-major n x n
};

// Great-circle distance on a spherical Earth of radius 6371.0 km.
double haversine_km(LatLon a, LatLon b);

// Topology CSV: header row, columns bs_id,lat,lon,num_rbs,price_per_rb
// (extra columns ignored). UTF-8, '.' decimal separator, LF or CRLF.
Topology load_topology(const std::string& path);
Topology parse_topology_csv(const std::string& text);

// adjacency[i][j] = true iff i != j and the stations are within threshold_km.
InterferenceGraph build_interference_graph(const Topology& topology, double threshold_km);

enum class Placement { Grid, UniformRandom };

struct SyntheticTopologyParams {
  int n_bs = 8;
  int num_rbs = 50;
  double price_per_rb = 1.0;
  Placement placement = Placement::UniformRandom;
  double lat_min = 42.33;  // downtown Boston bounding box
  double lat_max = 42.37;
  double lon_min = -71.09;
  double lon_max = -71.05;
  uint64_t seed = 0;
};

// Seeded stand-in for an unpublished deployment; bs_ids are 1..n_bs.
Topology make_synthetic_topology(const SyntheticTopologyParams& params);

}  // namespace ransim
