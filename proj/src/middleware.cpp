#include "ransim/middleware.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ransim/errors.hpp"

namespace ransim {

const DviRecord& DviSnapshot::at(int bs_id) const {
  for (const auto& record : records) {
    if (record.bs_id == bs_id) return record;
  }
  throw Error(ErrorCode::ParseError, "snapshot has no bs_id " + std::to_string(bs_id));
}

bool DviSnapshot::contains(int bs_id) const {
  return std::any_of(records.begin(), records.end(),
                     [bs_id](const DviRecord& r) { return r.bs_id == bs_id; });
}

int SliceRequest::total_demanded() const {
  int total = 0;
  for (const auto& [bs_id, count] : demanded) total += count;
  return total;
}

std::string to_string(RejectReason reason) {
  return reason == RejectReason::Unfeasible ? "Unfeasible" : "OverBudget";
}

namespace {

void validate_request(const SliceRequest& request) {
  if (request.demanded.empty()) {
    throw Error(ErrorCode::InvalidRequest, "demanded map is empty");
  }
  bool any_positive = false;
  for (const auto& [bs_id, count] : request.demanded) {
    if (count < 0) {
      throw Error(ErrorCode::InvalidRequest,
                  "negative demand at bs " + std::to_string(bs_id));
    }
    if (count > 0) any_positive = true;
  }
  if (!any_positive) {
    throw Error(ErrorCode::InvalidRequest, "all-zero demanded map");
  }
  if (request.max_price < 0.0) {
    throw Error(ErrorCode::InvalidRequest, "negative max_price");
  }
}

}  // namespace

long ClassBuffers::submit(const SliceRequest& request) {
  validate_request(request);
  for (const auto& [class_id, queue] : buffers_) {
    for (const auto& buffered : queue) {
      if (buffered.timestamp == request.timestamp) {
        throw Error(ErrorCode::InvalidRequest,
                    "duplicate timestamp " + std::to_string(request.timestamp));
      }
    }
  }
  buffers_[request.class_id].push_back(request);
  return request.timestamp;
}

std::vector<SliceRequest> ClassBuffers::collect() {
  std::vector<SliceRequest> out;
  for (auto& [class_id, queue] : buffers_) {
    // buffers_ iterates class ids ascending; each queue is FIFO.
    std::vector<SliceRequest> batch(queue.begin(), queue.end());
    std::stable_sort(batch.begin(), batch.end(),
                     [](const SliceRequest& a, const SliceRequest& b) {
                       return a.timestamp < b.timestamp;
                     });
    out.insert(out.end(), batch.begin(), batch.end());
    queue.clear();
  }
  return out;
}

std::size_t ClassBuffers::buffered_count(int class_id) const {
  const auto it = buffers_.find(class_id);
  return it == buffers_.end() ? 0 : it->second.size();
}

std::size_t ClassBuffers::total_buffered() const {
  std::size_t total = 0;
  for (const auto& [class_id, queue] : buffers_) total += queue.size();
  return total;
}

bool NotificationOutbox::push(const Notification& notification) {
  queues_[notification.mno_id].push_back(notification);
  return true;
}

std::optional<Notification> NotificationOutbox::poll(int mno_id) {
  const auto it = queues_.find(mno_id);
  if (it == queues_.end() || it->second.empty()) return std::nullopt;
  Notification front = it->second.front();
  it->second.pop_front();
  return front;
}

DviSnapshot snapshot_dvi(const Topology& topology, const RBGrid* grid) {
  DviSnapshot snapshot;
  snapshot.records.reserve(topology.size());
  for (const auto& bs : topology.stations) {
    DviRecord record;
    record.bs_id = bs.bs_id;
    record.latitude = bs.latitude;
    record.longitude = bs.longitude;
    record.price_per_rb = bs.price_per_rb;
    record.num_rbs = bs.num_rbs;
    if (grid != nullptr) {
      record.rbs_allocated = grid->allocated_count(bs.bs_id);
      record.congestion =
          bs.num_rbs > 0 ? static_cast<double>(record.rbs_allocated) / bs.num_rbs : 0.0;
    }
    snapshot.records.push_back(record);
  }
  return snapshot;
}

long submit_request(ClassBuffers& buffers, const SliceRequest& request) {
  return buffers.submit(request);
}

std::vector<SliceRequest> collect_requests(ClassBuffers& buffers) {
  return buffers.collect();
}

bool notify(NotificationOutbox& outbox, const Notification& notification) {
  return outbox.push(notification);
}

std::vector<SliceRequest> requests_from_json(const std::string& text) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!parsed.is_array()) {
    throw Error(ErrorCode::ParseError, "expected a JSON array of requests");
  }
  std::vector<SliceRequest> requests;
  for (const auto& item : parsed) {
    SliceRequest request;
    try {
      request.mno_id = item.at("mno_id").get<int>();
      request.class_id = item.value("class_id", 0);
      request.timestamp = item.at("timestamp").get<long>();
      request.max_price = item.value("max_price", 0.0);
      for (const auto& [key, value] : item.at("demanded").items()) {
        request.demanded[std::stoi(key)] = value.get<int>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, e.what());
    } catch (const std::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("bad demanded key: ") + e.what());
    }
    requests.push_back(std::move(request));
  }
  return requests;
}

std::vector<SliceRequest> requests_from_json_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::FileNotFound, path);
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  return requests_from_json(buffer.str());
}

}  // namespace ransim
