#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ransim/rb_grid.hpp"
#include "ransim/topology.hpp"

namespace ransim {

// One row of the DVI view. Carries no MNO identities.
struct DviRecord {
  int bs_id = 0;
  double latitude = 0.0;
  double longitude = 0.0;
  double price_per_rb = 0.0;
  int num_rbs = 0;
  int rbs_allocated = 0;
  double congestion = 0.0;  // rbs_allocated / num_rbs
};

struct DviSnapshot {
  std::vector<DviRecord> records;

  const DviRecord& at(int bs_id) const;
  bool contains(int bs_id) const;
};

struct SliceRequest {
  int mno_id = 0;
  int class_id = 0;
  long timestamp = 0;            // submission counter, unique per slicing window
  std::map<int, int> demanded;   // bs_id -> requested RB count
  double max_price = 0.0;

  int total_demanded() const;
};

enum class RejectReason { Unfeasible, OverBudget };

std::string to_string(RejectReason reason);

struct Admitted {
  std::map<int, int> granted;  // bs_id -> RB count
  double price = 0.0;
};

struct Rejected {
  RejectReason reason = RejectReason::Unfeasible;
};

struct Notification {
  int mno_id = 0;
  std::variant<Admitted, Rejected> decision;

  bool admitted() const { return std::holds_alternative<Admitted>(decision); }
};

// FIFO buffer per request class, created on first use.
class ClassBuffers {
 public:
  long submit(const SliceRequest& request);  // returns receipt id (= timestamp)
  std::vector<SliceRequest> collect();       // drains all buffers
  std::size_t buffered_count(int class_id) const;
  std::size_t total_buffered() const;

 private:
  std::map<int, std::deque<SliceRequest>> buffers_;
};

// Per-MNO notification queues; each notification is retrievable exactly once.
class NotificationOutbox {
 public:
  bool push(const Notification& notification);
  std::optional<Notification> poll(int mno_id);

 private:
  std::map<int, std::deque<Notification>> queues_;
};

// Congestion from `grid` when given, zero everywhere otherwise.
DviSnapshot snapshot_dvi(const Topology& topology, const RBGrid* grid = nullptr);

// Validates the request invariants and appends it to its class buffer.
long submit_request(ClassBuffers& buffers, const SliceRequest& request);

// All buffered requests ordered by (class_id asc, timestamp asc); buffers emptied.
std::vector<SliceRequest> collect_requests(ClassBuffers& buffers);

bool notify(NotificationOutbox& outbox, const Notification& notification);

// Request batch file: JSON array of SliceRequest records.
std::vector<SliceRequest> requests_from_json_file(const std::string& path);
std::vector<SliceRequest> requests_from_json(const std::string& text);

}  // namespace ransim
