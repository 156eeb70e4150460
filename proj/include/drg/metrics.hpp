#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "drg/radio.hpp"
#include "drg/types.hpp"

namespace drg {

struct RunMetrics {
  std::uint64_t zor_snapshot_count = 0;
  std::uint64_t delivered_count = 0;           // unique (node, message) deliveries
  std::uint64_t delivered_snapshot_count = 0;  // restricted to snapshot members
  double pdr_pct = 0.0;                        // may exceed 100 with late entrants
  double pdr_snapshot_pct = 0.0;
  std::vector<double> delays;  // seconds, in delivery order
  std::optional<double> mean_delay;
  std::optional<double> p50_delay;
  std::optional<double> p95_delay;
  std::optional<double> snapshot_mean_delay;
  std::uint64_t tx_count = 0;
  std::uint64_t data_tx_count = 0;
  std::uint64_t persistence_tx_count = 0;
  std::uint64_t network_bytes_tx = 0;
  std::uint64_t app_bytes = 0;
  double overhead_ratio = 0.0;
  std::uint64_t collisions = 0;
  std::uint32_t max_delivery_hops = 0;
};

/// Raw records a run produces; finalize() is a pure function of this log.
struct MetricsLog {
  struct Snapshot {
    MessageId message;
    std::vector<NodeId> members;
    double created_at = 0.0;
    std::uint32_t payload_bytes = 0;
  };
  struct Delivery {
    NodeId node = kNoNode;
    MessageId message;
    double time = 0.0;
    std::uint32_t hops = 0;
  };
  struct Tx {
    MessageId message;
    NodeId sender = kNoNode;
    FrameKind kind = FrameKind::kData;
    std::uint32_t network_bytes = 0;
    double time = 0.0;
  };

  std::vector<Snapshot> snapshots;
  std::vector<Delivery> deliveries;
  std::vector<Tx> transmissions;
  std::uint64_t collisions = 0;
};

class MetricsCollector {
 public:
  /// Freezes the PDR denominator for a message. Throws std::logic_error on a
  /// second snapshot of the same message.
  void snapshot_zor(MessageId message, std::span<const NodeId> members, double created_at,
                    std::uint32_t payload_bytes);

  /// Throws std::logic_error for a repeated (node, message) delivery or a
  /// message without a snapshot.
  void record_delivery(NodeId node, MessageId message, double now, std::uint32_t hops);

  void record_tx(const Frame& frame, double now);

  void set_collisions(std::uint64_t n) { log_.collisions = n; }

  bool delivered(NodeId node, MessageId message) const {
    return seen_.contains({message, node});
  }

  const MetricsLog& log() const { return log_; }

  RunMetrics finalize() const { return finalize(log_); }
  static RunMetrics finalize(const MetricsLog& log);

 private:
  MetricsLog log_;
  std::map<MessageId, std::size_t> snapshot_index_;
  std::set<std::pair<MessageId, NodeId>> seen_;
};

}  // namespace drg
