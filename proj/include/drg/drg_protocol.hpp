#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "drg/protocol.hpp"

namespace drg {

/// Resolved DRG parameters (all times in seconds).
struct DrgParams {
  double max_bo_d = 0.0;       // maximum distance backoff
  double s_d = 1.0;            // distance sensitivity
  std::uint32_t max_retx = 3;  // short-interval transmissions before long backoff
  double long_bo_d = 0.0;
  double max_long_bo_d = 0.0;  // r_tx / v_max
  double cr_threshold = 0.6;
  double theta_min = 0.0;  // radians, solved from cr_threshold
  double epsilon = 1.0;    // persistence sensitivity
  double cw_min = 0.0;     // persistence jitter window
  double cw_max = 0.1;
  double jitter_cw = 16 * 20e-6;  // forwarding collision-avoidance window
  double ttl = 15.0;
  double v_max = 33.33;
  bool persistence = true;
  // A message origin has no upstream sender to pair with, so any relay of
  // its own message counts as the implicit acknowledgement.
  bool origin_single_ack = true;
};

/// Lower bound on max_bo_d: twice the airtime of the largest frame.
double min_max_bo_d(double max_frame_airtime);

/// Returns human-readable violations; empty when the parameters are consistent.
std::vector<std::string> check(const DrgParams& p, double max_frame_airtime);

/// Distance backoff: max_bo_d * s_d * (r_tx - d) / r_tx, with d clamped to [0, r_tx].
double compute_backoff(double d, double r_tx, const DrgParams& p);

struct SenderRecord {
  Point position;
  double rx_time = 0.0;
};

struct PerMessageState {
  std::map<NodeId, SenderRecord> received_from;  // latest position per sender
  bool received = false;
  bool delivered = false;
  bool acked = false;
  std::uint32_t hop = 0;
  std::uint32_t tx_count = 0;      // data transmissions (forward + retransmissions)
  std::uint32_t forward_count = 0;  // transmissions triggered by distance backoff
  std::uint32_t persistence_count = 0;
  TimerHandle pending_tx;
  TimerHandle pending_retx;
  TimerHandle persistence_timer;
  double persistence_window = 0.0;
  double last_heard_at = -std::numeric_limits<double>::infinity();
  double acked_at = std::numeric_limits<double>::infinity();
};

/// True iff two distinct recorded senders subtend an angle >= theta_min at
/// `self`. Pairs containing a sender located at `self` are skipped.
bool ack_condition(const PerMessageState& state, Point self, double theta_min);

/// Distributed Robust Geocast. Receivers in the ZOF contend with a distance
/// backoff so the farthest relays first; relays keep retransmitting (a short
/// burst, then at a long interval) until they hear the message from senders
/// wide enough apart; nodes in the ZOR rebroadcast when the message has gone
/// quiet around them for a persistence period.
class DrgProtocol final : public GeocastProtocol {
 public:
  DrgProtocol(ProtocolContext ctx, const DrgParams& params);

  void on_receive(NodeId node, const Frame& frame) override;
  std::string_view name() const override { return "drg"; }

  const DrgParams& params() const { return params_; }

  /// nullptr when the node has no state for the message.
  const PerMessageState* state(NodeId node, MessageId id) const;

 protected:
  void start(NodeId origin, const GeocastMessage& msg) override;

 private:
  enum class Trigger { kBackoff, kRetransmit };

  PerMessageState& state_mut(NodeId node, MessageId id);
  void fire(NodeId node, MessageId id, Trigger trigger);
  void on_persistence_expiry(NodeId node, MessageId id);
  void schedule_persistence(NodeId node, const GeocastMessage& msg, PerMessageState& st);
  void deliver(NodeId node, const GeocastMessage& msg, PerMessageState& st);
  void acknowledge(PerMessageState& st);

  DrgParams params_;
  std::vector<std::map<MessageId, PerMessageState>> states_;
};

}  // namespace drg
