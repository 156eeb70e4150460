#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <vector>

#include "drg/engine.hpp"
#include "drg/geom.hpp"
#include "drg/mobility.hpp"
#include "drg/random.hpp"
#include "drg/types.hpp"

namespace drg {

enum class FrameKind : std::uint8_t { kData, kPersistenceRebroadcast };

struct Frame {
  MessageId message;
  NodeId origin = kNoNode;
  NodeId sender = kNoNode;
  Point sender_position;  // stamped by the channel at transmission start
  std::uint32_t hop_count = 0;
  std::uint32_t network_bytes = 0;
  FrameKind kind = FrameKind::kData;
};

struct RadioParams {
  double r_tx = 300.0;
  double bitrate = 6e6;  // bits/s
  std::uint32_t header_bytes = 40;
  double p_loss = 0.0;
  // Defer transmissions while another in-range transmission is on air.
  bool carrier_sense = true;
};

void validate(const RadioParams& p);

double airtime(const RadioParams& p, std::uint32_t network_bytes);

struct ChannelStats {
  std::uint64_t transmissions = 0;
  std::uint64_t deliveries = 0;
  std::uint64_t collisions = 0;     // receptions destroyed by overlapping transmissions
  std::uint64_t half_duplex = 0;    // receptions missed because the receiver was sending
  std::uint64_t random_losses = 0;  // receptions dropped by the p_loss draw
  std::uint64_t in_range = 0;       // receivers inside the disk, summed over transmissions
};

/// Shared broadcast medium over a unit-disk propagation model. A frame is
/// evaluated at its transmission end: a receiver within r_tx of the sender's
/// start position gets it unless another in-range transmission overlapped in
/// time, the receiver was itself transmitting, or the loss draw fails.
class Channel {
 public:
  using ReceiveFn = std::function<void(NodeId, const Frame&)>;
  using TxFn = std::function<void(const Frame&)>;

  Channel(Engine& engine, const RadioParams& params, const MobilityModel& world,
          RandomStreams& rng);

  void set_receiver(ReceiveFn fn) { on_receive_ = std::move(fn); }
  void set_tx_observer(TxFn fn) { on_tx_ = std::move(fn); }

  /// Starts transmitting now. Throws std::logic_error if the sender is
  /// already on air. Returns the transmission end time.
  double broadcast(NodeId sender, Frame frame);

  bool transmitting(NodeId node) const;

  /// True when the node is transmitting or senses an in-range transmission.
  bool busy(NodeId node) const;

  /// Latest end time among transmissions the node currently senses (or its
  /// own); now() when idle.
  double busy_until(NodeId node) const;

  /// Nodes at distance <= r from p, in ascending id order.
  std::vector<NodeId> neighbors_in_range(Point p, double r) const;

  const RadioParams& params() const { return params_; }
  const ChannelStats& stats() const { return stats_; }

 private:
  struct Transmission {
    NodeId sender;
    Point position;
    double start;
    double end;
  };

  void finish(std::uint64_t id, const Frame& frame);
  void prune();

  Engine& engine_;
  RadioParams params_;
  const MobilityModel& world_;
  RandomStreams& rng_;
  ReceiveFn on_receive_;
  TxFn on_tx_;
  std::deque<std::pair<std::uint64_t, Transmission>> recent_;
  std::uint64_t next_tx_id_ = 0;
  std::vector<double> tx_end_;  // per node; -inf when never transmitted
  double max_airtime_ = 0.0;
  ChannelStats stats_;
};

}  // namespace drg
