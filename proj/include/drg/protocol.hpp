#pragma once

#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "drg/engine.hpp"
#include "drg/geom.hpp"
#include "drg/metrics.hpp"
#include "drg/mobility.hpp"
#include "drg/radio.hpp"
#include "drg/random.hpp"

namespace drg {

/// Margin added around the ZOR to form the zone of forwarding.
inline constexpr double kZofMargin = 15.0;

struct GeocastMessage {
  MessageId id;
  NodeId origin = kNoNode;
  Point origin_position;
  RectRegion zor;
  RectRegion zof;
  std::uint32_t payload_bytes = 0;
  double created_at = 0.0;
  double ttl = 0.0;

  double expires_at() const { return created_at + ttl; }
  bool expired(double now) const { return now - created_at > ttl; }
};

struct ProtocolContext {
  Engine& engine;
  Channel& channel;
  const MobilityModel& world;
  RandomStreams& rng;
  MetricsCollector& metrics;
};

/// Common origination path: id assignment, ZOF construction and the ZOR
/// membership snapshot that freezes the PDR denominator.
class GeocastProtocol {
 public:
  explicit GeocastProtocol(ProtocolContext ctx) : ctx_(ctx) {}
  virtual ~GeocastProtocol() = default;

  GeocastProtocol(const GeocastProtocol&) = delete;
  GeocastProtocol& operator=(const GeocastProtocol&) = delete;

  const GeocastMessage& originate(NodeId node, const RectRegion& zor,
                                  std::uint32_t payload_bytes, double ttl);

  virtual void on_receive(NodeId node, const Frame& frame) = 0;
  virtual std::string_view name() const = 0;

  const GeocastMessage& message(MessageId id) const { return messages_.at(id); }
  const std::map<MessageId, GeocastMessage>& messages() const { return messages_; }

 protected:
  virtual void start(NodeId origin, const GeocastMessage& msg) = 0;

  Frame make_frame(const GeocastMessage& msg, std::uint32_t hop_count, FrameKind kind) const;
  Point position(NodeId node) const { return ctx_.world.position(node); }

  ProtocolContext ctx_;

 private:
  std::map<MessageId, GeocastMessage> messages_;
  std::map<NodeId, std::uint32_t> next_seq_;
};

}  // namespace drg
