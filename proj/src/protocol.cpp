#include "drg/protocol.hpp"

#include <stdexcept>

namespace drg {

const GeocastMessage& GeocastProtocol::originate(NodeId node, const RectRegion& zor,
                                                 std::uint32_t payload_bytes, double ttl) {
  if (!(ttl > 0.0)) throw std::invalid_argument("originate: ttl must be positive");
  const double now = ctx_.engine.now();
  GeocastMessage msg;
  msg.id = {node, next_seq_[node]++};
  msg.origin = node;
  msg.origin_position = position(node);
  msg.zor = zor;
  msg.zof = expand_region(zor, kZofMargin);
  msg.payload_bytes = payload_bytes;
  msg.created_at = now;
  msg.ttl = ttl;

  std::vector<NodeId> members;
  for (const VehicleState& v : ctx_.world.vehicles()) {
    if (in_region(v.position, zor)) members.push_back(v.id);
  }
  ctx_.metrics.snapshot_zor(msg.id, members, now, payload_bytes);

  const auto [it, inserted] = messages_.emplace(msg.id, msg);
  if (!inserted) throw std::logic_error("originate: duplicate message id");
  start(node, it->second);
  return it->second;
}

Frame GeocastProtocol::make_frame(const GeocastMessage& msg, std::uint32_t hop_count,
                                  FrameKind kind) const {
  Frame f;
  f.message = msg.id;
  f.origin = msg.origin;
  f.hop_count = hop_count;
  f.network_bytes = msg.payload_bytes + ctx_.channel.params().header_bytes;
  f.kind = kind;
  return f;
}

}  // namespace drg
