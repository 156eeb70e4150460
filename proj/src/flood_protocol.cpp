#include "drg/flood_protocol.hpp"

#include <stdexcept>

namespace drg {

std::vector<std::string> check(const FloodParams& p) {
  std::vector<std::string> out;
  if (!(p.slot > 0.0)) out.push_back("flood.slot: must be positive");
  if (p.cw_slots < 1) out.push_back("flood.cw_slots: must be >= 1");
  if (p.ttl_hops < 1) out.push_back("flood.ttl_hops: must be >= 1");
  return out;
}

FloodProtocol::FloodProtocol(ProtocolContext ctx, const FloodParams& params)
    : GeocastProtocol(ctx), params_(params), states_(ctx.world.size()) {
  if (auto v = check(params_); !v.empty()) throw std::invalid_argument(v.front());
}

const FloodProtocol::NodeState* FloodProtocol::state(NodeId node, MessageId id) const {
  const auto& m = states_.at(node);
  auto it = m.find(id);
  return it == m.end() ? nullptr : &it->second;
}

double FloodProtocol::slot_delay(NodeId node) {
  auto& rng = ctx_.rng.get(node, StreamPurpose::kFloodSlot);
  return params_.slot * static_cast<double>(rng.uniform_index(params_.cw_slots));
}

void FloodProtocol::start(NodeId origin, const GeocastMessage& msg) {
  NodeState& st = states_.at(origin)[msg.id];
  st.seen = true;
  st.hop = 0;
  if (in_region(position(origin), msg.zor)) {
    ctx_.metrics.record_delivery(origin, msg.id, ctx_.engine.now(), 0);
  }
  fire(origin, msg.id);
}

void FloodProtocol::on_receive(NodeId node, const Frame& frame) {
  NodeState& st = states_.at(node)[frame.message];
  if (st.seen) return;
  st.seen = true;
  st.hop = frame.hop_count + 1;

  const GeocastMessage& msg = message(frame.message);
  if (msg.expired(ctx_.engine.now())) return;
  const Point here = position(node);
  if (in_region(here, msg.zor)) {
    ctx_.metrics.record_delivery(node, msg.id, ctx_.engine.now(), st.hop);
  }
  if (!in_region(here, msg.zof) || frame.hop_count >= params_.ttl_hops) return;

  const MessageId id = msg.id;
  st.pending = ctx_.engine.schedule(slot_delay(node), node, EventKind::kBackoffExpiry,
                                    [this, node, id] { fire(node, id); });
}

void FloodProtocol::fire(NodeId node, MessageId id) {
  NodeState& st = states_.at(node).at(id);
  st.pending = {};
  if (ctx_.channel.busy(node)) {
    const double delay = ctx_.channel.busy_until(node) - ctx_.engine.now() + slot_delay(node);
    st.pending = ctx_.engine.schedule(delay, node, EventKind::kDeferredTx,
                                      [this, node, id] { fire(node, id); });
    return;
  }
  ctx_.channel.broadcast(node, make_frame(message(id), st.hop, FrameKind::kData));
  ++st.tx_count;
}

}  // namespace drg
