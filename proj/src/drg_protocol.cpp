#include "drg/drg_protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace drg {

double min_max_bo_d(double max_frame_airtime) { return 2.0 * max_frame_airtime; }

std::vector<std::string> check(const DrgParams& p, double max_frame_airtime) {
  std::vector<std::string> out;
  // Relative slack so a value computed as exactly 2 * airtime is accepted.
  if (p.max_bo_d < min_max_bo_d(max_frame_airtime) * (1.0 - 1e-12)) {
    out.push_back("drg.max_bo_d: must be >= 2 x max frame airtime (" +
                  std::to_string(min_max_bo_d(max_frame_airtime)) + " s)");
  }
  if (p.long_bo_d > p.max_long_bo_d * (1.0 + 1e-12)) {
    out.push_back("drg.long_bo_d: must be <= r_tx / v_max (" + std::to_string(p.max_long_bo_d) +
                  " s)");
  }
  if (!(p.long_bo_d > 0.0)) out.push_back("drg.long_bo_d: must be positive");
  if (!(p.cr_threshold > 0.0) || p.cr_threshold > kMaxCoverageRatioThreshold) {
    out.push_back("drg.cr_threshold: must lie in (0, 0.78]");
  }
  if (p.cw_min > p.cw_max) out.push_back("drg.cw_min: must be <= drg.cw_max");
  if (p.cw_min < 0.0) out.push_back("drg.cw_min: must be >= 0");
  if (p.max_retx < 1) out.push_back("drg.max_retx: must be >= 1");
  if (!(p.ttl > 0.0)) out.push_back("drg.ttl: must be positive");
  if (!(p.s_d > 0.0)) out.push_back("drg.s_d: must be positive");
  if (p.epsilon < 0.0) out.push_back("drg.epsilon: must be >= 0");
  if (p.jitter_cw < 0.0) out.push_back("drg.jitter_cw: must be >= 0");
  return out;
}

double compute_backoff(double d, double r_tx, const DrgParams& p) {
  if (!(r_tx > 0.0)) throw std::invalid_argument("compute_backoff: r_tx must be positive");
  const double clamped = std::clamp(d, 0.0, r_tx);
  return p.max_bo_d * p.s_d * (r_tx - clamped) / r_tx;
}

bool ack_condition(const PerMessageState& state, Point self, double theta_min) {
  const auto& rf = state.received_from;
  for (auto a = rf.begin(); a != rf.end(); ++a) {
    if (a->second.position == self) continue;
    for (auto b = std::next(a); b != rf.end(); ++b) {
      if (b->second.position == self) continue;
      if (angle_at(self, a->second.position, b->second.position) >= theta_min) return true;
    }
  }
  return false;
}

DrgProtocol::DrgProtocol(ProtocolContext ctx, const DrgParams& params)
    : GeocastProtocol(ctx), params_(params), states_(ctx.world.size()) {
  if (params_.max_retx < 1) throw std::invalid_argument("drg: max_retx must be >= 1");
}

const PerMessageState* DrgProtocol::state(NodeId node, MessageId id) const {
  const auto& m = states_.at(node);
  auto it = m.find(id);
  return it == m.end() ? nullptr : &it->second;
}

PerMessageState& DrgProtocol::state_mut(NodeId node, MessageId id) { return states_.at(node)[id]; }

void DrgProtocol::deliver(NodeId node, const GeocastMessage& msg, PerMessageState& st) {
  st.delivered = true;
  ctx_.metrics.record_delivery(node, msg.id, ctx_.engine.now(), st.hop);
  if (params_.persistence) schedule_persistence(node, msg, st);
}

void DrgProtocol::acknowledge(PerMessageState& st) {
  ctx_.engine.cancel(st.pending_tx);
  ctx_.engine.cancel(st.pending_retx);
  st.pending_tx = {};
  st.pending_retx = {};
  st.acked = true;
  st.acked_at = ctx_.engine.now();
}

void DrgProtocol::start(NodeId origin, const GeocastMessage& msg) {
  PerMessageState& st = state_mut(origin, msg.id);
  st.received = true;
  st.hop = 0;
  if (in_region(position(origin), msg.zor)) deliver(origin, msg, st);
  fire(origin, msg.id, Trigger::kRetransmit);
}

void DrgProtocol::on_receive(NodeId node, const Frame& frame) {
  const GeocastMessage& msg = message(frame.message);
  PerMessageState& st = state_mut(node, msg.id);
  const double now = ctx_.engine.now();

  st.received_from[frame.sender] = {frame.sender_position, now};
  st.last_heard_at = now;
  if (!st.received) {
    st.received = true;
    st.hop = frame.hop_count + 1;
  }
  if (msg.expired(now)) return;

  const Point here = position(node);
  if (!st.delivered && in_region(here, msg.zor)) deliver(node, msg, st);
  if (st.acked) return;

  const bool origin_acked = params_.origin_single_ack && node == msg.origin;
  if (origin_acked || ack_condition(st, here, params_.theta_min)) {
    acknowledge(st);
    return;
  }

  if (!in_region(here, msg.zof)) return;
  if (ctx_.engine.pending(st.pending_tx) || ctx_.engine.pending(st.pending_retx)) return;
  // Once a node has transmitted, its retransmission schedule runs until
  // expiry; it does not contend again as a fresh forwarder.
  if (st.tx_count > 0) return;

  const double r_tx = ctx_.channel.params().r_tx;
  double delay = compute_backoff(dist(here, frame.sender_position), r_tx, params_);
  if (params_.jitter_cw > 0.0) {
    delay += ctx_.rng.get(node, StreamPurpose::kForwardJitter).uniform(0.0, params_.jitter_cw);
  }
  if (now + delay > msg.expires_at()) return;
  const MessageId id = msg.id;
  st.pending_tx = ctx_.engine.schedule(delay, node, EventKind::kBackoffExpiry,
                                       [this, node, id] { fire(node, id, Trigger::kBackoff); });
}

void DrgProtocol::fire(NodeId node, MessageId id, Trigger trigger) {
  const GeocastMessage& msg = message(id);
  PerMessageState& st = state_mut(node, id);
  st.pending_tx = {};
  st.pending_retx = {};
  const double now = ctx_.engine.now();
  if (st.acked || msg.expired(now)) return;

  if (ctx_.channel.busy(node)) {
    double delay = ctx_.channel.busy_until(node) - now;
    if (params_.jitter_cw > 0.0) {
      delay += ctx_.rng.get(node, StreamPurpose::kDeferral).uniform(0.0, params_.jitter_cw);
    }
    if (now + delay > msg.expires_at()) return;
    TimerHandle h = ctx_.engine.schedule(delay, node, EventKind::kDeferredTx,
                                         [this, node, id, trigger] { fire(node, id, trigger); });
    (trigger == Trigger::kBackoff ? st.pending_tx : st.pending_retx) = h;
    return;
  }

  const double end =
      ctx_.channel.broadcast(node, make_frame(msg, st.hop, FrameKind::kData));
  ++st.tx_count;
  if (trigger == Trigger::kBackoff) ++st.forward_count;

  // The next attempt is measured from the end of this transmission, which is
  // when receivers start their own distance backoff; it therefore competes
  // as a node at distance zero.
  const double gap = st.tx_count < params_.max_retx ? params_.max_bo_d : params_.long_bo_d;
  const double at = end + gap;
  if (at > msg.expires_at()) return;
  st.pending_retx = ctx_.engine.schedule(at - now, node, EventKind::kRetransmitExpiry,
                                         [this, node, id] { fire(node, id, Trigger::kRetransmit); });
}

void DrgProtocol::schedule_persistence(NodeId node, const GeocastMessage& msg,
                                       PerMessageState& st) {
  const double base = params_.epsilon * ctx_.channel.params().r_tx / params_.v_max;
  const double period =
      base + ctx_.rng.get(node, StreamPurpose::kPersistence).uniform(params_.cw_min, params_.cw_max);
  const double now = ctx_.engine.now();
  if (!(period > 0.0) || now + period > msg.expires_at()) {
    st.persistence_timer = {};
    return;
  }
  st.persistence_window = period;
  const MessageId id = msg.id;
  st.persistence_timer = ctx_.engine.schedule(period, node, EventKind::kPersistenceExpiry,
                                              [this, node, id] { on_persistence_expiry(node, id); });
}

void DrgProtocol::on_persistence_expiry(NodeId node, MessageId id) {
  const GeocastMessage& msg = message(id);
  PerMessageState& st = state_mut(node, id);
  st.persistence_timer = {};
  const double now = ctx_.engine.now();
  if (msg.expired(now)) return;

  const bool quiet = now - st.last_heard_at >= st.persistence_window;
  if (quiet && in_region(position(node), msg.zor) && !ctx_.channel.busy(node)) {
    ctx_.channel.broadcast(node, make_frame(msg, st.hop, FrameKind::kPersistenceRebroadcast));
    ++st.persistence_count;
  }
  schedule_persistence(node, msg, st);
}

}  // namespace drg
