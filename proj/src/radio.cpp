#include "drg/radio.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace drg {

void validate(const RadioParams& p) {
  if (!(p.r_tx > 0.0)) throw std::invalid_argument("radio: r_tx must be positive");
  if (!(p.bitrate > 0.0)) throw std::invalid_argument("radio: bitrate must be positive");
  if (!(p.p_loss >= 0.0 && p.p_loss < 1.0)) {
    throw std::invalid_argument("radio: p_loss must lie in [0, 1)");
  }
}

double airtime(const RadioParams& p, std::uint32_t network_bytes) {
  return static_cast<double>(network_bytes) * 8.0 / p.bitrate;
}

Channel::Channel(Engine& engine, const RadioParams& params, const MobilityModel& world,
                 RandomStreams& rng)
    : engine_(engine),
      params_(params),
      world_(world),
      rng_(rng),
      tx_end_(world.size(), -std::numeric_limits<double>::infinity()) {
  validate(params_);
}

bool Channel::transmitting(NodeId node) const { return tx_end_.at(node) > engine_.now(); }

bool Channel::busy(NodeId node) const { return busy_until(node) > engine_.now(); }

double Channel::busy_until(NodeId node) const {
  const double now = engine_.now();
  double until = std::max(now, tx_end_.at(node));
  if (!params_.carrier_sense) return until;
  const Point here = world_.position(node);
  for (const auto& [id, t] : recent_) {
    if (t.start <= now && t.end > now && dist(t.position, here) <= params_.r_tx) {
      until = std::max(until, t.end);
    }
  }
  return until;
}

double Channel::broadcast(NodeId sender, Frame frame) {
  if (transmitting(sender)) {
    throw std::logic_error("Channel::broadcast: sender is already transmitting");
  }
  const double now = engine_.now();
  const double air = airtime(params_, frame.network_bytes);
  frame.sender = sender;
  frame.sender_position = world_.position(sender);

  const std::uint64_t id = next_tx_id_++;
  recent_.emplace_back(id, Transmission{sender, frame.sender_position, now, now + air});
  tx_end_[sender] = now + air;
  max_airtime_ = std::max(max_airtime_, air);
  ++stats_.transmissions;
  if (on_tx_) on_tx_(frame);

  engine_.schedule(air, sender, EventKind::kTxEnd, [this, id, frame] { finish(id, frame); });
  return now + air;
}

void Channel::finish(std::uint64_t id, const Frame& frame) {
  auto it = std::find_if(recent_.begin(), recent_.end(),
                         [id](const auto& e) { return e.first == id; });
  if (it == recent_.end()) throw std::logic_error("Channel: unknown transmission");
  const Transmission self = it->second;

  for (NodeId rx : neighbors_in_range(self.position, params_.r_tx)) {
    if (rx == self.sender) continue;
    ++stats_.in_range;
    const Point rx_pos = world_.position(rx);
    bool collided = false;
    bool was_sending = false;
    for (const auto& [other_id, other] : recent_) {
      if (other_id == id) continue;
      const bool overlaps = other.start < self.end && self.start < other.end;
      if (!overlaps) continue;
      if (other.sender == rx) {
        was_sending = true;
      } else if (dist(other.position, rx_pos) <= params_.r_tx) {
        collided = true;
      }
    }
    if (was_sending) {
      ++stats_.half_duplex;
      continue;
    }
    if (collided) {
      ++stats_.collisions;
      continue;
    }
    if (params_.p_loss > 0.0 &&
        rng_.get(rx, StreamPurpose::kChannelLoss).uniform01() < params_.p_loss) {
      ++stats_.random_losses;
      continue;
    }
    ++stats_.deliveries;
    if (on_receive_) on_receive_(rx, frame);
  }
  prune();
}

void Channel::prune() {
  // Transmissions still on air started no earlier than now - max_airtime, so
  // anything that ended before that cannot overlap them.
  const double horizon = engine_.now() - 2.0 * max_airtime_;
  while (!recent_.empty() && recent_.front().second.end < horizon) recent_.pop_front();
}

std::vector<NodeId> Channel::neighbors_in_range(Point p, double r) const {
  std::vector<NodeId> out;
  for (const VehicleState& v : world_.vehicles()) {
    if (dist(v.position, p) <= r) out.push_back(v.id);
  }
  return out;
}

}  // namespace drg
