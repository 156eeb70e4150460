#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "drg/protocol.hpp"

namespace drg {

struct FloodParams {
  double slot = 20e-6;
  std::uint32_t cw_slots = 32;
  std::uint32_t ttl_hops = 64;
};

std::vector<std::string> check(const FloodParams& p);

/// Baseline: every ZOF node rebroadcasts the first copy it hears once, after
/// a random number of backoff slots. Duplicates are dropped without
/// cancelling anything.
class FloodProtocol final : public GeocastProtocol {
 public:
  FloodProtocol(ProtocolContext ctx, const FloodParams& params);

  void on_receive(NodeId node, const Frame& frame) override;
  std::string_view name() const override { return "flood"; }

  const FloodParams& params() const { return params_; }

  struct NodeState {
    bool seen = false;
    std::uint32_t hop = 0;
    std::uint32_t tx_count = 0;
    TimerHandle pending;
  };
  const NodeState* state(NodeId node, MessageId id) const;

 protected:
  void start(NodeId origin, const GeocastMessage& msg) override;

 private:
  double slot_delay(NodeId node);
  void fire(NodeId node, MessageId id);

  FloodParams params_;
  std::vector<std::map<MessageId, NodeState>> states_;
};

}  // namespace drg
