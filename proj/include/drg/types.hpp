#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>

namespace drg {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Geocast message identity: originating node plus a per-origin sequence.
struct MessageId {
  NodeId origin = kNoNode;
  std::uint32_t seq = 0;

  friend auto operator<=>(const MessageId&, const MessageId&) = default;
};

}  // namespace drg
