#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <utility>

#include "drg/types.hpp"

namespace drg {

/// What a stream is used for. Each (node, purpose) pair gets its own stream
/// so the draws one subsystem makes never shift another's sequence.
enum class StreamPurpose : std::uint32_t {
  kForwardJitter = 1,
  kChannelLoss = 2,
  kPersistence = 3,
  kFloodSlot = 4,
  kPlacement = 5,
  kTurning = 6,
  kCruiseSpeed = 7,
  kDeferral = 8,
  kOracle = 9,
};

std::uint64_t splitmix64(std::uint64_t x);

/// Seeded uniform source. The mapping from engine output to reals is done
/// here rather than through std::uniform_real_distribution, whose output is
/// implementation-defined; this keeps sequences identical across toolchains.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, NodeId node, StreamPurpose purpose);

  /// Uniform real in [a, b); returns a when a == b. Throws on a > b.
  double uniform(double a, double b);

  /// Uniform integer in [0, n). Throws on n == 0.
  std::uint64_t uniform_index(std::uint64_t n);

  double uniform01();

 private:
  std::mt19937_64 engine_;
};

/// Lazily created per-(node, purpose) streams for one simulation.
class RandomStreams {
 public:
  explicit RandomStreams(std::uint64_t seed) : seed_(seed) {}

  RandomStream& get(NodeId node, StreamPurpose purpose);
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::map<std::pair<NodeId, StreamPurpose>, RandomStream> streams_;
};

}  // namespace drg
