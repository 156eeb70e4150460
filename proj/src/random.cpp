#include "drg/random.hpp"

#include <stdexcept>

namespace drg {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t stream_seed(std::uint64_t seed, NodeId node, StreamPurpose purpose) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ (static_cast<std::uint64_t>(node) * 0xd1b54a32d192ed03ULL));
  s = splitmix64(s ^ (static_cast<std::uint64_t>(purpose) * 0x8cb92ba72f3d8dd7ULL));
  return s;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, NodeId node, StreamPurpose purpose)
    : engine_(stream_seed(seed, node, purpose)) {}

double RandomStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double a, double b) {
  if (a > b) throw std::invalid_argument("uniform: a > b");
  if (a == b) return a;
  const double v = a + (b - a) * uniform01();
  return v < b ? v : a;
}

std::uint64_t RandomStream::uniform_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

RandomStream& RandomStreams::get(NodeId node, StreamPurpose purpose) {
  auto key = std::make_pair(node, purpose);
  auto it = streams_.find(key);
  if (it == streams_.end()) {
    it = streams_.emplace(key, RandomStream(seed_, node, purpose)).first;
  }
  return it->second;
}

}  // namespace drg
