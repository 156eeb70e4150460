#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "drg/drg_protocol.hpp"
#include "drg/engine.hpp"
#include "drg/flood_protocol.hpp"
#include "drg/metrics.hpp"
#include "drg/mobility.hpp"
#include "drg/radio.hpp"
#include "drg/random.hpp"

namespace drg {

enum class ProtocolKind { kDrg, kFlood };

const char* to_string(ProtocolKind kind);

/// One isolated simulation instance: engine, world, channel, metrics and a
/// protocol. Not thread-safe; separate instances share nothing.
class Simulation {
 public:
  using MobilityFactory = std::function<std::unique_ptr<MobilityModel>(RandomStreams&)>;

  struct Setup {
    MobilityFactory mobility;
    RadioParams radio;
    ProtocolKind protocol = ProtocolKind::kDrg;
    DrgParams drg;
    FloodParams flood;
    std::uint64_t seed = 1;
    double mobility_dt = 0.1;
    bool trace = false;
  };

  explicit Simulation(Setup setup);

  Engine& engine() { return engine_; }
  const Engine& engine() const { return engine_; }
  MobilityModel& world() { return *world_; }
  const MobilityModel& world() const { return *world_; }
  Channel& channel() { return *channel_; }
  const Channel& channel() const { return *channel_; }
  MetricsCollector& metrics() { return metrics_; }
  GeocastProtocol& protocol() { return *protocol_; }
  RandomStreams& rng() { return rng_; }

  /// nullptr when the protocol is not DRG (resp. flooding).
  DrgProtocol* drg();
  FloodProtocol* flood();

  /// Schedules `fn` at absolute time `t` (>= now).
  void at(double t, EventKind kind, std::function<void()> fn);

  void run(double until) { engine_.run(until); }
  /// Advances the world to the current time; periodic ticks continue from here.
  void sync_world();

  RunMetrics finish();

 private:
  void schedule_tick();

  Setup setup_;
  Engine engine_;
  RandomStreams rng_;
  std::unique_ptr<MobilityModel> world_;
  std::unique_ptr<Channel> channel_;
  MetricsCollector metrics_;
  std::unique_ptr<GeocastProtocol> protocol_;
  double world_time_ = 0.0;
};

}  // namespace drg
