#include "drg/simulation.hpp"

#include <stdexcept>

namespace drg {

const char* to_string(ProtocolKind kind) {
  return kind == ProtocolKind::kDrg ? "drg" : "flood";
}

Simulation::Simulation(Setup setup) : setup_(std::move(setup)), rng_(setup_.seed) {
  if (!setup_.mobility) throw std::invalid_argument("Simulation: missing mobility factory");
  if (!(setup_.mobility_dt > 0.0)) throw std::invalid_argument("Simulation: mobility_dt must be positive");
  engine_.enable_trace(setup_.trace);
  world_ = setup_.mobility(rng_);
  channel_ = std::make_unique<Channel>(engine_, setup_.radio, *world_, rng_);

  ProtocolContext ctx{engine_, *channel_, *world_, rng_, metrics_};
  if (setup_.protocol == ProtocolKind::kDrg) {
    protocol_ = std::make_unique<DrgProtocol>(ctx, setup_.drg);
  } else {
    protocol_ = std::make_unique<FloodProtocol>(ctx, setup_.flood);
  }
  channel_->set_receiver([this](NodeId node, const Frame& f) { protocol_->on_receive(node, f); });
  channel_->set_tx_observer([this](const Frame& f) { metrics_.record_tx(f, engine_.now()); });
  schedule_tick();
}

DrgProtocol* Simulation::drg() { return dynamic_cast<DrgProtocol*>(protocol_.get()); }
FloodProtocol* Simulation::flood() { return dynamic_cast<FloodProtocol*>(protocol_.get()); }

void Simulation::at(double t, EventKind kind, std::function<void()> fn) {
  engine_.schedule(t - engine_.now(), kNoNode, kind, std::move(fn));
}

void Simulation::sync_world() {
  const double dt = engine_.now() - world_time_;
  if (dt > 0.0) world_->tick(dt);
  world_time_ = engine_.now();
}

void Simulation::schedule_tick() {
  engine_.schedule(setup_.mobility_dt, kNoNode, EventKind::kMobilityTick, [this] {
    sync_world();
    schedule_tick();
  });
}

RunMetrics Simulation::finish() {
  metrics_.set_collisions(channel_->stats().collisions);
  return metrics_.finalize();
}

}  // namespace drg
