#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "drg/geom.hpp"
#include "drg/random.hpp"
#include "drg/types.hpp"

namespace drg {

struct VehicleState {
  NodeId id = 0;
  Point position;
  Point velocity;  // m/s, as a vector
  bool stopped = false;
  int lane = -1;  // highway lane index, or grid street orientation (0 = x, 1 = y)
};

/// Owns vehicle positions. Node ids are dense indices into vehicles().
class MobilityModel {
 public:
  virtual ~MobilityModel() = default;

  virtual void tick(double dt) = 0;

  const std::vector<VehicleState>& vehicles() const { return vehicles_; }
  std::size_t size() const { return vehicles_.size(); }
  Point position(NodeId id) const { return vehicles_.at(id).position; }
  double v_max() const { return v_max_; }

 protected:
  explicit MobilityModel(double v_max) : v_max_(v_max) {}

  std::vector<VehicleState> vehicles_;
  double v_max_;
};

struct HighwayConfig {
  double length = 10000.0;
  int lanes_per_direction = 3;
  double lane_width = 4.0;
  double density = 10.0;  // vehicles per km per lane
  double v_max = 33.33;
  double standoff_gap = 5.0;
};

/// Straight two-way highway along the x axis. Forward lanes sit at y > 0 and
/// travel +x; reverse lanes at y < 0 travel -x. Each lane cruises at one speed
/// drawn once in [0.8 v_max, v_max]; vehicles queue behind a stopped leader
/// with a fixed standoff gap. No lane changes.
class HighwayMobility final : public MobilityModel {
 public:
  HighwayMobility(const HighwayConfig& cfg, RandomStreams& rng);

  void tick(double dt) override;

  /// Front-most forward-direction vehicle at initialization.
  NodeId lead() const { return lead_; }

  /// Stops the lead vehicle permanently and returns its id.
  NodeId crash_lead();

  const HighwayConfig& config() const { return cfg_; }
  double lane_y(int lane) const;
  int lane_count() const { return static_cast<int>(lanes_.size()); }

 private:
  struct Lane {
    int direction = 1;  // +1 forward, -1 reverse
    double y = 0.0;
    double speed = 0.0;
    std::vector<NodeId> front_to_back;
  };

  HighwayConfig cfg_;
  std::vector<Lane> lanes_;
  std::vector<bool> crashed_;
  NodeId lead_ = kNoNode;
};

struct GridConfig {
  double side = 2000.0;
  double block = 100.0;
  int vehicle_count = 100;
  double v_max = 13.89;
};

/// Manhattan street grid on [0, side]^2 with streets every `block` meters.
/// Node 0 is the message source, pinned and stopped at the grid center.
/// Other vehicles start uniformly on street segments and walk the grid at a
/// constant speed, turning uniformly among non-U-turn options at intersections.
class GridMobility final : public MobilityModel {
 public:
  GridMobility(const GridConfig& cfg, RandomStreams& rng);

  void tick(double dt) override;

  NodeId source() const { return 0; }
  Point center() const { return {cfg_.side / 2.0, cfg_.side / 2.0}; }
  const GridConfig& config() const { return cfg_; }

 private:
  struct Walker {
    int ix = 0;  // intersection the vehicle last left
    int iy = 0;
    int heading = 0;  // 0:+x 1:+y 2:-x 3:-y
    double offset = 0.0;
    double speed = 0.0;
  };

  void choose_heading(std::size_t i);
  void place(std::size_t i);

  GridConfig cfg_;
  int blocks_ = 0;
  std::vector<Walker> walkers_;
  RandomStreams& rng_;
};

/// Vehicles that move in straight lines at fixed velocities (zero for static
/// nodes). Used for hand-built topologies.
class ScriptedMobility final : public MobilityModel {
 public:
  struct Spec {
    Point position;
    Point velocity;
  };

  ScriptedMobility(std::vector<Spec> specs, double v_max);

  void tick(double dt) override;
};

}  // namespace drg
