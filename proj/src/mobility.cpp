#include "drg/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drg {

namespace {

constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

}  // namespace

HighwayMobility::HighwayMobility(const HighwayConfig& cfg, RandomStreams& rng)
    : MobilityModel(cfg.v_max), cfg_(cfg) {
  if (!(cfg.density > 0.0)) throw std::invalid_argument("highway: density must be positive");
  if (!(cfg.v_max > 0.0)) throw std::invalid_argument("highway: v_max must be positive");
  if (!(cfg.length > 0.0)) throw std::invalid_argument("highway: length must be positive");
  if (cfg.lanes_per_direction < 1) throw std::invalid_argument("highway: need at least one lane");
  if (cfg.standoff_gap < 0.0) throw std::invalid_argument("highway: negative standoff gap");

  const auto per_lane = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::floor(cfg.density * cfg.length / 1000.0 + 1e-9)));
  const double spacing = cfg.length / static_cast<double>(per_lane);
  if (per_lane > 1 && spacing < cfg.standoff_gap) {
    throw std::invalid_argument("highway: density leaves less than the standoff gap per vehicle");
  }

  const int total_lanes = 2 * cfg.lanes_per_direction;
  lanes_.resize(total_lanes);
  double lead_x = -1.0;
  for (int l = 0; l < total_lanes; ++l) {
    Lane& lane = lanes_[l];
    lane.direction = l < cfg.lanes_per_direction ? 1 : -1;
    lane.y = lane_y(l);
    const auto lane_node = static_cast<NodeId>(l);
    lane.speed = rng.get(lane_node, StreamPurpose::kCruiseSpeed).uniform(0.8 * cfg.v_max, cfg.v_max);
    const double phase = rng.get(lane_node, StreamPurpose::kPlacement).uniform(0.0, spacing);

    std::vector<NodeId> ids;
    for (std::int64_t k = 0; k < per_lane; ++k) {
      VehicleState v;
      v.id = static_cast<NodeId>(vehicles_.size());
      v.position = {phase + static_cast<double>(k) * spacing, lane.y};
      v.velocity = {lane.direction * lane.speed, 0.0};
      v.lane = l;
      vehicles_.push_back(v);
      ids.push_back(v.id);
      if (lane.direction > 0 && v.position.x > lead_x) {
        lead_x = v.position.x;
        lead_ = v.id;
      }
    }
    // Placement is increasing in x, so forward lanes reverse to front-first.
    if (lane.direction > 0) std::reverse(ids.begin(), ids.end());
    lane.front_to_back = std::move(ids);
  }
  crashed_.assign(vehicles_.size(), false);
}

double HighwayMobility::lane_y(int lane) const {
  const int n = cfg_.lanes_per_direction;
  const int k = lane < n ? lane : lane - n;
  const double y = (k + 0.5) * cfg_.lane_width;
  return lane < n ? y : -y;
}

NodeId HighwayMobility::crash_lead() {
  VehicleState& v = vehicles_.at(lead_);
  v.velocity = {0.0, 0.0};
  v.stopped = true;
  crashed_[lead_] = true;
  return lead_;
}

void HighwayMobility::tick(double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("tick: dt must be positive");
  for (const Lane& lane : lanes_) {
    double front_progress = 0.0;
    bool have_front = false;
    for (NodeId id : lane.front_to_back) {
      VehicleState& v = vehicles_[id];
      const double cur = lane.direction * v.position.x;
      double next = cur;
      if (!crashed_[id]) {
        next = cur + lane.speed * dt;
        if (have_front) next = std::min(next, front_progress - cfg_.standoff_gap);
        next = std::max(next, cur);
      }
      const double moved = next - cur;
      v.position.x = lane.direction * next;
      v.velocity = {lane.direction * moved / dt, 0.0};
      v.stopped = moved == 0.0;
      front_progress = next;
      have_front = true;
    }
  }
}

GridMobility::GridMobility(const GridConfig& cfg, RandomStreams& rng)
    : MobilityModel(cfg.v_max), cfg_(cfg), rng_(rng) {
  if (!(cfg.block > 0.0) || !(cfg.side >= cfg.block)) {
    throw std::invalid_argument("grid: need side >= block > 0");
  }
  const double ratio = cfg.side / cfg.block;
  if (std::abs(ratio - std::round(ratio)) > 1e-9) {
    throw std::invalid_argument("grid: side must be a multiple of block");
  }
  blocks_ = static_cast<int>(std::round(ratio));
  if (blocks_ % 2 != 0) throw std::invalid_argument("grid: center must be an intersection");
  if (cfg.vehicle_count < 1) throw std::invalid_argument("grid: vehicle_count must be >= 1");
  if (!(cfg.v_max > 0.0)) throw std::invalid_argument("grid: v_max must be positive");

  vehicles_.resize(static_cast<std::size_t>(cfg.vehicle_count));
  walkers_.resize(vehicles_.size());
  for (std::size_t i = 0; i < vehicles_.size(); ++i) {
    vehicles_[i].id = static_cast<NodeId>(i);
    if (i == 0) {
      walkers_[0] = {blocks_ / 2, blocks_ / 2, 0, 0.0, 0.0};
      vehicles_[0].position = center();
      vehicles_[0].stopped = true;
      vehicles_[0].lane = 0;
      continue;
    }
    place(i);
  }
}

void GridMobility::place(std::size_t i) {
  const auto id = static_cast<NodeId>(i);
  RandomStream& pick = rng_.get(id, StreamPurpose::kPlacement);
  const bool horizontal = pick.uniform_index(2) == 0;
  const int line = static_cast<int>(pick.uniform_index(static_cast<std::uint64_t>(blocks_) + 1));
  const int seg = static_cast<int>(pick.uniform_index(static_cast<std::uint64_t>(blocks_)));
  const double along = pick.uniform(0.0, cfg_.block);
  const bool forward = pick.uniform_index(2) == 0;

  Walker& w = walkers_[i];
  w.speed = rng_.get(id, StreamPurpose::kCruiseSpeed).uniform(0.8 * cfg_.v_max, cfg_.v_max);
  const int ax = horizontal ? seg : line;
  const int ay = horizontal ? line : seg;
  if (forward) {
    w.ix = ax;
    w.iy = ay;
    w.heading = horizontal ? 0 : 1;
    w.offset = along;
  } else {
    w.ix = horizontal ? ax + 1 : ax;
    w.iy = horizontal ? ay : ay + 1;
    w.heading = horizontal ? 2 : 3;
    w.offset = cfg_.block - along;
  }
  VehicleState& v = vehicles_[i];
  v.position = {w.ix * cfg_.block + kDx[w.heading] * w.offset,
                w.iy * cfg_.block + kDy[w.heading] * w.offset};
  v.velocity = {kDx[w.heading] * w.speed, kDy[w.heading] * w.speed};
  v.lane = w.heading % 2;
}

void GridMobility::choose_heading(std::size_t i) {
  Walker& w = walkers_[i];
  const int candidates[3] = {w.heading, (w.heading + 1) % 4, (w.heading + 3) % 4};
  int options[3];
  int n = 0;
  for (int h : candidates) {
    const int nx = w.ix + kDx[h];
    const int ny = w.iy + kDy[h];
    if (nx >= 0 && nx <= blocks_ && ny >= 0 && ny <= blocks_) options[n++] = h;
  }
  if (n == 0) {
    w.heading = (w.heading + 2) % 4;  // dead end
    return;
  }
  auto& turn = rng_.get(static_cast<NodeId>(i), StreamPurpose::kTurning);
  w.heading = options[turn.uniform_index(static_cast<std::uint64_t>(n))];
}

void GridMobility::tick(double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("tick: dt must be positive");
  for (std::size_t i = 1; i < walkers_.size(); ++i) {
    Walker& w = walkers_[i];
    double remaining = w.speed * dt;
    while (remaining > 0.0) {
      const double to_next = cfg_.block - w.offset;
      if (remaining < to_next) {
        w.offset += remaining;
        remaining = 0.0;
      } else {
        remaining -= to_next;
        w.ix += kDx[w.heading];
        w.iy += kDy[w.heading];
        w.offset = 0.0;
        choose_heading(i);
      }
    }
    VehicleState& v = vehicles_[i];
    v.position = {w.ix * cfg_.block + kDx[w.heading] * w.offset,
                  w.iy * cfg_.block + kDy[w.heading] * w.offset};
    v.velocity = {kDx[w.heading] * w.speed, kDy[w.heading] * w.speed};
    v.lane = w.heading % 2;
  }
}

ScriptedMobility::ScriptedMobility(std::vector<Spec> specs, double v_max)
    : MobilityModel(v_max) {
  if (!(v_max > 0.0)) throw std::invalid_argument("scripted: v_max must be positive");
  vehicles_.reserve(specs.size());
  for (const Spec& s : specs) {
    if (std::hypot(s.velocity.x, s.velocity.y) > v_max + 1e-9) {
      throw std::invalid_argument("scripted: vehicle speed exceeds v_max");
    }
    VehicleState v;
    v.id = static_cast<NodeId>(vehicles_.size());
    v.position = s.position;
    v.velocity = s.velocity;
    v.stopped = s.velocity.x == 0.0 && s.velocity.y == 0.0;
    vehicles_.push_back(v);
  }
}

void ScriptedMobility::tick(double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("tick: dt must be positive");
  for (VehicleState& v : vehicles_) {
    v.position.x += v.velocity.x * dt;
    v.position.y += v.velocity.y * dt;
  }
}

}  // namespace drg
