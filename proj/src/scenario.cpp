#include "drg/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace drg {

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kHighway: return "highway";
    case ScenarioKind::kGrid: return "grid";
    case ScenarioKind::kCustom: return "custom";
  }
  return "unknown";
}

double scenario_v_max(const ScenarioConfig& cfg) {
  switch (cfg.scenario) {
    case ScenarioKind::kHighway: return cfg.highway.mobility.v_max;
    case ScenarioKind::kGrid: return cfg.grid.mobility.v_max;
    case ScenarioKind::kCustom: return cfg.custom.v_max;
  }
  return 0.0;
}

double origination_time(const ScenarioConfig& cfg) {
  switch (cfg.scenario) {
    case ScenarioKind::kHighway: return cfg.highway.crash_time;
    case ScenarioKind::kGrid: return cfg.grid.origin_time;
    case ScenarioKind::kCustom: return cfg.custom.origin_time;
  }
  return 0.0;
}

double sim_end_time(const ScenarioConfig& cfg) {
  return cfg.sim_end.value_or(origination_time(cfg) + cfg.drg.ttl + 1.0);
}

double max_frame_airtime(const ScenarioConfig& cfg) {
  return airtime(cfg.radio, cfg.payload_bytes + cfg.radio.header_bytes);
}

DrgParams resolve_drg(const ScenarioConfig& cfg) {
  const double v_max = scenario_v_max(cfg);
  DrgParams p;
  p.max_bo_d = cfg.drg.max_bo_d.value_or(min_max_bo_d(max_frame_airtime(cfg)));
  p.s_d = cfg.drg.s_d;
  p.max_retx = cfg.drg.max_retx;
  p.max_long_bo_d = v_max > 0.0 ? cfg.radio.r_tx / v_max : 0.0;
  p.long_bo_d = cfg.drg.long_bo_d.value_or(p.max_long_bo_d);
  p.cr_threshold = cfg.drg.cr_threshold;
  if (cfg.drg.cr_threshold > 0.0 && cfg.drg.cr_threshold <= kMaxCoverageRatioThreshold) {
    p.theta_min = solve_theta_min(cfg.drg.cr_threshold);
  }
  p.epsilon = cfg.drg.epsilon;
  p.cw_min = cfg.drg.cw_min;
  p.cw_max = cfg.drg.cw_max;
  p.jitter_cw = cfg.drg.jitter_cw;
  p.ttl = cfg.drg.ttl;
  p.v_max = v_max;
  p.persistence = cfg.drg.persistence;
  p.origin_single_ack = cfg.drg.origin_single_ack;
  return p;
}

std::vector<std::string> validate(const ScenarioConfig& cfg) {
  std::vector<std::string> out;
  auto add = [&out](std::vector<std::string> v) { out.insert(out.end(), v.begin(), v.end()); };

  try {
    validate(cfg.radio);
  } catch (const std::exception& e) {
    out.emplace_back(e.what());
  }
  if (cfg.payload_bytes == 0) out.push_back("payload_bytes: must be positive");
  if (!(cfg.mobility_dt > 0.0)) out.push_back("mobility_dt_s: must be positive");
  if (cfg.replicas < 1) out.push_back("replicas: must be >= 1");
  if (cfg.protocols.empty()) out.push_back("protocols: at least one protocol required");
  if (cfg.densities.empty()) out.push_back("densities: at least one density required");
  if (!(scenario_v_max(cfg) > 0.0)) out.push_back(std::string(to_string(cfg.scenario)) + ".v_max_mps: must be positive");

  switch (cfg.scenario) {
    case ScenarioKind::kHighway: {
      const auto& h = cfg.highway;
      if (!(h.mobility.length > 0.0)) out.push_back("highway.length_m: must be positive");
      if (h.mobility.lanes_per_direction < 1) out.push_back("highway.lanes_per_direction: must be >= 1");
      if (!(h.mobility.lane_width > 0.0)) out.push_back("highway.lane_width_m: must be positive");
      if (!(h.zor_width > 0.0)) out.push_back("highway.zor_width_m: must be positive");
      if (!(h.zor_behind > 0.0)) out.push_back("highway.zor_behind_m: must be positive");
      if (h.crash_time < 0.0) out.push_back("highway.crash_time_s: must be >= 0");
      for (double d : cfg.densities) {
        if (!(d > 0.0)) {
          out.push_back("densities: highway density must be positive");
        } else if (d * h.mobility.standoff_gap > 1000.0) {
          out.push_back("densities: highway density leaves less than the standoff gap per vehicle");
        }
      }
      break;
    }
    case ScenarioKind::kGrid: {
      const auto& g = cfg.grid;
      if (!(g.mobility.block > 0.0) || !(g.mobility.side >= g.mobility.block)) {
        out.push_back("grid.side_m: must be >= grid.block_m > 0");
      } else {
        const double r = g.mobility.side / g.mobility.block;
        if (std::abs(r - std::round(r)) > 1e-9 || static_cast<long>(std::round(r)) % 2 != 0) {
          out.push_back("grid.side_m: must be an even multiple of grid.block_m");
        }
      }
      if (!(g.zor_side > 0.0)) out.push_back("grid.zor_side_m: must be positive");
      if (g.origin_time < 0.0) out.push_back("grid.origin_time_s: must be >= 0");
      for (double d : cfg.densities) {
        if (!(d >= 1.0) || d != std::floor(d)) {
          out.push_back("densities: grid density is a vehicle count and must be an integer >= 1");
        }
      }
      break;
    }
    case ScenarioKind::kCustom: {
      const auto& c = cfg.custom;
      if (c.vehicles.empty()) out.push_back("custom.vehicles: at least one vehicle required");
      if (c.origin >= c.vehicles.size()) out.push_back("custom.origin: not a vehicle index");
      if (!(c.zor.min_x < c.zor.max_x) || !(c.zor.min_y < c.zor.max_y)) {
        out.push_back("custom.zor: bounds must satisfy min < max");
      }
      if (c.origin_time < 0.0) out.push_back("custom.origin_time_s: must be >= 0");
      for (const auto& v : c.vehicles) {
        if (std::hypot(v.velocity.x, v.velocity.y) > c.v_max + 1e-9) {
          out.push_back("custom.vehicles: speed exceeds custom.v_max_mps");
          break;
        }
      }
      break;
    }
  }

  if (cfg.radio.r_tx > 0.0 && cfg.radio.bitrate > 0.0 && scenario_v_max(cfg) > 0.0) {
    add(check(resolve_drg(cfg), max_frame_airtime(cfg)));
  } else if (!(cfg.drg.cr_threshold > 0.0) || cfg.drg.cr_threshold > kMaxCoverageRatioThreshold) {
    out.push_back("drg.cr_threshold: must lie in (0, 0.78]");
  }
  add(check(cfg.flood));
  if (sim_end_time(cfg) < origination_time(cfg)) out.push_back("sim_end_s: must not precede origination");
  return out;
}

namespace {

RectRegion scenario_zor(const ScenarioConfig& cfg, const MobilityModel& world, NodeId origin) {
  const Point at = world.position(origin);
  switch (cfg.scenario) {
    case ScenarioKind::kHighway: {
      const auto& h = cfg.highway;
      return {at.x - h.zor_behind, -h.zor_width / 2.0, at.x, h.zor_width / 2.0};
    }
    case ScenarioKind::kGrid: {
      const double half = cfg.grid.zor_side / 2.0;
      return {at.x - half, at.y - half, at.x + half, at.y + half};
    }
    case ScenarioKind::kCustom:
      return cfg.custom.zor;
  }
  return {};
}

}  // namespace

std::unique_ptr<Simulation> build(const ScenarioConfig& cfg, ProtocolKind protocol,
                                  double density, std::uint64_t seed, bool trace) {
  if (auto v = validate(cfg); !v.empty()) {
    throw std::invalid_argument("invalid configuration: " + v.front());
  }
  Simulation::Setup setup;
  setup.radio = cfg.radio;
  setup.protocol = protocol;
  setup.drg = resolve_drg(cfg);
  setup.flood = cfg.flood;
  setup.seed = seed;
  setup.mobility_dt = cfg.mobility_dt;
  setup.trace = trace;

  switch (cfg.scenario) {
    case ScenarioKind::kHighway: {
      HighwayConfig hc = cfg.highway.mobility;
      hc.density = density;
      setup.mobility = [hc](RandomStreams& rng) { return std::make_unique<HighwayMobility>(hc, rng); };
      break;
    }
    case ScenarioKind::kGrid: {
      GridConfig gc = cfg.grid.mobility;
      gc.vehicle_count = static_cast<int>(density);
      setup.mobility = [gc](RandomStreams& rng) { return std::make_unique<GridMobility>(gc, rng); };
      break;
    }
    case ScenarioKind::kCustom: {
      auto specs = cfg.custom.vehicles;
      const double v_max = cfg.custom.v_max;
      setup.mobility = [specs, v_max](RandomStreams&) {
        return std::make_unique<ScriptedMobility>(specs, v_max);
      };
      break;
    }
  }

  auto sim = std::make_unique<Simulation>(std::move(setup));
  Simulation* s = sim.get();
  // The ZOR depends on where the origin is at origination time.
  auto shared = std::make_shared<const ScenarioConfig>(cfg);
  s->at(origination_time(cfg), EventKind::kMessageOrigination, [s, shared] {
    s->sync_world();
    NodeId origin = shared->custom.origin;
    if (shared->scenario == ScenarioKind::kHighway) {
      origin = dynamic_cast<HighwayMobility&>(s->world()).crash_lead();
    } else if (shared->scenario == ScenarioKind::kGrid) {
      origin = dynamic_cast<GridMobility&>(s->world()).source();
    }
    s->protocol().originate(origin, scenario_zor(*shared, s->world(), origin),
                            shared->payload_bytes, shared->drg.ttl);
  });
  return sim;
}

RunResult run(const ScenarioConfig& cfg, ProtocolKind protocol, double density,
              std::uint64_t seed) {
  auto sim = build(cfg, protocol, density, seed);
  sim->run(sim_end_time(cfg));
  RunResult r;
  r.scenario = cfg.scenario;
  r.protocol = protocol;
  r.density = density;
  r.seed = seed;
  r.metrics = sim->finish();
  r.leftover_protocol_events = sim->engine().pending_protocol_events();
  return r;
}

namespace {

struct Task {
  double density;
  ProtocolKind protocol;
  std::uint64_t seed;
};

std::vector<Task> sweep_tasks(const ScenarioConfig& cfg) {
  std::vector<Task> tasks;
  for (double d : cfg.densities) {
    for (ProtocolKind p : cfg.protocols) {
      for (std::uint32_t r = 0; r < cfg.replicas; ++r) tasks.push_back({d, p, cfg.seed + r});
    }
  }
  return tasks;
}

}  // namespace

std::vector<RunResult> sweep_serial(const ScenarioConfig& cfg) {
  std::vector<RunResult> out;
  for (const Task& t : sweep_tasks(cfg)) out.push_back(run(cfg, t.protocol, t.density, t.seed));
  return out;
}

std::vector<RunResult> sweep(const ScenarioConfig& cfg, int jobs) {
  if (auto v = validate(cfg); !v.empty()) {
    throw std::invalid_argument("invalid configuration: " + v.front());
  }
  const std::vector<Task> tasks = sweep_tasks(cfg);
  std::vector<RunResult> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  const auto n = static_cast<std::int64_t>(tasks.size());
  const int threads = std::max(1, jobs);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      const Task& t = tasks[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i)] = run(cfg, t.protocol, t.density, t.seed);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<ThetaRow> theta_table(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  std::vector<ThetaRow> rows;
  rows.reserve(xs.size());
  for (double x : xs) {
    const ThetaSolution s = solve_theta(x);
    rows.push_back({x, s.d_root, to_degrees(s.theta_min)});
  }
  return rows;
}

}  // namespace drg
