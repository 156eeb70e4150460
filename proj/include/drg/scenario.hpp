#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drg/simulation.hpp"

namespace drg {

enum class ScenarioKind { kHighway, kGrid, kCustom };

const char* to_string(ScenarioKind kind);

struct HighwayScenario {
  HighwayConfig mobility;
  double crash_time = 3.0;
  double zor_width = 300.0;   // centered on the road axis
  double zor_behind = 1500.0;  // extent behind the crashed vehicle
};

struct GridScenario {
  GridConfig mobility;
  double origin_time = 3.0;
  double zor_side = 1000.0;  // square centered on the source
};

struct CustomScenario {
  std::vector<ScriptedMobility::Spec> vehicles;
  double v_max = 33.33;
  NodeId origin = 0;
  RectRegion zor{0.0, 0.0, 1.0, 1.0};
  double origin_time = 1.0;
};

/// User-facing DRG settings. Unset timing values are derived from the radio
/// and mobility configuration when a run is assembled.
struct DrgConfig {
  std::optional<double> max_bo_d;   // default: 2 x max frame airtime
  std::optional<double> long_bo_d;  // default: r_tx / v_max
  double s_d = 1.0;
  std::uint32_t max_retx = 3;
  double cr_threshold = 0.6;
  double epsilon = 1.0;
  double cw_min = 0.0;
  double cw_max = 0.1;
  double jitter_cw = 16 * 20e-6;
  double ttl = 15.0;
  bool persistence = true;
  bool origin_single_ack = true;
};

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::kHighway;
  HighwayScenario highway;
  GridScenario grid;
  CustomScenario custom;
  RadioParams radio;
  std::vector<ProtocolKind> protocols{ProtocolKind::kDrg};
  DrgConfig drg;
  FloodParams flood;
  std::uint32_t payload_bytes = 200;
  std::optional<double> sim_end;  // default: origination + ttl + 1 s
  double mobility_dt = 0.1;
  std::uint64_t seed = 1;
  std::uint32_t replicas = 1;
  // Highway: vehicles per km per lane. Grid: total vehicle count.
  // Ignored by custom scenarios.
  std::vector<double> densities{10.0};
};

/// Empty iff the configuration is runnable. Each entry names the field and
/// the violated bound.
std::vector<std::string> validate(const ScenarioConfig& cfg);

double scenario_v_max(const ScenarioConfig& cfg);
double origination_time(const ScenarioConfig& cfg);
double sim_end_time(const ScenarioConfig& cfg);
double max_frame_airtime(const ScenarioConfig& cfg);

DrgParams resolve_drg(const ScenarioConfig& cfg);

/// Builds a simulation with the message origination already scheduled.
std::unique_ptr<Simulation> build(const ScenarioConfig& cfg, ProtocolKind protocol,
                                  double density, std::uint64_t seed, bool trace = false);

struct RunResult {
  ScenarioKind scenario = ScenarioKind::kHighway;
  ProtocolKind protocol = ProtocolKind::kDrg;
  double density = 0.0;
  std::uint64_t seed = 0;
  RunMetrics metrics;
  std::size_t leftover_protocol_events = 0;  // after sim end; 0 means quiescent
};

/// Runs one simulation to sim end. Throws std::invalid_argument when the
/// configuration fails validation.
RunResult run(const ScenarioConfig& cfg, ProtocolKind protocol, double density,
              std::uint64_t seed);

/// Cross product densities x protocols x replicas; replica r uses seed + r.
/// Row order is fixed by that nesting regardless of how runs are scheduled.
std::vector<RunResult> sweep(const ScenarioConfig& cfg, int jobs);

/// Same rows as sweep(), computed one after another on the calling thread.
std::vector<RunResult> sweep_serial(const ScenarioConfig& cfg);

struct ThetaRow {
  double x = 0.0;
  double d_root = 0.0;
  double theta_min_deg = 0.0;
};

/// One row per threshold, sorted ascending by x. Throws std::domain_error for
/// any x outside (0, 0.78].
std::vector<ThetaRow> theta_table(std::vector<double> xs);

}  // namespace drg
