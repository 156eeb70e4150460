#include "drg/config_json.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace drg {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(where + key + ": unknown field");
  }
}

template <typename T>
void read(const json& obj, const char* key, const std::string& where, T& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + key + ": wrong type");
  }
}

template <typename T>
void read(const json& obj, const char* key, const std::string& where, std::optional<T>& out) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return;
  T v{};
  read(obj, key, where, v);
  out = v;
}

const json& object_at(const json& root, const char* key) {
  static const json kEmpty = json::object();
  auto it = root.find(key);
  if (it == root.end()) return kEmpty;
  if (!it->is_object()) throw ConfigError(std::string(key) + ": must be an object");
  return *it;
}

ProtocolKind parse_protocol(const std::string& s) {
  if (s == "drg") return ProtocolKind::kDrg;
  if (s == "flood") return ProtocolKind::kFlood;
  throw ConfigError("protocol: expected \"drg\" or \"flood\", got \"" + s + "\"");
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("parse error: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(root, "",
                 {"scenario", "protocol", "protocols", "densities", "seed", "replicas",
                  "payload_bytes", "sim_end_s", "mobility_dt_s", "highway", "grid", "custom",
                  "radio", "drg", "flood"});

  ScenarioConfig cfg;
  std::string scenario = "highway";
  read(root, "scenario", "", scenario);
  if (scenario == "highway") {
    cfg.scenario = ScenarioKind::kHighway;
  } else if (scenario == "grid") {
    cfg.scenario = ScenarioKind::kGrid;
  } else if (scenario == "custom") {
    cfg.scenario = ScenarioKind::kCustom;
  } else {
    throw ConfigError("scenario: expected highway, grid or custom");
  }

  if (root.contains("protocol") && root.contains("protocols")) {
    throw ConfigError("protocol: give either protocol or protocols, not both");
  }
  if (root.contains("protocol")) {
    std::string p;
    read(root, "protocol", "", p);
    cfg.protocols = {parse_protocol(p)};
  } else if (root.contains("protocols")) {
    std::vector<std::string> ps;
    read(root, "protocols", "", ps);
    cfg.protocols.clear();
    for (const auto& p : ps) cfg.protocols.push_back(parse_protocol(p));
  }
  read(root, "densities", "", cfg.densities);
  read(root, "seed", "", cfg.seed);
  read(root, "replicas", "", cfg.replicas);
  read(root, "payload_bytes", "", cfg.payload_bytes);
  read(root, "sim_end_s", "", cfg.sim_end);
  read(root, "mobility_dt_s", "", cfg.mobility_dt);

  {
    const json& h = object_at(root, "highway");
    const std::string w = "highway.";
    reject_unknown(h, w,
                   {"length_m", "lanes_per_direction", "lane_width_m", "v_max_mps",
                    "standoff_gap_m", "crash_time_s", "zor_width_m", "zor_behind_m"});
    auto& hc = cfg.highway;
    read(h, "length_m", w, hc.mobility.length);
    read(h, "lanes_per_direction", w, hc.mobility.lanes_per_direction);
    read(h, "lane_width_m", w, hc.mobility.lane_width);
    read(h, "v_max_mps", w, hc.mobility.v_max);
    read(h, "standoff_gap_m", w, hc.mobility.standoff_gap);
    read(h, "crash_time_s", w, hc.crash_time);
    read(h, "zor_width_m", w, hc.zor_width);
    read(h, "zor_behind_m", w, hc.zor_behind);
  }
  {
    const json& g = object_at(root, "grid");
    const std::string w = "grid.";
    reject_unknown(g, w, {"side_m", "block_m", "v_max_mps", "origin_time_s", "zor_side_m"});
    auto& gc = cfg.grid;
    read(g, "side_m", w, gc.mobility.side);
    read(g, "block_m", w, gc.mobility.block);
    read(g, "v_max_mps", w, gc.mobility.v_max);
    read(g, "origin_time_s", w, gc.origin_time);
    read(g, "zor_side_m", w, gc.zor_side);
  }
  {
    const json& c = object_at(root, "custom");
    const std::string w = "custom.";
    reject_unknown(c, w, {"v_max_mps", "origin", "origin_time_s", "zor", "vehicles"});
    auto& cc = cfg.custom;
    read(c, "v_max_mps", w, cc.v_max);
    read(c, "origin", w, cc.origin);
    read(c, "origin_time_s", w, cc.origin_time);
    if (c.contains("zor")) {
      std::vector<double> b;
      read(c, "zor", w, b);
      if (b.size() != 4) throw ConfigError("custom.zor: expected [min_x, min_y, max_x, max_y]");
      cc.zor = {b[0], b[1], b[2], b[3]};
    }
    if (c.contains("vehicles")) {
      if (!c["vehicles"].is_array()) throw ConfigError("custom.vehicles: must be an array");
      for (const json& v : c["vehicles"]) {
        const std::string vw = "custom.vehicles[].";
        if (!v.is_object()) throw ConfigError("custom.vehicles: entries must be objects");
        reject_unknown(v, vw, {"x", "y", "vx", "vy"});
        ScriptedMobility::Spec s;
        read(v, "x", vw, s.position.x);
        read(v, "y", vw, s.position.y);
        read(v, "vx", vw, s.velocity.x);
        read(v, "vy", vw, s.velocity.y);
        cc.vehicles.push_back(s);
      }
    }
  }
  {
    const json& r = object_at(root, "radio");
    const std::string w = "radio.";
    reject_unknown(r, w, {"r_tx_m", "bitrate_bps", "header_bytes", "p_loss", "carrier_sense"});
    read(r, "r_tx_m", w, cfg.radio.r_tx);
    read(r, "bitrate_bps", w, cfg.radio.bitrate);
    read(r, "header_bytes", w, cfg.radio.header_bytes);
    read(r, "p_loss", w, cfg.radio.p_loss);
    read(r, "carrier_sense", w, cfg.radio.carrier_sense);
  }
  {
    const json& d = object_at(root, "drg");
    const std::string w = "drg.";
    reject_unknown(d, w,
                   {"max_bo_d_s", "long_bo_d_s", "s_d", "max_retx", "cr_threshold", "epsilon",
                    "cw_min_s", "cw_max_s", "jitter_cw_s", "ttl_s", "persistence",
                    "origin_single_ack"});
    auto& dc = cfg.drg;
    read(d, "max_bo_d_s", w, dc.max_bo_d);
    read(d, "long_bo_d_s", w, dc.long_bo_d);
    read(d, "s_d", w, dc.s_d);
    read(d, "max_retx", w, dc.max_retx);
    read(d, "cr_threshold", w, dc.cr_threshold);
    read(d, "epsilon", w, dc.epsilon);
    read(d, "cw_min_s", w, dc.cw_min);
    read(d, "cw_max_s", w, dc.cw_max);
    read(d, "jitter_cw_s", w, dc.jitter_cw);
    read(d, "ttl_s", w, dc.ttl);
    read(d, "persistence", w, dc.persistence);
    read(d, "origin_single_ack", w, dc.origin_single_ack);
  }
  {
    const json& f = object_at(root, "flood");
    const std::string w = "flood.";
    reject_unknown(f, w, {"slot_s", "cw_slots", "ttl_hops"});
    read(f, "slot_s", w, cfg.flood.slot);
    read(f, "cw_slots", w, cfg.flood.cw_slots);
    read(f, "ttl_hops", w, cfg.flood.ttl_hops);
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace drg
