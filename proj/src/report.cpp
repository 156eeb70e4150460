#include "drg/report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace drg {

std::string format_number(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("format_number: non-finite value");
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_number: to_chars failed");
  return std::string(buf, end);
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

void write_csv(std::ostream& out, std::span<const RunResult> rows) {
  bool first = true;
  for (const char* c : kCsvColumns) {
    out << (first ? "" : ",") << c;
    first = false;
  }
  out << '\n';
  for (const RunResult& r : rows) {
    const RunMetrics& m = r.metrics;
    out << to_string(r.scenario) << ',' << to_string(r.protocol) << ','
        << format_number(r.density) << ',' << r.seed << ',' << m.zor_snapshot_count << ','
        << m.delivered_count << ',' << format_number(m.pdr_pct) << ','
        << format_number(m.pdr_snapshot_pct) << ',' << opt(m.mean_delay) << ','
        << opt(m.p50_delay) << ',' << opt(m.p95_delay) << ',' << m.tx_count << ','
        << m.network_bytes_tx << ',' << format_number(m.overhead_ratio) << ',' << m.collisions
        << '\n';
  }
}

void write_json(std::ostream& out, std::span<const RunResult> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const RunResult& r : rows) {
    const RunMetrics& m = r.metrics;
    arr.push_back({
        {"scenario", to_string(r.scenario)},
        {"protocol", to_string(r.protocol)},
        {"density", r.density},
        {"seed", r.seed},
        {"zor_snapshot_count", m.zor_snapshot_count},
        {"delivered_count", m.delivered_count},
        {"pdr_pct", m.pdr_pct},
        {"pdr_snapshot_pct", m.pdr_snapshot_pct},
        {"mean_delay_s", opt_json(m.mean_delay)},
        {"p50_delay_s", opt_json(m.p50_delay)},
        {"p95_delay_s", opt_json(m.p95_delay)},
        {"tx_count", m.tx_count},
        {"network_bytes_tx", m.network_bytes_tx},
        {"overhead_ratio", m.overhead_ratio},
        {"collisions", m.collisions},
        {"snapshot_mean_delay_s", opt_json(m.snapshot_mean_delay)},
        {"data_tx_count", m.data_tx_count},
        {"persistence_tx_count", m.persistence_tx_count},
        {"app_bytes", m.app_bytes},
        {"max_delivery_hops", m.max_delivery_hops},
        {"leftover_protocol_events", r.leftover_protocol_events},
    });
  }
  out << arr.dump(2) << '\n';
}

void write_theta_csv(std::ostream& out, std::span<const ThetaRow> rows) {
  out << "x,d_root,theta_min_deg\n";
  for (const ThetaRow& r : rows) {
    out << format_number(r.x) << ',' << format_number(r.d_root) << ','
        << format_number(r.theta_min_deg) << '\n';
  }
}

}  // namespace drg
