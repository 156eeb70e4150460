#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>

#include "drg/scenario.hpp"

namespace drg {

/// Shortest decimal string that round-trips to the same double.
std::string format_number(double v);

/// Column order of the results table.
inline constexpr const char* kCsvColumns[] = {
    "scenario",         "protocol",       "density",      "seed",
    "zor_snapshot_count", "delivered_count", "pdr_pct",    "pdr_snapshot_pct",
    "mean_delay_s",     "p50_delay_s",    "p95_delay_s",  "tx_count",
    "network_bytes_tx", "overhead_ratio", "collisions",
};

void write_csv(std::ostream& out, std::span<const RunResult> rows);

/// JSON array with the CSV columns plus diagnostic extras per row.
void write_json(std::ostream& out, std::span<const RunResult> rows);

void write_theta_csv(std::ostream& out, std::span<const ThetaRow> rows);

}  // namespace drg
