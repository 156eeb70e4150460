#include "drg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace drg {

namespace {

// Nearest-rank percentile of a sorted sample.
double percentile(const std::vector<double>& sorted, double p) {
  const auto n = sorted.size();
  auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  return sorted[rank - 1];
}

std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

void MetricsCollector::snapshot_zor(MessageId message, std::span<const NodeId> members,
                                    double created_at, std::uint32_t payload_bytes) {
  if (snapshot_index_.contains(message)) {
    throw std::logic_error("snapshot_zor: message already snapshotted");
  }
  snapshot_index_[message] = log_.snapshots.size();
  std::vector<NodeId> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  log_.snapshots.push_back({message, std::move(sorted), created_at, payload_bytes});
}

void MetricsCollector::record_delivery(NodeId node, MessageId message, double now,
                                       std::uint32_t hops) {
  if (!snapshot_index_.contains(message)) {
    throw std::logic_error("record_delivery: message has no ZOR snapshot");
  }
  if (!seen_.insert({message, node}).second) {
    throw std::logic_error("record_delivery: duplicate delivery");
  }
  log_.deliveries.push_back({node, message, now, hops});
}

void MetricsCollector::record_tx(const Frame& frame, double now) {
  log_.transmissions.push_back(
      {frame.message, frame.sender, frame.kind, frame.network_bytes, now});
}

RunMetrics MetricsCollector::finalize(const MetricsLog& log) {
  RunMetrics m;
  std::map<MessageId, const MetricsLog::Snapshot*> snaps;
  for (const auto& s : log.snapshots) {
    snaps[s.message] = &s;
    m.zor_snapshot_count += s.members.size();
    m.app_bytes += s.payload_bytes;
  }

  std::vector<double> snapshot_delays;
  for (const auto& d : log.deliveries) {
    const auto* s = snaps.at(d.message);
    const double delay = d.time - s->created_at;
    m.delays.push_back(delay);
    ++m.delivered_count;
    m.max_delivery_hops = std::max(m.max_delivery_hops, d.hops);
    if (std::binary_search(s->members.begin(), s->members.end(), d.node)) {
      ++m.delivered_snapshot_count;
      snapshot_delays.push_back(delay);
    }
  }
  if (m.zor_snapshot_count > 0) {
    const auto denom = static_cast<double>(m.zor_snapshot_count);
    m.pdr_pct = 100.0 * static_cast<double>(m.delivered_count) / denom;
    m.pdr_snapshot_pct = 100.0 * static_cast<double>(m.delivered_snapshot_count) / denom;
  }

  m.mean_delay = mean_of(m.delays);
  m.snapshot_mean_delay = mean_of(snapshot_delays);
  if (!m.delays.empty()) {
    std::vector<double> sorted = m.delays;
    std::sort(sorted.begin(), sorted.end());
    m.p50_delay = percentile(sorted, 0.50);
    m.p95_delay = percentile(sorted, 0.95);
  }

  for (const auto& t : log.transmissions) {
    ++m.tx_count;
    if (t.kind == FrameKind::kData) {
      ++m.data_tx_count;
    } else {
      ++m.persistence_tx_count;
    }
    m.network_bytes_tx += t.network_bytes;
  }
  if (m.app_bytes > 0) {
    m.overhead_ratio = static_cast<double>(m.network_bytes_tx) / static_cast<double>(m.app_bytes);
  }
  m.collisions = log.collisions;
  return m;
}

}  // namespace drg
