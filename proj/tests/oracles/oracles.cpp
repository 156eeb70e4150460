#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "drg/random.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace drg::oracle {

namespace {

// Counts hits for one chunk of uniform samples in the disk around `c`.
template <typename Hit>
std::uint64_t sample_chunk(Point c, double r, std::uint64_t chunk, std::uint64_t n,
                           std::uint64_t seed, const Hit& hit) {
  RandomStream rng(seed, static_cast<NodeId>(chunk), StreamPurpose::kOracle);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double rad = r * std::sqrt(rng.uniform01());
    const double ang = 2.0 * std::numbers::pi * rng.uniform01();
    if (hit(c.x + rad * std::cos(ang), c.y + rad * std::sin(ang))) ++hits;
  }
  return hits;
}

template <typename Hit>
std::uint64_t count_serial(Point c, double r, std::uint64_t samples, std::uint64_t seed,
                           const Hit& hit) {
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < chunks; ++k) {
    const std::uint64_t n = std::min(kChunk, samples - k * kChunk);
    hits += sample_chunk(c, r, k, n, seed, hit);
  }
  return hits;
}

template <typename Hit>
std::uint64_t count_parallel(Point c, double r, std::uint64_t samples, std::uint64_t seed,
                             int threads, const Hit& hit) {
  const auto chunks = static_cast<std::int64_t>((samples + kChunk - 1) / kChunk);
  std::uint64_t hits = 0;
#ifdef _OPENMP
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#else
  const int nt = 1;
  (void)threads;
#endif
#pragma omp parallel for reduction(+ : hits) schedule(static) num_threads(nt)
  for (std::int64_t k = 0; k < chunks; ++k) {
    const auto ku = static_cast<std::uint64_t>(k);
    const std::uint64_t n = std::min(kChunk, samples - ku * kChunk);
    hits += sample_chunk(c, r, ku, n, seed, hit);
  }
  return hits;
}

McEstimate fraction(std::uint64_t hits, std::uint64_t n, double scale) {
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {scale * p, scale * std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n};
}

auto union_hit(std::span<const Point> senders, double r) {
  return [senders, r2 = r * r](double x, double y) {
    for (const Point& s : senders) {
      const double dx = x - s.x, dy = y - s.y;
      if (dx * dx + dy * dy <= r2) return true;
    }
    return false;
  };
}

auto lens_hit(double d, double r) {
  return [d, r2 = r * r](double x, double y) { return (x - d) * (x - d) + y * y <= r2; };
}

}  // namespace

McEstimate union_coverage_fraction(Point o, std::span<const Point> senders, double r,
                                   std::uint64_t samples, std::uint64_t seed) {
  return fraction(count_serial(o, r, samples, seed, union_hit(senders, r)), samples, 1.0);
}

McEstimate union_coverage_fraction_parallel(Point o, std::span<const Point> senders, double r,
                                            std::uint64_t samples, std::uint64_t seed,
                                            int threads) {
  return fraction(count_parallel(o, r, samples, seed, threads, union_hit(senders, r)), samples,
                  1.0);
}

McEstimate lens_area_mc(double d, double r, std::uint64_t samples, std::uint64_t seed) {
  return fraction(count_serial({0, 0}, r, samples, seed, lens_hit(d, r)), samples,
                  std::numbers::pi * r * r);
}

McEstimate lens_area_mc_parallel(double d, double r, std::uint64_t samples, std::uint64_t seed,
                                 int threads) {
  return fraction(count_parallel({0, 0}, r, samples, seed, threads, lens_hit(d, r)), samples,
                  std::numbers::pi * r * r);
}

std::vector<int> bfs_hops(std::span<const Point> nodes, double r, std::size_t source) {
  std::vector<int> hops(nodes.size(), -1);
  std::deque<std::size_t> queue{source};
  hops[source] = 0;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      if (hops[v] >= 0) continue;
      const double dx = nodes[u].x - nodes[v].x, dy = nodes[u].y - nodes[v].y;
      if (dx * dx + dy * dy <= r * r) {
        hops[v] = hops[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return hops;
}

double theta_bisect_root(double x) {
  const double rhs = (0.78 - x) * std::numbers::pi;
  auto f = [rhs](double d) {
    return 2.0 * std::acos(d / 2.0) - (d / 2.0) * std::sqrt(std::max(0.0, 4.0 - d * d)) - rhs;
  };
  double lo = 0.0, hi = 2.0;
  double mid = 1.0;
  for (int i = 0; i < 200; ++i) {
    mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) < 1e-9) break;
    (fm > 0.0 ? lo : hi) = mid;
  }
  return mid;
}

RunMetrics replay(const MetricsLog& log) {
  RunMetrics m;
  for (const auto& s : log.snapshots) {
    m.zor_snapshot_count += s.members.size();
    m.app_bytes += s.payload_bytes;
  }
  double sum = 0.0, snap_sum = 0.0;
  std::uint64_t snap_n = 0;
  for (const auto& d : log.deliveries) {
    const MetricsLog::Snapshot* snap = nullptr;
    for (const auto& s : log.snapshots) {
      if (s.message == d.message) snap = &s;
    }
    const double delay = d.time - snap->created_at;
    m.delays.push_back(delay);
    sum += delay;
    ++m.delivered_count;
    m.max_delivery_hops = std::max(m.max_delivery_hops, d.hops);
    bool member = false;
    for (NodeId n : snap->members) member = member || n == d.node;
    if (member) {
      ++m.delivered_snapshot_count;
      snap_sum += delay;
      ++snap_n;
    }
  }
  if (m.zor_snapshot_count) {
    m.pdr_pct = 100.0 * static_cast<double>(m.delivered_count) / static_cast<double>(m.zor_snapshot_count);
    m.pdr_snapshot_pct =
        100.0 * static_cast<double>(m.delivered_snapshot_count) / static_cast<double>(m.zor_snapshot_count);
  }
  if (!m.delays.empty()) {
    m.mean_delay = sum / static_cast<double>(m.delays.size());
    std::vector<double> s = m.delays;
    std::sort(s.begin(), s.end());
    auto nearest_rank = [&s](double p) {
      std::size_t k = 1;
      while (static_cast<double>(k) < p * static_cast<double>(s.size())) ++k;
      return s[k - 1];
    };
    m.p50_delay = nearest_rank(0.50);
    m.p95_delay = nearest_rank(0.95);
  }
  if (snap_n) m.snapshot_mean_delay = snap_sum / static_cast<double>(snap_n);
  for (const auto& t : log.transmissions) {
    ++m.tx_count;
    (t.kind == FrameKind::kData ? m.data_tx_count : m.persistence_tx_count) += 1;
    m.network_bytes_tx += t.network_bytes;
  }
  if (m.app_bytes) m.overhead_ratio = static_cast<double>(m.network_bytes_tx) / static_cast<double>(m.app_bytes);
  m.collisions = log.collisions;
  return m;
}

}  // namespace drg::oracle
