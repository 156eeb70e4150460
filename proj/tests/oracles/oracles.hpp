#pragma once

// Test-only reference computations. Nothing here is used by the simulator;
// the point is to check it by an independent route.

#include <cstdint>
#include <span>
#include <vector>

#include "drg/geom.hpp"
#include "drg/metrics.hpp"

namespace drg::oracle {

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

// Samples are drawn in fixed-size chunks, each from its own stream, so the
// serial and OpenMP variants return bit-identical estimates.
inline constexpr std::uint64_t kChunk = 4096;

/// Fraction of the disk around `o` covered by the union of sender disks.
McEstimate union_coverage_fraction(Point o, std::span<const Point> senders, double r,
                                   std::uint64_t samples = 100000, std::uint64_t seed = 1);
McEstimate union_coverage_fraction_parallel(Point o, std::span<const Point> senders, double r,
                                            std::uint64_t samples = 100000,
                                            std::uint64_t seed = 1, int threads = 0);

/// Area of overlap of two radius-r disks at distance d.
McEstimate lens_area_mc(double d, double r, std::uint64_t samples, std::uint64_t seed = 1);
McEstimate lens_area_mc_parallel(double d, double r, std::uint64_t samples,
                                 std::uint64_t seed = 1, int threads = 0);

/// Hop distance from `source` over the unit-disk graph; -1 when unreachable.
std::vector<int> bfs_hops(std::span<const Point> nodes, double r, std::size_t source);

/// Unit-circle root of lens(d) = (0.78 - x) * pi, by bisection until
/// |f| < 1e-9 (written independently of geom's solver).
double theta_bisect_root(double x);

/// Recomputes the aggregate metrics from a raw log with plain loops.
RunMetrics replay(const MetricsLog& log);

}  // namespace drg::oracle
