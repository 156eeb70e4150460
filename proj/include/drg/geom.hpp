#pragma once

#include <cmath>
#include <numbers>

namespace drg {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned rectangle. Membership is boundary-inclusive.
struct RectRegion {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  friend bool operator==(const RectRegion&, const RectRegion&) = default;
};

/// Validates min < max on both axes; throws std::invalid_argument otherwise.
RectRegion make_region(double min_x, double min_y, double max_x, double max_y);

double dist(Point p, Point q);

/// Angle subtended at `o` by `p` and `q`, in [0, pi].
/// Throws std::domain_error if either endpoint coincides with `o`.
double angle_at(Point o, Point p, Point q);

/// Area of the intersection of two disks of radius r whose centers are d apart.
double lens_area(double d, double r);

/// Overlap area of two equal disks relative to one disk's area.
double coverage_ratio_pair(double d, double r);

/// Largest coverage-ratio threshold for which a relay flanked by two
/// edge-of-range senders can still be suppressed.
inline constexpr double kMaxCoverageRatioThreshold = 0.78;

struct ThetaSolution {
  double d_root = 0.0;     // chord length on the unit circle
  double theta_min = 0.0;  // radians
};

/// Maps a coverage-ratio threshold x in (0, 0.78] to the minimum angle two
/// senders must subtend at a node for its retransmission to be redundant.
/// Bisection on the unit-disk lens area; the root is unique since the lens
/// area is strictly decreasing in d.
ThetaSolution solve_theta(double x);

inline double solve_theta_min(double x) { return solve_theta(x).theta_min; }

bool in_region(Point p, const RectRegion& r);

RectRegion expand_region(const RectRegion& r, double margin);

struct CoverageParams {
  double r_tx = 300.0;
  double cr_threshold = 0.6;
  double theta_min = 0.0;
};

/// Builds CoverageParams with theta_min solved from cr_threshold.
CoverageParams make_coverage_params(double r_tx, double cr_threshold);

inline double to_degrees(double rad) { return rad * 180.0 / std::numbers::pi; }
inline double to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace drg
