#include "drg/geom.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace drg {

RectRegion make_region(double min_x, double min_y, double max_x, double max_y) {
  if (!(min_x < max_x) || !(min_y < max_y)) {
    throw std::invalid_argument("region bounds must satisfy min < max");
  }
  return {min_x, min_y, max_x, max_y};
}

double dist(Point p, Point q) { return std::hypot(p.x - q.x, p.y - q.y); }

double angle_at(Point o, Point p, Point q) {
  const double ax = p.x - o.x, ay = p.y - o.y;
  const double bx = q.x - o.x, by = q.y - o.y;
  if ((ax == 0.0 && ay == 0.0) || (bx == 0.0 && by == 0.0)) {
    throw std::domain_error("angle_at: endpoint coincides with vertex");
  }
  // atan2 stays accurate near 0 and pi where acos loses precision.
  const double cross = ax * by - ay * bx;
  const double dot = ax * bx + ay * by;
  return std::atan2(std::abs(cross), dot);
}

double lens_area(double d, double r) {
  if (d < 0.0 || !(r > 0.0)) {
    throw std::domain_error("lens_area: requires d >= 0 and r > 0");
  }
  if (d >= 2.0 * r) return 0.0;
  if (d == 0.0) return std::numbers::pi * r * r;
  return 2.0 * r * r * std::acos(d / (2.0 * r)) - 0.5 * d * std::sqrt(4.0 * r * r - d * d);
}

double coverage_ratio_pair(double d, double r) {
  if (!(r > 0.0)) throw std::domain_error("coverage_ratio_pair: r must be positive");
  return lens_area(d, r) / (std::numbers::pi * r * r);
}

ThetaSolution solve_theta(double x) {
  if (!(x > 0.0) || x > kMaxCoverageRatioThreshold) {
    throw std::domain_error("coverage ratio threshold must lie in (0, 0.78], got " +
                            std::to_string(x));
  }
  const double target = (kMaxCoverageRatioThreshold - x) * std::numbers::pi;
  auto f = [target](double d) { return lens_area(d, 1.0) - target; };

  double lo = 1e-12;
  double hi = 2.0;
  double root = hi;
  if (f(hi) < 0.0) {
    while (hi - lo > 1e-9) {
      const double mid = 0.5 * (lo + hi);
      if (f(mid) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    root = 0.5 * (lo + hi);
  }
  const double half = std::min(1.0, root / 2.0);
  return {root, 2.0 * std::asin(half)};
}

bool in_region(Point p, const RectRegion& r) {
  return p.x >= r.min_x && p.x <= r.max_x && p.y >= r.min_y && p.y <= r.max_y;
}

RectRegion expand_region(const RectRegion& r, double margin) {
  if (margin < 0.0) throw std::invalid_argument("expand_region: negative margin");
  return {r.min_x - margin, r.min_y - margin, r.max_x + margin, r.max_y + margin};
}

CoverageParams make_coverage_params(double r_tx, double cr_threshold) {
  if (!(r_tx > 0.0)) throw std::invalid_argument("r_tx must be positive");
  return {r_tx, cr_threshold, solve_theta_min(cr_threshold)};
}

}  // namespace drg
