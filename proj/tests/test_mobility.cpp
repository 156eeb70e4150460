#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "drg/mobility.hpp"

using namespace drg;

namespace {

bool on_grid_line(Point p, double block, double side) {
  auto on = [block](double v) { return std::abs(v / block - std::round(v / block)) < 1e-9; };
  const bool inside = p.x >= -1e-9 && p.x <= side + 1e-9 && p.y >= -1e-9 && p.y <= side + 1e-9;
  return inside && (on(p.x) || on(p.y));
}

}  // namespace

TEST_SUITE("mobility") {
  TEST_CASE("highway population follows density") {
    RandomStreams rng(1);
    HighwayConfig cfg;
    cfg.length = 10000;
    cfg.density = 10;
    HighwayMobility h(cfg, rng);
    CHECK(h.size() == 600);
    std::map<int, int> per_lane;
    for (const auto& v : h.vehicles()) {
      ++per_lane[v.lane];
      CHECK(v.position.y == h.lane_y(v.lane));
      CHECK(v.position.x >= 0.0);
      CHECK(v.position.x < cfg.length);
    }
    CHECK(per_lane.size() == 6);
    for (auto [lane, n] : per_lane) CHECK(n == 100);
  }

  TEST_CASE("highway degenerate density keeps one vehicle per lane") {
    RandomStreams rng(1);
    HighwayConfig cfg;
    cfg.length = 2000;
    cfg.density = 0.1;
    HighwayMobility h(cfg, rng);
    CHECK(h.size() == 6);
    cfg.density = 0;
    CHECK_THROWS(HighwayMobility(cfg, rng));
  }

  TEST_CASE("highway lanes are split by direction") {
    RandomStreams rng(3);
    HighwayConfig cfg;
    cfg.length = 2000;
    HighwayMobility h(cfg, rng);
    for (const auto& v : h.vehicles()) {
      if (v.position.y > 0) {
        CHECK(v.velocity.x > 0);
      } else {
        CHECK(v.velocity.x < 0);
      }
      CHECK(std::abs(v.velocity.x) <= cfg.v_max);
      CHECK(std::abs(v.velocity.x) >= 0.8 * cfg.v_max);
    }
    const NodeId lead = h.lead();
    for (const auto& v : h.vehicles()) {
      if (v.position.y > 0) CHECK(v.position.x <= h.position(lead).x);
    }
  }

  TEST_CASE("vehicles queue behind the crashed lead") {
    RandomStreams rng(5);
    HighwayConfig cfg;
    cfg.length = 2000;
    cfg.density = 20;
    HighwayMobility h(cfg, rng);
    const NodeId lead = h.crash_lead();
    const Point crash = h.position(lead);
    const int lane = h.vehicles()[lead].lane;
    for (int i = 0; i < 600; ++i) h.tick(0.1);
    CHECK(h.position(lead) == crash);
    CHECK(h.vehicles()[lead].stopped);
    std::vector<double> xs;
    for (const auto& v : h.vehicles()) {
      if (v.lane == lane) xs.push_back(v.position.x);
    }
    std::sort(xs.rbegin(), xs.rend());
    CHECK(xs.front() == crash.x);
    // After a minute every vehicle of the lane has caught up with the queue.
    for (std::size_t k = 1; k < xs.size(); ++k) {
      CHECK(xs[k - 1] - xs[k] == doctest::Approx(cfg.standoff_gap));
    }
  }

  TEST_CASE("highway motion never exceeds v_max and never reverses") {
    RandomStreams rng(8);
    HighwayConfig cfg;
    cfg.length = 3000;
    cfg.density = 30;
    HighwayMobility h(cfg, rng);
    h.crash_lead();
    for (int i = 0; i < 200; ++i) {
      auto before = h.vehicles();
      h.tick(0.1);
      for (std::size_t k = 0; k < before.size(); ++k) {
        const double dx = h.vehicles()[k].position.x - before[k].position.x;
        CHECK(std::abs(dx) <= cfg.v_max * 0.1 + 1e-9);
        CHECK(dx * before[k].velocity.x >= 0.0);
      }
    }
  }

  TEST_CASE("same-lane vehicles never close below the standoff gap") {
    // Brute-force pairwise scan; does not rely on the model's lane ordering.
    RandomStreams rng(21);
    HighwayConfig cfg;
    cfg.length = 1500;
    cfg.density = 40;
    HighwayMobility h(cfg, rng);
    h.crash_lead();
    for (int i = 0; i < 400; ++i) {
      h.tick(0.1);
      const auto& vs = h.vehicles();
      for (std::size_t a = 0; a < vs.size(); ++a) {
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
          if (vs[a].lane != vs[b].lane) continue;
          REQUIRE(std::abs(vs[a].position.x - vs[b].position.x) >= cfg.standoff_gap - 1e-9);
        }
      }
    }
  }

  TEST_CASE("grid source sits at the center and stays there") {
    RandomStreams rng(1);
    GridConfig cfg;
    cfg.vehicle_count = 40;
    GridMobility g(cfg, rng);
    CHECK(g.size() == 40);
    CHECK(g.position(g.source()) == Point{1000, 1000});
    for (int i = 0; i < 100; ++i) g.tick(0.1);
    CHECK(g.position(0) == Point{1000, 1000});
  }

  TEST_CASE("grid vehicles stay on streets and move v dt per tick") {
    RandomStreams rng(11);
    GridConfig cfg;
    cfg.vehicle_count = 120;
    GridMobility g(cfg, rng);
    for (const auto& v : g.vehicles()) CHECK(on_grid_line(v.position, cfg.block, cfg.side));
    for (int i = 0; i < 300; ++i) {
      const auto before = g.vehicles();
      g.tick(0.1);
      for (std::size_t k = 1; k < before.size(); ++k) {
        const auto& v = g.vehicles()[k];
        REQUIRE(on_grid_line(v.position, cfg.block, cfg.side));
        const double speed = std::hypot(v.velocity.x, v.velocity.y);
        CHECK(speed <= cfg.v_max + 1e-9);
        // Manhattan displacement never exceeds the path length, and equals it
        // when no turn happened during the tick.
        const double manhattan = std::abs(v.position.x - before[k].position.x) +
                                 std::abs(v.position.y - before[k].position.y);
        CHECK(manhattan <= speed * 0.1 + 1e-9);
        if (v.velocity == before[k].velocity) {
          const double straight = std::hypot(v.position.x - before[k].position.x,
                                             v.position.y - before[k].position.y);
          if (straight > 0.0 && (v.position.x == before[k].position.x ||
                                 v.position.y == before[k].position.y)) {
            CHECK(manhattan == doctest::Approx(speed * 0.1));
          }
        }
      }
    }
  }

  TEST_CASE("grid rejects shapes without a central intersection") {
    RandomStreams rng(1);
    GridConfig cfg;
    cfg.side = 300;
    cfg.block = 100;
    CHECK_THROWS(GridMobility(cfg, rng));
    cfg.side = 250;
    CHECK_THROWS(GridMobility(cfg, rng));
  }

  TEST_CASE("mobility is seeded") {
    auto positions = [](std::uint64_t seed) {
      RandomStreams rng(seed);
      GridMobility g(GridConfig{}, rng);
      for (int i = 0; i < 50; ++i) g.tick(0.1);
      std::vector<Point> out;
      for (const auto& v : g.vehicles()) out.push_back(v.position);
      return out;
    };
    CHECK(positions(4) == positions(4));
    CHECK(positions(4) != positions(5));
  }

  TEST_CASE("scripted vehicles move in straight lines") {
    ScriptedMobility s({{{0, 0}, {30, 0}}, {{10, 10}, {0, 0}}}, 33.33);
    s.tick(0.5);
    CHECK(s.position(0).x == doctest::Approx(15.0));
    CHECK(s.position(1) == Point{10, 10});
    CHECK(s.vehicles()[1].stopped);
    CHECK_THROWS(ScriptedMobility({{{0, 0}, {40, 0}}}, 33.33));
  }
}
