// Checks on the reference implementations themselves, including the serial
// and OpenMP Monte Carlo variants agreeing exactly.

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "drg/geom.hpp"
#include "oracles.hpp"

using namespace drg;

TEST_SUITE("oracles") {
  TEST_CASE("serial and parallel Monte Carlo agree bit for bit") {
    for (int threads : {1, 2, 4}) {
      const auto a = oracle::lens_area_mc(1.0, 1.0, 100000, 5);
      const auto b = oracle::lens_area_mc_parallel(1.0, 1.0, 100000, 5, threads);
      CHECK(a.value == b.value);
      CHECK(a.std_error == b.std_error);
      const Point senders[] = {{1, 0}, {-1, 0}};
      const auto c = oracle::union_coverage_fraction({0, 0}, senders, 1.0, 50000, 2);
      const auto d = oracle::union_coverage_fraction_parallel({0, 0}, senders, 1.0, 50000, 2, threads);
      CHECK(c.value == d.value);
    }
  }

  TEST_CASE("Monte Carlo lens estimate brackets the closed form") {
    const auto est = oracle::lens_area_mc(1.0, 1.0, 400000, 11);
    CHECK(std::abs(est.value - lens_area(1.0, 1.0)) < 4 * est.std_error);
    const auto far = oracle::lens_area_mc(2.5, 1.0, 10000, 1);
    CHECK(far.value == 0.0);
  }

  TEST_CASE("opposite senders at distance r cover twice the pair ratio") {
    // Disjoint lenses: the union fraction is twice the single-pair ratio.
    const Point senders[] = {{1, 0}, {-1, 0}};
    const auto est = oracle::union_coverage_fraction({0, 0}, senders, 1.0, 400000, 3);
    const double expected = 2.0 * coverage_ratio_pair(1.0, 1.0);
    CHECK(expected == doctest::Approx(0.78200).epsilon(1e-4));
    CHECK(std::abs(est.value - expected) < 4 * est.std_error);
  }

  TEST_CASE("bfs hops on a line") {
    const Point line[] = {{0, 0}, {250, 0}, {500, 0}, {1100, 0}};
    const auto h = oracle::bfs_hops(line, 300.0, 0);
    CHECK(h == std::vector<int>{0, 1, 2, -1});
  }

  TEST_CASE("independent bisection matches frozen roots") {
    // Frozen from a separate Python bisection of the same equation.
    CHECK(oracle::theta_bisect_root(0.1) == doctest::Approx(0.508177).epsilon(1e-5));
    CHECK(oracle::theta_bisect_root(0.391) == doctest::Approx(1.0036338).epsilon(1e-6));
    CHECK(oracle::theta_bisect_root(0.75) == doctest::Approx(1.82754).epsilon(1e-5));
  }
}
