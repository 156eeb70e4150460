#include <map>
#include <vector>

#include "doctest.h"
#include "drg/radio.hpp"

using namespace drg;

namespace {

struct Bench {
  explicit Bench(std::vector<ScriptedMobility::Spec> specs, RadioParams p = {})
      : world(std::move(specs), 50.0), rng(1), channel(engine, p, world, rng) {
    channel.set_receiver([this](NodeId n, const Frame& f) { got.emplace_back(n, f); });
  }
  std::vector<NodeId> receivers() const {
    std::vector<NodeId> out;
    for (const auto& [n, f] : got) out.push_back(n);
    return out;
  }
  Engine engine;
  ScriptedMobility world;
  RandomStreams rng;
  Channel channel;
  std::vector<std::pair<NodeId, Frame>> got;
};

ScriptedMobility::Spec at(double x, double y = 0.0) { return {{x, y}, {0, 0}}; }

Frame data_frame(std::uint32_t bytes = 240) {
  Frame f;
  f.message = {0, 0};
  f.origin = 0;
  f.network_bytes = bytes;
  return f;
}

}  // namespace

TEST_SUITE("radio") {
  TEST_CASE("airtime") {
    RadioParams p;
    CHECK(airtime(p, 240) == doctest::Approx(240 * 8 / 6e6));
    p.bitrate = 1e6;
    CHECK(airtime(p, 125) == doctest::Approx(1e-3));
    p.r_tx = 0;
    CHECK_THROWS(validate(p));
    p = {};
    p.p_loss = 1.0;
    CHECK_THROWS(validate(p));
  }

  TEST_CASE("in and out of range") {
    Bench b({at(0), at(250), at(350)});
    const double end = b.channel.broadcast(0, data_frame());
    CHECK(end == doctest::Approx(240 * 8 / 6e6));
    b.engine.run(1.0);
    CHECK(b.receivers() == std::vector<NodeId>{1});
    CHECK(b.got[0].second.sender == 0);
    CHECK(b.got[0].second.sender_position == Point{0, 0});
  }

  TEST_CASE("exactly r_tx is in range") {
    Bench b({at(0), at(300)});
    b.channel.broadcast(0, data_frame());
    b.engine.run(1.0);
    CHECK(b.receivers() == std::vector<NodeId>{1});
  }

  TEST_CASE("overlapping transmissions collide at a common receiver") {
    Bench b({at(0), at(200), at(400)});
    b.channel.broadcast(0, data_frame());
    b.engine.schedule(1e-4, 2, EventKind::kSimEnd, [&] { b.channel.broadcast(2, data_frame()); });
    b.engine.run(1.0);
    CHECK(b.got.empty());
    CHECK(b.channel.stats().collisions == 2);
  }

  TEST_CASE("back-to-back transmissions do not collide") {
    Bench b({at(0), at(200), at(400)});
    const double end = b.channel.broadcast(0, data_frame());
    b.engine.schedule(end, 2, EventKind::kSimEnd, [&] { b.channel.broadcast(2, data_frame()); });
    b.engine.run(1.0);
    CHECK(b.receivers() == std::vector<NodeId>{1, 1});
  }

  TEST_CASE("half duplex: a transmitting node hears nothing") {
    RadioParams p;
    p.carrier_sense = false;
    Bench b({at(0), at(100)}, p);
    b.channel.broadcast(0, data_frame());
    b.channel.broadcast(1, data_frame());
    CHECK_THROWS_AS(b.channel.broadcast(1, data_frame()), std::logic_error);
    b.engine.run(1.0);
    CHECK(b.got.empty());
    CHECK(b.channel.stats().half_duplex == 2);
  }

  TEST_CASE("three-node chain: the middle node relays") {
    Bench b({at(0), at(250), at(500)});
    b.channel.set_receiver([&](NodeId n, const Frame& f) {
      b.got.emplace_back(n, f);
      if (n == 1 && f.sender == 0) b.channel.broadcast(1, f);
    });
    b.channel.broadcast(0, data_frame());
    b.engine.run(1.0);
    std::map<NodeId, int> count;
    for (auto& [n, f] : b.got) ++count[n];
    CHECK(count[1] == 1);
    CHECK(count[2] == 1);
    CHECK(count[0] == 1);  // the relay is heard back at the source
  }

  TEST_CASE("carrier sense reports the busy period") {
    Bench b({at(0), at(200), at(450)});
    const double end = b.channel.broadcast(0, data_frame());
    CHECK(b.channel.busy(0));
    CHECK(b.channel.busy(1));
    CHECK_FALSE(b.channel.busy(2));
    CHECK(b.channel.busy_until(1) == end);
    CHECK(b.channel.busy_until(2) == b.engine.now());
    b.engine.run(1.0);
    CHECK_FALSE(b.channel.busy(1));
  }

  TEST_CASE("reception is symmetric in a static layout") {
    Bench b({at(0, 0), at(120, 90), at(260, -40), at(-200, 150), at(500, 500)});
    std::map<std::pair<NodeId, NodeId>, int> heard;
    b.channel.set_receiver([&](NodeId n, const Frame& f) { ++heard[{f.sender, n}]; });
    double t = 0.0;
    for (NodeId s = 0; s < 5; ++s) {
      b.engine.schedule(t, s, EventKind::kSimEnd, [&b, s] { b.channel.broadcast(s, data_frame()); });
      t += 0.01;
    }
    b.engine.run(1.0);
    for (NodeId i = 0; i < 5; ++i) {
      for (NodeId j = 0; j < 5; ++j) CHECK(heard[{i, j}] == heard[{j, i}]);
    }
  }

  TEST_CASE("every in-range receiver is accounted for") {
    RadioParams p;
    p.p_loss = 0.3;
    p.carrier_sense = false;
    std::vector<ScriptedMobility::Spec> specs;
    for (int i = 0; i < 30; ++i) specs.push_back(at(37.0 * i, (i % 3) * 20.0));
    Bench b(specs, p);
    for (NodeId s = 0; s < 30; s += 2) {
      b.engine.schedule(0.0002 * s, s, EventKind::kSimEnd, [&b, s] { b.channel.broadcast(s, data_frame()); });
    }
    b.engine.run(1.0);
    const ChannelStats& st = b.channel.stats();
    CHECK(st.transmissions == 15);
    CHECK(st.in_range == st.deliveries + st.collisions + st.half_duplex + st.random_losses);
    CHECK(st.deliveries == b.got.size());
  }

  TEST_CASE("random loss is seeded") {
    auto run = [](std::uint64_t) {
      RadioParams p;
      p.p_loss = 0.5;
      std::vector<ScriptedMobility::Spec> specs{at(0)};
      for (int i = 1; i <= 40; ++i) specs.push_back(at(5.0 * i));
      Bench b(specs, p);
      b.channel.broadcast(0, data_frame());
      b.engine.run(1.0);
      return b.receivers();
    };
    const auto a = run(1);
    CHECK(a == run(1));
    CHECK(a.size() > 5);
    CHECK(a.size() < 35);
  }
}
