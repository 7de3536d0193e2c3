#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "wdc/harness.hpp"
#include "wdc/rng.hpp"
#include "wdc/simnet.hpp"

using namespace wdc;

namespace {

SimStats long_run(double alpha, std::uint64_t seed, SimOptions options = {}) {
  options.until_delivered = 100000;
  return run_sim(Topology::two_flows(), alpha, 100000000, seed, options);
}

}  // namespace

TEST_CASE("silent network is idle") {
  Rng rng(1);
  SimState state;
  for (int t = 0; t < 100; ++t) {
    const auto ev = step_slot(Topology::two_flows(), 0.0, 0.0, rng, state);
    for (bool tx : ev.transmitting) CHECK_FALSE(tx);
    for (const auto& r : ev.outcome) CHECK(r.kind == Reception::Kind::Idle);
  }
}

TEST_CASE("saturated network always collides at the watchdog") {
  Rng rng(2);
  SimState state;
  for (int t = 0; t < 100; ++t) {
    const auto ev = step_slot(Topology::two_flows(), 1.0, 1.0, rng, state);
    CHECK(ev.at(Node::W).kind == Reception::Kind::Collision);
    // Relays transmit, so they cannot receive.
    CHECK(ev.at(Node::A).kind == Reception::Kind::Idle);
  }
}

TEST_CASE("audibility") {
  const auto two = Topology::two_flows();
  CHECK(two.hears(Node::A, Node::S1));
  CHECK(two.hears(Node::D1, Node::A));
  CHECK_FALSE(two.hears(Node::D1, Node::S1));
  CHECK_FALSE(two.hears(Node::A, Node::S2));
  for (Node s : kSenders) CHECK(two.hears(Node::W, s));
  const auto one = Topology::single_flow();
  CHECK_FALSE(one.has_node(Node::S2));
  CHECK_FALSE(one.hears(Node::W, Node::B));
}

TEST_CASE("reception rule and half duplex on random slots") {
  Rng rng(3);
  SimState state;
  const auto topo = Topology::two_flows();
  for (int t = 0; t < 20000; ++t) {
    const auto ev = step_slot(topo, 0.4, 0.4, rng, state);
    for (std::size_t r = 0; r < kReceivers.size(); ++r) {
      const Node rx = kReceivers[r];
      int audible = 0;
      Node from = Node::S1;
      for (std::size_t s = 0; s < kSenders.size(); ++s) {
        if (ev.transmitting[s] && topo.hears(rx, kSenders[s])) {
          ++audible;
          from = kSenders[s];
        }
      }
      const bool self_tx = (rx == Node::A && ev.is_transmitting(Node::A)) || (rx == Node::B && ev.is_transmitting(Node::B));
      const auto& out = ev.outcome[r];
      if (self_tx || audible == 0) {
        REQUIRE(out.kind == Reception::Kind::Idle);
      } else if (audible == 1) {
        REQUIRE(out.kind == Reception::Kind::Received);
        REQUIRE(out.from == from);
      } else {
        REQUIRE(out.kind == Reception::Kind::Collision);
      }
    }
  }
}

TEST_CASE("S1 to A success rate matches alpha (1 - alpha)") {
  for (double alpha : {0.1, 0.2, 0.35}) {
    const auto s = run_sim(Topology::two_flows(), alpha, 1000000, 7);
    CHECK(within_sigmas(s.s1_to_a_rate(), alpha * (1.0 - alpha), s.slots));
  }
}

TEST_CASE("observation probability and its two factors") {
  for (double alpha : {0.1, 0.2, 0.5}) {
    const auto s = long_run(alpha, 11);
    REQUIRE(s.delivered >= 100000);
    const double a1 = 1.0 - alpha;
    CHECK(within_sigmas(s.observation_rate(), std::pow(a1, 5), s.delivered));
    CHECK(within_sigmas(s.source_overhear_rate(), std::pow(a1, 2), s.s1_to_a));
    CHECK(within_sigmas(s.relay_overhear_rate(), std::pow(a1, 3), s.delivered));
  }
}

TEST_CASE("silencing flow 2 leaves only the S1 factor") {
  // With S2 and B silent, W always hears a successful S1 -> A, and hears
  // A -> D1 iff S1 is silent.
  SimOptions options;
  options.flow2_alpha = 0.0;
  for (double alpha : {0.2, 0.4}) {
    const auto s = long_run(alpha, 13, options);
    CHECK(s.source_overhear_rate() == 1.0);
    CHECK(within_sigmas(s.relay_overhear_rate(), 1.0 - alpha, s.delivered));
    CHECK(within_sigmas(s.observation_rate(), 1.0 - alpha, s.delivered));
    CHECK(s.s2_to_b == 0);
  }
  SimOptions single;
  single.until_delivered = 50000;
  const auto one = run_sim(Topology::single_flow(), 0.3, 100000000, 5, single);
  CHECK(within_sigmas(one.observation_rate(), 0.7, one.delivered));
}

TEST_CASE("records and comparability trace agree") {
  SimOptions options;
  options.keep_records = true;
  const auto s = run_sim(Topology::two_flows(), 0.3, 200000, 3, options);
  REQUIRE(s.records.size() == s.delivered);
  REQUIRE(s.comparable_trace->size() == s.delivered);
  std::uint64_t comparable = 0;
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    CHECK(s.records[i].comparable() == (*s.comparable_trace)[i]);
    comparable += s.records[i].comparable();
    if (i > 0) CHECK(s.records[i].packet == s.records[i - 1].packet + 1);
  }
  CHECK(comparable == s.comparable);
}

TEST_CASE("identical seeds give identical statistics") {
  const auto a = run_sim(Topology::two_flows(), 0.25, 300000, 99);
  const auto b = run_sim(Topology::two_flows(), 0.25, 300000, 99);
  const auto c = run_sim(Topology::two_flows(), 0.25, 300000, 100);
  CHECK(a == b);
  CHECK_FALSE(a == c);
}

TEST_CASE("slot trace CSV") {
  std::ostringstream out;
  SimOptions options;
  options.trace = &out;
  run_sim(Topology::two_flows(), 0.3, 50, 1, options);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "slot,transmitters,A,D1,B,D2,W");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
  }
  CHECK(rows == 50);
}

TEST_CASE("TDMA schedule of the per-packet checker") {
  CHECK(single_flow_schedule(1, 0).throughput() == doctest::Approx(0.5));
  CHECK(single_flow_schedule(100, 50).throughput() == doctest::Approx(0.4));
  for (std::uint64_t l : {1u, 8u, 100u}) {
    for (std::uint64_t m = 0; m <= l; ++m) {
      const auto s = single_flow_schedule(l, m);
      CHECK(s.conflict_free());
      CHECK(s.throughput() == doctest::Approx(static_cast<double>(l) / static_cast<double>(2 * l + m)));
    }
  }
  // Overlapping the watchdog report with the next source slot would make W
  // transmit while it must listen to S.
  Schedule bad = single_flow_schedule(4, 2);
  bad.entries.push_back({Link::SourceToRelay, bad.entries.back().start, 4});
  CHECK_FALSE(bad.conflict_free());
}
