#include "wdc/simnet.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "wdc/error.hpp"
#include "wdc/rng.hpp"

namespace wdc {

namespace {

constexpr std::size_t sender_index(Node n) {
  switch (n) {
    case Node::S1: return 0;
    case Node::A: return 1;
    case Node::S2: return 2;
    case Node::B: return 3;
    default: return 4;
  }
}

constexpr std::size_t receiver_index(Node n) {
  switch (n) {
    case Node::A: return 0;
    case Node::D1: return 1;
    case Node::B: return 2;
    case Node::D2: return 3;
    case Node::W: return 4;
    default: return 5;
  }
}

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::string_view to_string(Node node) {
  switch (node) {
    case Node::S1: return "S1";
    case Node::A: return "A";
    case Node::D1: return "D1";
    case Node::S2: return "S2";
    case Node::B: return "B";
    case Node::D2: return "D2";
    case Node::W: return "W";
  }
  return "?";
}

bool Topology::has_node(Node node) const noexcept {
  if (mode == TopologyMode::TwoFlows) return true;
  return node != Node::S2 && node != Node::B && node != Node::D2;
}

bool Topology::hears(Node receiver, Node transmitter) const noexcept {
  if (!has_node(receiver) || !has_node(transmitter)) return false;
  switch (receiver) {
    case Node::A: return transmitter == Node::S1;
    case Node::D1: return transmitter == Node::A;
    case Node::B: return transmitter == Node::S2;
    case Node::D2: return transmitter == Node::B;
    case Node::W: return sender_index(transmitter) < 4;
    default: return false;
  }
}

bool SlotEvent::is_transmitting(Node node) const noexcept {
  const auto i = sender_index(node);
  return i < 4 && transmitting[i];
}

const Reception& SlotEvent::at(Node receiver) const noexcept { return outcome[receiver_index(receiver)]; }

SlotEvent step_slot(const Topology& topology, double alpha, double flow2_alpha, Rng& rng, SimState& state) {
  if (!(alpha >= 0.0 && alpha <= 1.0) || !(flow2_alpha >= 0.0 && flow2_alpha <= 1.0)) {
    throw Error(ErrorCode::InvalidParameters, "access probability must lie in [0, 1]");
  }
  SlotEvent ev;
  ev.slot = state.slot++;
  for (std::size_t i = 0; i < kSenders.size(); ++i) {
    const Node s = kSenders[i];
    if (!topology.has_node(s)) continue;
    const double p = (s == Node::S2 || s == Node::B) ? flow2_alpha : alpha;
    ev.transmitting[i] = rng.bernoulli(p);
  }
  ev.payload[0] = state.s1_next;
  ev.payload[1] = state.a_queue.empty() ? kDummyPacket : state.a_queue.front().packet;
  ev.payload[2] = state.s2_next;
  ev.payload[3] = state.b_queue.empty() ? kDummyPacket : state.b_queue.front().packet;

  for (std::size_t r = 0; r < kReceivers.size(); ++r) {
    const Node rx = kReceivers[r];
    Reception& out = ev.outcome[r];
    if (!topology.has_node(rx)) continue;
    if (ev.is_transmitting(rx)) continue;  // half-duplex: a transmitter hears nothing
    int active = 0;
    for (std::size_t i = 0; i < kSenders.size(); ++i) {
      if (ev.transmitting[i] && topology.hears(rx, kSenders[i])) {
        ++active;
        out.from = kSenders[i];
        out.packet = ev.payload[i];
      }
    }
    if (active == 0) {
      out = Reception{};
    } else if (active > 1) {
      out = Reception{Reception::Kind::Collision, Node::S1, kDummyPacket};
    } else {
      out.kind = Reception::Kind::Received;
    }
  }

  for (std::size_t r = 0; r < kReceivers.size(); ++r) {
    if (ev.outcome[r].kind == Reception::Kind::Received && ev.is_transmitting(kReceivers[r])) {
      throw std::logic_error("half-duplex violated at " + std::string(to_string(kReceivers[r])));
    }
  }
  return ev;
}

double SimStats::s1_to_a_rate() const noexcept { return ratio(s1_to_a, slots); }
double SimStats::delivery_rate() const noexcept { return ratio(delivered, slots); }
double SimStats::observation_rate() const noexcept { return ratio(comparable, delivered); }
double SimStats::source_overhear_rate() const noexcept { return ratio(s1_to_a_overheard, s1_to_a); }
double SimStats::relay_overhear_rate() const noexcept { return ratio(delivered_overheard, delivered); }

bool SimStats::operator==(const SimStats& o) const {
  const bool traces_equal = (comparable_trace && o.comparable_trace) ? *comparable_trace == *o.comparable_trace
                                                                     : comparable_trace == o.comparable_trace;
  return slots == o.slots && alpha == o.alpha && seed == o.seed && s1_transmissions == o.s1_transmissions &&
         s1_to_a == o.s1_to_a && s1_to_a_overheard == o.s1_to_a_overheard &&
         a_transmissions == o.a_transmissions && delivered == o.delivered &&
         delivered_overheard == o.delivered_overheard && comparable == o.comparable && s2_to_b == o.s2_to_b &&
         delivered_flow2 == o.delivered_flow2 && w_idle == o.w_idle && w_received == o.w_received &&
         w_collision == o.w_collision && traces_equal;
}

SimStats run_sim(const Topology& topology, double alpha, std::uint64_t slots, std::uint64_t seed,
                 const SimOptions& options) {
  if (slots < 1) throw Error(ErrorCode::InvalidParameters, "simulation needs at least one slot");
  const double flow2_alpha = options.flow2_alpha.value_or(alpha);
  Rng rng(seed);
  SimState state;
  SimStats stats;
  stats.alpha = alpha;
  stats.seed = seed;
  stats.comparable_trace = std::make_shared<std::vector<bool>>();
  if (options.trace) write_trace_header(*options.trace);

  const auto heard_by_w = [](const SlotEvent& ev, Node from) {
    const Reception& w = ev.at(Node::W);
    return w.kind == Reception::Kind::Received && w.from == from;
  };

  for (std::uint64_t t = 0; t < slots; ++t) {
    if (options.until_delivered != 0 && stats.delivered >= options.until_delivered) break;
    const SlotEvent ev = step_slot(topology, alpha, flow2_alpha, rng, state);
    ++stats.slots;
    if (options.trace) write_trace_row(*options.trace, ev);

    switch (ev.at(Node::W).kind) {
      case Reception::Kind::Idle: ++stats.w_idle; break;
      case Reception::Kind::Received: ++stats.w_received; break;
      case Reception::Kind::Collision: ++stats.w_collision; break;
    }
    if (ev.is_transmitting(Node::S1)) ++stats.s1_transmissions;
    if (ev.is_transmitting(Node::A)) ++stats.a_transmissions;

    // Relay forwarding is decided on the queue as it stood at slot start.
    if (ev.is_transmitting(Node::A) && !state.a_queue.empty()) {
      const auto head = state.a_queue.front();
      state.a_queue.pop_front();
      ObservationRecord rec{head.packet, head.heard_from_source, heard_by_w(ev, Node::A)};
      ++stats.delivered;
      if (rec.from_relay) ++stats.delivered_overheard;
      if (rec.comparable()) ++stats.comparable;
      stats.comparable_trace->push_back(rec.comparable());
      if (options.keep_records) stats.records.push_back(rec);
    }
    if (ev.at(Node::A).kind == Reception::Kind::Received) {
      const bool heard = heard_by_w(ev, Node::S1);
      ++stats.s1_to_a;
      if (heard) ++stats.s1_to_a_overheard;
      state.a_queue.push_back({state.s1_next++, heard});
    }

    if (topology.mode == TopologyMode::TwoFlows) {
      if (ev.is_transmitting(Node::B) && !state.b_queue.empty()) {
        state.b_queue.pop_front();
        ++stats.delivered_flow2;
      }
      if (ev.at(Node::B).kind == Reception::Kind::Received) {
        ++stats.s2_to_b;
        state.b_queue.push_back({state.s2_next++, heard_by_w(ev, Node::S2)});
      }
    }
  }
  return stats;
}

void write_trace_header(std::ostream& out) { out << "slot,transmitters,A,D1,B,D2,W\n"; }

void write_trace_row(std::ostream& out, const SlotEvent& ev) {
  out << ev.slot << ',';
  bool any = false;
  for (std::size_t i = 0; i < kSenders.size(); ++i) {
    if (!ev.transmitting[i]) continue;
    if (any) out << '+';
    out << to_string(kSenders[i]);
    any = true;
  }
  if (!any) out << '-';
  for (const auto& r : ev.outcome) {
    out << ',';
    switch (r.kind) {
      case Reception::Kind::Idle: out << "idle"; break;
      case Reception::Kind::Collision: out << "collision"; break;
      case Reception::Kind::Received:
        out << to_string(r.from) << ':';
        if (r.packet == kDummyPacket) {
          out << "dummy";
        } else {
          out << r.packet;
        }
        break;
    }
  }
  out << '\n';
}

double Schedule::throughput() const noexcept {
  return period == 0 ? 0.0 : static_cast<double>(packet_symbols) / static_cast<double>(period);
}

bool Schedule::conflict_free() const {
  const auto nodes = [](Link l) -> std::vector<char> {
    switch (l) {
      case Link::SourceToRelay: return {'S', 'A', 'W'};
      case Link::RelayToDestination: return {'A', 'D', 'W'};
      case Link::WatchdogToDestination: return {'W', 'D'};
    }
    return {};
  };
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const auto& a = entries[i];
      const auto& b = entries[j];
      const bool overlap = a.start < b.start + b.duration && b.start < a.start + a.duration;
      if (!overlap || a.duration == 0 || b.duration == 0) continue;
      const auto na = nodes(a.link);
      const auto nb = nodes(b.link);
      for (char c : na) {
        if (std::find(nb.begin(), nb.end(), c) != nb.end()) return false;
      }
    }
  }
  return true;
}

Schedule single_flow_schedule(std::uint64_t l_sym, std::uint64_t m_check) {
  if (l_sym < 1) throw Error(ErrorCode::InvalidParameters, "packet length must be at least 1");
  Schedule s;
  s.packet_symbols = l_sym;
  s.entries = {
      {Link::SourceToRelay, 0, l_sym},
      {Link::RelayToDestination, l_sym, l_sym},
      {Link::WatchdogToDestination, 2 * l_sym, m_check},
  };
  s.period = 2 * l_sym + m_check;
  return s;
}

}  // namespace wdc
