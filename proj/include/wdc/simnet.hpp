#pragma once

// Slotted-ALOHA simulator of the watchdog topologies.
//
// Two flows S1 -> A -> D1 and S2 -> B -> D2 share no receivers; the watchdog
// W hears all four senders. A receiver gets a packet iff exactly one of the
// transmitters it hears is active and it is not transmitting itself.
// Audibility:
//   A  <- S1        D1 <- A
//   B  <- S2        D2 <- B
//   W  <- S1, A, S2, B
// The single-flow topology is the same graph without S2, B and D2.
//
// Every sender transmits with probability alpha in every slot. Sources are
// saturated and repeat their head-of-line packet until the relay receives it;
// relays forward FIFO and send a dummy when their queue is empty.

#include <array>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wdc {

class Rng;

enum class Node { S1, A, D1, S2, B, D2, W };

std::string_view to_string(Node node);

enum class TopologyMode { SingleFlow, TwoFlows };

struct Topology {
  TopologyMode mode = TopologyMode::TwoFlows;

  static Topology single_flow() { return {TopologyMode::SingleFlow}; }
  static Topology two_flows() { return {TopologyMode::TwoFlows}; }

  bool has_node(Node node) const noexcept;
  // True iff `receiver` is in range of `transmitter`.
  bool hears(Node receiver, Node transmitter) const noexcept;
};

inline constexpr std::array<Node, 4> kSenders = {Node::S1, Node::A, Node::S2, Node::B};
inline constexpr std::array<Node, 5> kReceivers = {Node::A, Node::D1, Node::B, Node::D2, Node::W};
inline constexpr std::uint64_t kDummyPacket = ~std::uint64_t{0};

struct Reception {
  enum class Kind { Idle, Received, Collision };
  Kind kind = Kind::Idle;
  Node from = Node::S1;
  std::uint64_t packet = kDummyPacket;  // kDummyPacket for dummies
};

struct SlotEvent {
  std::uint64_t slot = 0;
  std::array<bool, 4> transmitting{};                  // indexed like kSenders
  std::array<std::uint64_t, 4> payload{};              // packet id per sender
  std::array<Reception, 5> outcome{};                  // indexed like kReceivers

  bool is_transmitting(Node node) const noexcept;
  const Reception& at(Node receiver) const noexcept;
};

// Mutable per-simulation state: queues and sequence counters.
struct SimState {
  struct Queued {
    std::uint64_t packet;
    bool heard_from_source;
  };
  std::uint64_t slot = 0;
  std::uint64_t s1_next = 0;
  std::uint64_t s2_next = 0;
  std::deque<Queued> a_queue;
  std::deque<Queued> b_queue;
};

// One observation per packet delivered end-to-end on flow 1, in delivery order.
struct ObservationRecord {
  std::uint64_t packet = 0;
  bool from_source = false;  // W overheard S1 -> A
  bool from_relay = false;   // W overheard A -> D1

  bool comparable() const noexcept { return from_source && from_relay; }
};

struct SimOptions {
  // Access probability of S2 and B; defaults to alpha. Zero silences flow 2.
  std::optional<double> flow2_alpha;
  // Stop once this many flow-1 packets are delivered (slots is then a cap).
  std::uint64_t until_delivered = 0;
  bool keep_records = false;
  std::ostream* trace = nullptr;  // CSV slot trace, see write_trace_header
};

struct SimStats {
  std::uint64_t slots = 0;
  double alpha = 0.0;
  std::uint64_t seed = 0;

  std::uint64_t s1_transmissions = 0;
  std::uint64_t s1_to_a = 0;              // successful S1 -> A receptions
  std::uint64_t s1_to_a_overheard = 0;    // ... that W also received
  std::uint64_t a_transmissions = 0;
  std::uint64_t delivered = 0;            // real packets A -> D1
  std::uint64_t delivered_overheard = 0;  // ... that W also received
  std::uint64_t comparable = 0;           // delivered packets W saw twice
  std::uint64_t s2_to_b = 0;
  std::uint64_t delivered_flow2 = 0;
  std::uint64_t w_idle = 0;
  std::uint64_t w_received = 0;
  std::uint64_t w_collision = 0;

  std::vector<ObservationRecord> records;            // when keep_records
  std::shared_ptr<std::vector<bool>> comparable_trace;  // always filled

  double s1_to_a_rate() const noexcept;
  double delivery_rate() const noexcept;
  // Fraction of delivered packets the watchdog could compare.
  double observation_rate() const noexcept;
  double source_overhear_rate() const noexcept;  // P(W hears S1->A | success)
  double relay_overhear_rate() const noexcept;   // P(W hears A->D1 | delivery)

  bool operator==(const SimStats& other) const;
};

// Advances one slot. Throws std::logic_error if a node would transmit and
// receive in the same slot.
SlotEvent step_slot(const Topology& topology, double alpha, double flow2_alpha, Rng& rng, SimState& state);

SimStats run_sim(const Topology& topology, double alpha, std::uint64_t slots, std::uint64_t seed,
                 const SimOptions& options = {});

// CSV columns: slot,transmitters,A,D1,B,D2,W. Transmitters are joined by '+'
// ("-" when none); a receiver cell is "idle", "collision", "<sender>:<id>" or
// "<sender>:dummy".
void write_trace_header(std::ostream& out);
void write_trace_row(std::ostream& out, const SlotEvent& event);

// Centralized TDMA schedule of the single flow with a per-packet checker.
enum class Link { SourceToRelay, RelayToDestination, WatchdogToDestination };

struct ScheduledTransmission {
  Link link;
  std::uint64_t start;
  std::uint64_t duration;
};

struct Schedule {
  std::uint64_t packet_symbols = 0;
  std::vector<ScheduledTransmission> entries;
  std::uint64_t period = 0;

  double throughput() const noexcept;
  // No two overlapping transmissions involve a common node, counting the
  // watchdog as a receiver of the two data transmissions it overhears.
  bool conflict_free() const;
};

Schedule single_flow_schedule(std::uint64_t l_sym, std::uint64_t m_check);

}  // namespace wdc
