#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wdc/field.hpp"
#include "wdc/matrix.hpp"

namespace wdc {

class Rng;

enum class CodeKind { ReedSolomon, Hamming, FromParityCheck };

std::string_view to_string(CodeKind kind);

// Systematic (n, k) linear block code, G = [I_k | P] and H = [-P^T | I_{n-k}].
// Immutable after construction.
class BlockCode {
 public:
  // Evaluation code of polynomials of degree < k at the points 0, 1, ..., n-1
  // (field encoding order), brought to systematic form. Needs 1 <= k < n <= order.
  static BlockCode reed_solomon(std::size_t n, std::size_t k, FieldPtr field);
  // Binary (2^m - 1, 2^m - m - 1) Hamming code, 2 <= m <= 10. The columns of H
  // are all nonzero m-bit values: first the values that are not powers of two
  // in increasing order, then 1, 2, 4, ... so that H = [A | I_m].
  static BlockCode hamming(unsigned m);
  // Code with the given parity-check matrix. Dependent rows are dropped; the
  // last n-k columns of the reduced H must be invertible (NotSystematic).
  static BlockCode from_parity_check(const Matrix& h);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  const FieldPtr& field() const noexcept { return field_; }
  CodeKind kind() const noexcept { return kind_; }
  const Matrix& generator() const noexcept { return generator_; }
  const Matrix& parity_check() const noexcept { return parity_check_; }
  // Known minimum distance: n-k+1 for RS, 3 for Hamming, exhaustive result for
  // small parity-check codes.
  std::optional<std::size_t> known_min_distance() const noexcept { return dmin_; }
  // RS evaluation points; empty for the other kinds.
  const Vector& eval_points() const noexcept { return eval_points_; }
  // Supports of all minimum-weight codewords, when enumerated (Hamming and
  // small parity-check codes). Each support is sorted.
  const std::vector<std::vector<std::size_t>>& min_weight_supports() const noexcept { return min_supports_; }
  std::string name() const;

  // Codeword of one lane: message (length k) followed by its parity symbols.
  Vector encode_lane(std::span<const Symbol> message) const;
  Vector syndrome(std::span<const Symbol> word) const;
  bool is_codeword(std::span<const Symbol> word) const;

 private:
  BlockCode(CodeKind kind, FieldPtr field, Matrix parity_part);

  CodeKind kind_;
  FieldPtr field_;
  std::size_t n_;
  std::size_t k_;
  Matrix parity_part_;  // P, k x (n-k)
  Matrix generator_;
  Matrix parity_check_;
  std::optional<std::size_t> dmin_;
  Vector eval_points_;
  std::vector<std::vector<std::size_t>> min_supports_;
};

// One packet of a block: `index` is its code position, `symbols` its lanes.
struct Packet {
  std::uint64_t block = 0;
  std::size_t index = 0;
  Vector symbols;

  bool operator==(const Packet&) const = default;
};

struct Block {
  std::uint64_t id = 0;
  std::vector<Packet> message;   // k packets
  std::vector<Packet> codeword;  // n packets, first k equal to message
};

enum class Verdict { Clean, Tampered };

// Lane-wise systematic encoding: lane l of the output is the codeword of lane
// l of the input. All k packets must have the same length (LengthMismatch).
std::vector<Packet> encode(const BlockCode& code, std::span<const Packet> message);
Block make_block(const BlockCode& code, std::uint64_t id, std::span<const Packet> message);
Block random_block(const BlockCode& code, std::uint64_t id, std::size_t lanes, Rng& rng);

// Tampered iff the syndrome of some lane is nonzero.
Verdict detect(const BlockCode& code, std::span<const Packet> received);

// Attacker's substitution: delta[i] is added to packet i (zero off support).
struct TamperPlan {
  std::uint64_t block = 0;
  std::vector<std::size_t> support;  // sorted positions
  std::vector<Vector> delta;         // n entries, each of lane length
};

// Adds a nonzero codeword of minimum weight supported on a uniformly chosen
// minimum-weight support. Every lane carries a random nonzero multiple of the
// same codeword, so every support position differs in every lane.
TamperPlan min_weight_forgery(const BlockCode& code, std::size_t lanes, Rng& rng);
// Changes `positions` uniformly chosen packets, adding a random nonzero symbol
// on every lane. Not a codeword in general.
TamperPlan raw_corruption(const BlockCode& code, std::size_t lanes, std::size_t positions, Rng& rng);
std::vector<Packet> apply_tamper(const BlockCode& code, std::span<const Packet> codeword, const TamperPlan& plan);

// Minimum nonzero weight by enumerating all order^k codewords; needs
// order^k <= 2^20 (TooLargeForExhaustive).
std::size_t min_distance_exhaustive(const BlockCode& code);
// Number of codewords of each weight 0..n, by the same enumeration.
std::vector<std::uint64_t> weight_distribution(const BlockCode& code);
// Analytic value when known, otherwise the exhaustive one.
std::size_t min_distance(const BlockCode& code);

// Random interleaving of the packets of several blocks, and its inverse.
std::vector<Packet> scramble(std::span<const Block> blocks, Rng& rng);
// Regroups packets by block id (ascending) and code position. Every block
// must have all n positions exactly once (MissingPackets).
std::vector<Block> unscramble(const BlockCode& code, std::span<const Packet> stream);

}  // namespace wdc
