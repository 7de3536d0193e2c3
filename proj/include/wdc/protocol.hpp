#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "wdc/code.hpp"
#include "wdc/matrix.hpp"

namespace wdc {

class Rng;

enum class CheckResult { Accept, Reject };

// Per-packet linear checker F(a, b) = M1 a + M2 b. The watchdog forwards
// w = F(p, p') to the destination, which accepts iff F(p', p') = w.
// Any F that is additive in the pair and homogeneous in each argument has
// this form, and F(e, 0) = M1 e.
struct LinearChecker {
  Matrix m1;  // m_check x l_sym
  Matrix m2;  // m_check x l_sym

  LinearChecker(Matrix m1, Matrix m2);
  static LinearChecker random(FieldPtr field, std::size_t m_check, std::size_t l_sym, Rng& rng);

  std::size_t checks() const noexcept { return m1.rows(); }
  std::size_t symbols() const noexcept { return m1.cols(); }
  const FieldPtr& field() const noexcept { return m1.field(); }

  Vector evaluate(std::span<const Symbol> a, std::span<const Symbol> b) const;
};

// Watchdog computes F(p, p_fwd), destination compares with F(p_fwd, p_fwd).
CheckResult linear_check_roundtrip(const LinearChecker& checker, std::span<const Symbol> p,
                                   std::span<const Symbol> p_fwd);
// One-symbol indicator check: Reject iff the packets differ.
CheckResult nonlinear_check(std::span<const Symbol> p, std::span<const Symbol> p_fwd);

enum class AttackKind { None, NullSpace, RandomError, MinWeightForgery, RawCorruption };

// What the relay does to a block. The attacker knows the encoder but not
// which packets the watchdog overhears.
struct AttackerStrategy {
  AttackKind kind = AttackKind::None;
  std::size_t positions = 0;                      // RawCorruption only
  std::shared_ptr<const LinearChecker> checker;   // NullSpace only
  bool knows_encoder = true;
  bool knows_observations = false;

  static AttackerStrategy none() { return {}; }
  static AttackerStrategy null_space(std::shared_ptr<const LinearChecker> checker);
  static AttackerStrategy random_error();
  static AttackerStrategy min_weight_forgery();
  static AttackerStrategy raw_corruption(std::size_t positions);
};

// Tampering vector for a single packet of the per-packet checker setting:
// NullSpace draws uniformly from the nonzero vectors of Null(M1)
// (NoUndetectableError when the kernel is trivial), RandomError uniformly
// from all nonzero vectors.
Vector packet_error(const AttackerStrategy& strategy, const Field& field, std::size_t l_sym, Rng& rng);

struct AttackResult {
  std::vector<Packet> tampered;
  TamperPlan plan;
};

// Applies the strategy to one encoded block. NullSpace and RandomError tamper
// every packet independently with a per-packet error vector.
AttackResult attack_block(const AttackerStrategy& strategy, const BlockCode& code, std::span<const Packet> codeword,
                          std::uint64_t block_id, Rng& rng);

// Alarm iff some observed position differs between the two copies.
bool watchdog_block_judge(std::span<const Packet> original, std::span<const Packet> tampered,
                          const std::vector<bool>& observed);

// Which code positions of a block the watchdog manages to compare.
class ObservationModel {
 public:
  // Each position independently with probability p_obs.
  static ObservationModel bernoulli(double p_obs);
  // Block b uses flags [b n, (b + 1) n) of a recorded comparability trace.
  static ObservationModel from_trace(std::shared_ptr<const std::vector<bool>> comparable);

  std::vector<bool> observe(std::size_t n, std::uint64_t block_id, Rng& rng) const;
  // Number of whole blocks the model can supply (unbounded for Bernoulli).
  std::uint64_t capacity(std::size_t n) const;
  double p_obs() const noexcept { return p_obs_; }

 private:
  double p_obs_ = 0.0;
  std::shared_ptr<const std::vector<bool>> trace_;
};

enum class BlockVerdict { NoAttack, CaughtByWatchdog, CaughtByDecoder, Missed };

std::string_view to_string(BlockVerdict verdict);

struct BlockOutcome {
  BlockVerdict verdict = BlockVerdict::NoAttack;
  std::size_t compared = 0;   // positions the watchdog compared
  std::size_t corrupted = 0;  // positions the relay changed
  bool alarm = false;
  Verdict decoder = Verdict::Clean;
};

// Encode a random message, attack it, let the watchdog judge the observed
// positions and the destination run detect(). A watchdog alarm takes
// precedence over a decoder detection.
BlockOutcome run_block(const BlockCode& code, const AttackerStrategy& strategy, const ObservationModel& observation,
                       std::size_t lanes, std::uint64_t block_id, Rng& rng);

}  // namespace wdc
