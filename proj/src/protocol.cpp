#include "wdc/protocol.hpp"

#include <algorithm>

#include "wdc/error.hpp"
#include "wdc/rng.hpp"

namespace wdc {

LinearChecker::LinearChecker(Matrix m1_, Matrix m2_) : m1(std::move(m1_)), m2(std::move(m2_)) {
  if (!same_field(m1.field(), m2.field())) throw Error(ErrorCode::FieldMismatch, "checker matrices over different fields");
  if (m1.rows() != m2.rows() || m1.cols() != m2.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "checker matrices must have the same shape");
  }
}

LinearChecker LinearChecker::random(FieldPtr field, std::size_t m_check, std::size_t l_sym, Rng& rng) {
  Matrix a(field, m_check, l_sym);
  Matrix b(field, m_check, l_sym);
  for (std::size_t r = 0; r < m_check; ++r) {
    for (std::size_t c = 0; c < l_sym; ++c) {
      a(r, c) = static_cast<Symbol>(rng.below(field->order()));
      b(r, c) = static_cast<Symbol>(rng.below(field->order()));
    }
  }
  return LinearChecker(std::move(a), std::move(b));
}

Vector LinearChecker::evaluate(std::span<const Symbol> a, std::span<const Symbol> b) const {
  if (a.size() != symbols() || b.size() != symbols()) {
    throw Error(ErrorCode::DimensionMismatch, "packet length differs from checker width");
  }
  Vector w = m1.apply(a);
  const Vector w2 = m2.apply(b);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = field()->add(w[i], w2[i]);
  return w;
}

CheckResult linear_check_roundtrip(const LinearChecker& checker, std::span<const Symbol> p,
                                   std::span<const Symbol> p_fwd) {
  const Vector at_watchdog = checker.evaluate(p, p_fwd);
  const Vector at_destination = checker.evaluate(p_fwd, p_fwd);
  return at_watchdog == at_destination ? CheckResult::Accept : CheckResult::Reject;
}

CheckResult nonlinear_check(std::span<const Symbol> p, std::span<const Symbol> p_fwd) {
  if (p.size() != p_fwd.size()) throw Error(ErrorCode::DimensionMismatch, "packets of different length");
  return std::equal(p.begin(), p.end(), p_fwd.begin()) ? CheckResult::Accept : CheckResult::Reject;
}

AttackerStrategy AttackerStrategy::null_space(std::shared_ptr<const LinearChecker> checker) {
  if (!checker) throw Error(ErrorCode::InvalidParameters, "null-space attacker needs a checker");
  AttackerStrategy s;
  s.kind = AttackKind::NullSpace;
  s.checker = std::move(checker);
  return s;
}

AttackerStrategy AttackerStrategy::random_error() {
  AttackerStrategy s;
  s.kind = AttackKind::RandomError;
  return s;
}

AttackerStrategy AttackerStrategy::min_weight_forgery() {
  AttackerStrategy s;
  s.kind = AttackKind::MinWeightForgery;
  return s;
}

AttackerStrategy AttackerStrategy::raw_corruption(std::size_t positions) {
  if (positions < 1) throw Error(ErrorCode::InvalidParameters, "raw corruption needs at least one position");
  AttackerStrategy s;
  s.kind = AttackKind::RawCorruption;
  s.positions = positions;
  return s;
}

Vector packet_error(const AttackerStrategy& strategy, const Field& field, std::size_t l_sym, Rng& rng) {
  switch (strategy.kind) {
    case AttackKind::RandomError:
      return random_nonzero_vector(field, l_sym, rng);
    case AttackKind::NullSpace: {
      const auto& checker = *strategy.checker;
      if (checker.symbols() != l_sym || !(*checker.field() == field)) {
        throw Error(ErrorCode::StrategyCodeMismatch, "checker does not match the packet format");
      }
      const auto basis = null_space(checker.m1);
      if (basis.empty()) throw Error(ErrorCode::NoUndetectableError, "M1 has a trivial kernel");
      for (;;) {
        const Vector coeffs = random_vector(field, basis.size(), rng);
        Vector e(l_sym, 0);
        for (std::size_t i = 0; i < basis.size(); ++i) field.axpy(coeffs[i], basis[i], e);
        if (!is_zero(e)) return e;
      }
    }
    default:
      throw Error(ErrorCode::StrategyCodeMismatch, "strategy has no per-packet error");
  }
}

AttackResult attack_block(const AttackerStrategy& strategy, const BlockCode& code, std::span<const Packet> codeword,
                          std::uint64_t block_id, Rng& rng) {
  if (codeword.size() != code.n()) throw Error(ErrorCode::LengthMismatch, "block does not have n packets");
  const std::size_t lanes = codeword.front().symbols.size();
  AttackResult result;
  switch (strategy.kind) {
    case AttackKind::None:
      result.tampered.assign(codeword.begin(), codeword.end());
      result.plan.delta.assign(code.n(), Vector(lanes, 0));
      break;
    case AttackKind::MinWeightForgery:
      result.plan = min_weight_forgery(code, lanes, rng);
      break;
    case AttackKind::RawCorruption:
      if (strategy.positions > code.n()) {
        throw Error(ErrorCode::StrategyCodeMismatch, "more corrupted positions than the block length");
      }
      result.plan = raw_corruption(code, lanes, strategy.positions, rng);
      break;
    case AttackKind::NullSpace:
    case AttackKind::RandomError:
      if (strategy.kind == AttackKind::NullSpace && !(*strategy.checker->field() == *code.field())) {
        throw Error(ErrorCode::StrategyCodeMismatch, "checker and code use different fields");
      }
      result.plan.delta.reserve(code.n());
      for (std::size_t i = 0; i < code.n(); ++i) {
        result.plan.delta.push_back(packet_error(strategy, *code.field(), lanes, rng));
        result.plan.support.push_back(i);
      }
      break;
  }
  result.plan.block = block_id;
  if (strategy.kind != AttackKind::None) result.tampered = apply_tamper(code, codeword, result.plan);
  return result;
}

bool watchdog_block_judge(std::span<const Packet> original, std::span<const Packet> tampered,
                          const std::vector<bool>& observed) {
  if (original.size() != tampered.size() || observed.size() != original.size()) {
    throw Error(ErrorCode::DimensionMismatch, "watchdog inputs disagree on block length");
  }
  for (std::size_t i = 0; i < original.size(); ++i) {
    if (observed[i] && original[i].symbols != tampered[i].symbols) return true;
  }
  return false;
}

ObservationModel ObservationModel::bernoulli(double p_obs) {
  if (!(p_obs >= 0.0 && p_obs <= 1.0)) throw Error(ErrorCode::InvalidParameters, "p_obs must lie in [0, 1]");
  ObservationModel m;
  m.p_obs_ = p_obs;
  return m;
}

ObservationModel ObservationModel::from_trace(std::shared_ptr<const std::vector<bool>> comparable) {
  if (!comparable) throw Error(ErrorCode::InvalidParameters, "empty observation trace");
  ObservationModel m;
  const auto hits = std::count(comparable->begin(), comparable->end(), true);
  m.p_obs_ = comparable->empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(comparable->size());
  m.trace_ = std::move(comparable);
  return m;
}

std::vector<bool> ObservationModel::observe(std::size_t n, std::uint64_t block_id, Rng& rng) const {
  std::vector<bool> observed(n, false);
  if (!trace_) {
    for (std::size_t i = 0; i < n; ++i) observed[i] = rng.bernoulli(p_obs_);
    return observed;
  }
  if (block_id >= capacity(n)) throw Error(ErrorCode::InvalidParameters, "observation trace exhausted");
  const auto offset = static_cast<std::size_t>(block_id) * n;
  for (std::size_t i = 0; i < n; ++i) observed[i] = (*trace_)[offset + i];
  return observed;
}

std::uint64_t ObservationModel::capacity(std::size_t n) const {
  if (!trace_) return ~std::uint64_t{0};
  return trace_->size() / n;
}

std::string_view to_string(BlockVerdict verdict) {
  switch (verdict) {
    case BlockVerdict::NoAttack: return "NoAttack";
    case BlockVerdict::CaughtByWatchdog: return "CaughtByWatchdog";
    case BlockVerdict::CaughtByDecoder: return "CaughtByDecoder";
    case BlockVerdict::Missed: return "Missed";
  }
  return "Unknown";
}

BlockOutcome run_block(const BlockCode& code, const AttackerStrategy& strategy, const ObservationModel& observation,
                       std::size_t lanes, std::uint64_t block_id, Rng& rng) {
  const Block block = random_block(code, block_id, lanes, rng);
  const AttackResult attack = attack_block(strategy, code, block.codeword, block_id, rng);
  const std::vector<bool> observed = observation.observe(code.n(), block_id, rng);

  BlockOutcome out;
  for (std::size_t i = 0; i < code.n(); ++i) {
    if (observed[i]) ++out.compared;
    if (block.codeword[i].symbols != attack.tampered[i].symbols) ++out.corrupted;
  }
  out.alarm = watchdog_block_judge(block.codeword, attack.tampered, observed);
  out.decoder = detect(code, attack.tampered);
  if (out.corrupted == 0) {
    out.verdict = BlockVerdict::NoAttack;
  } else if (out.alarm) {
    out.verdict = BlockVerdict::CaughtByWatchdog;
  } else if (out.decoder == Verdict::Tampered) {
    out.verdict = BlockVerdict::CaughtByDecoder;
  } else {
    out.verdict = BlockVerdict::Missed;
  }
  return out;
}

}  // namespace wdc
