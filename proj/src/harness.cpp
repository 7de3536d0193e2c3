#include "wdc/harness.hpp"

#include <algorithm>
#include <cmath>

#include "wdc/error.hpp"
#include "wdc/rng.hpp"

namespace wdc {

namespace {
constexpr double kZ95 = 1.959963984540054;
}

EstimateWithCI bernoulli_estimate(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorCode::InvalidParameters, "estimate needs at least one trial");
  if (successes > trials) throw Error(ErrorCode::InvalidParameters, "more successes than trials");
  EstimateWithCI e;
  e.successes = successes;
  e.trials = trials;
  e.seed = seed;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  e.estimate = p;
  e.std_error = std::sqrt(p * (1.0 - p) / n);
  e.wilson = std::min(successes, trials - successes) < 10;
  if (e.wilson) {
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    e.lower = center - half;
    e.upper = center + half;
  } else {
    e.lower = p - kZ95 * e.std_error;
    e.upper = p + kZ95 * e.std_error;
  }
  e.lower = std::clamp(std::min(e.lower, p), 0.0, 1.0);
  e.upper = std::clamp(std::max(e.upper, p), 0.0, 1.0);
  return e;
}

double reference_std_error(double expected, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  return std::sqrt(expected * (1.0 - expected) / static_cast<double>(trials));
}

bool within_sigmas(double estimate, double expected, std::uint64_t trials, double sigmas) {
  return std::abs(estimate - expected) <= sigmas * reference_std_error(expected, trials);
}

BlockTally& BlockTally::operator+=(const BlockTally& other) noexcept {
  for (std::size_t i = 0; i < verdicts.size(); ++i) verdicts[i] += other.verdicts[i];
  trials += other.trials;
  return *this;
}

BlockTally run_blocks(const BlockCode& code, const AttackerStrategy& strategy, const ObservationModel& observation,
                      const BlockRunSpec& spec) {
  if (spec.trials > observation.capacity(code.n())) {
    throw Error(ErrorCode::InvalidParameters, "observation trace holds fewer blocks than requested trials");
  }
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::uint64_t>(spec.jobs, spec.trials));
  std::vector<BlockTally> partial(chunks);
  parallel_for(chunks, spec.jobs, [&](std::size_t c) {
    const std::uint64_t begin = spec.trials * c / chunks;
    const std::uint64_t end = spec.trials * (c + 1) / chunks;
    for (std::uint64_t t = begin; t < end; ++t) {
      Rng rng(derive_seed(spec.seed, spec.point, t));
      const auto outcome = run_block(code, strategy, observation, spec.lanes, t, rng);
      ++partial[c].verdicts[static_cast<std::size_t>(outcome.verdict)];
      ++partial[c].trials;
    }
  });
  BlockTally total;
  for (const auto& p : partial) total += p;
  return total;
}

EstimateWithCI estimate_p_miss(const BlockCode& code, const AttackerStrategy& strategy,
                               const ObservationModel& observation, const BlockRunSpec& spec) {
  const BlockTally tally = run_blocks(code, strategy, observation, spec);
  return bernoulli_estimate(tally.count(BlockVerdict::Missed), tally.trials, spec.seed);
}

}  // namespace wdc
