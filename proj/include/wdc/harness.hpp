#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "wdc/code.hpp"
#include "wdc/protocol.hpp"

namespace wdc {

// Monte Carlo estimate of a Bernoulli probability with a 95% interval.
struct EstimateWithCI {
  double estimate = 0.0;
  double std_error = 0.0;  // sqrt(p(1-p)/N) at the point estimate
  double lower = 0.0;
  double upper = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  bool wilson = false;  // interval method: Wilson score, else normal

  bool contains(double p) const noexcept { return lower <= p && p <= upper; }
};

// Normal-approximation interval clamped to [0, 1]; the Wilson score interval
// when fewer than 10 successes or failures were seen.
EstimateWithCI bernoulli_estimate(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed = 0);

// |estimate - expected| <= sigmas * sqrt(expected (1 - expected) / N). The
// spread comes from the reference value, so it stays meaningful when the
// estimate is 0 or 1.
bool within_sigmas(double estimate, double expected, std::uint64_t trials, double sigmas = 3.0);
double reference_std_error(double expected, std::uint64_t trials);

// Counts of block verdicts over a batch of trials.
struct BlockTally {
  std::array<std::uint64_t, 4> verdicts{};  // indexed by BlockVerdict
  std::uint64_t trials = 0;

  std::uint64_t count(BlockVerdict v) const noexcept { return verdicts[static_cast<std::size_t>(v)]; }
  BlockTally& operator+=(const BlockTally& other) noexcept;
  bool operator==(const BlockTally&) const = default;
};

struct BlockRunSpec {
  std::size_t lanes = 1;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t point = 0;  // grid point index folded into the per-trial seed
  unsigned jobs = 1;
};

// Trial t runs with Rng(derive_seed(seed, point, t)) and block id t, so the
// tally does not depend on the number of jobs.
BlockTally run_blocks(const BlockCode& code, const AttackerStrategy& strategy, const ObservationModel& observation,
                      const BlockRunSpec& spec);

// Fraction of Missed outcomes.
EstimateWithCI estimate_p_miss(const BlockCode& code, const AttackerStrategy& strategy,
                               const ObservationModel& observation, const BlockRunSpec& spec);

// Calls body(i) for i in [0, count) on up to `jobs` threads, contiguous
// chunks per thread. Exceptions from workers are rethrown.
template <typename Body>
void parallel_for(std::size_t count, unsigned jobs, Body&& body);

}  // namespace wdc

#include "wdc/detail/parallel.hpp"
