#pragma once

// Closed-form throughput, miss-probability and code-selection formulas.
//
// Notation: n is the block length in packets, k the message length, p_obs the
// probability that the watchdog overhears and compares a given packet, alpha
// the slotted-ALOHA access probability. For the per-packet linear checker,
// l_sym is the number of symbols in a packet and m_check the number of
// checking symbols the watchdog forwards per packet.

#include <cstddef>
#include <cstdint>
#include <optional>

namespace wdc::analytic {

// Scheduled single-flow throughput with a per-packet checker:
// l_sym / (2 l_sym + m_check) symbols per unit time.
double throughput_linear_watchdog(std::size_t l_sym, std::size_t m_check);

struct MissBounds {
  double lower;
  double upper;
};

// Range of the miss probability of a random-error attacker against any linear
// checker with m_check checking symbols over GF(fq):
// [(fq^(l-m) - 1) / (fq^l - 1), 1].
MissBounds linear_miss_bounds(std::uint32_t fq, std::size_t l_sym, std::size_t m_check);

// Exact miss probability for a checker whose kernel has the given dimension:
// (fq^nullity - 1) / (fq^l - 1).
double linear_miss_probability(std::uint32_t fq, std::size_t l_sym, std::size_t nullity);

// ceil(-log2 theta): checking symbols needed for miss target theta.
int min_check_symbols(double theta);
// ceil(-log_fq theta), the count of fq-ary symbols.
int min_check_symbols(double theta, std::uint32_t fq);

// Miss probability of the minimal attacker against an (n, k) MDS code:
// (1 - p_obs)^(n - k + 1).
double p_miss_mds(std::size_t n, std::size_t k, double p_obs);
// Exponential bound exp(-p_obs (n - k + 1)) >= p_miss_mds.
double p_miss_bound(std::size_t n, std::size_t k, double p_obs);

// n + 1 - beta ln(n) / p_obs, the unrounded message length.
double k_real(std::size_t n, double p_obs, double beta);

// floor(k_real), capped at n - 1. nullopt ("no code available") when it is
// below 1. The result always satisfies p_miss_mds(n, k, p_obs) <= n^-beta.
std::optional<std::size_t> select_k(std::size_t n, double p_obs, double beta);

// Miss probability of the unrounded selection, (1 - p_obs)^(beta ln n / p_obs).
double p_miss_selected_real(std::size_t n, double p_obs, double beta);

// 1 + 1/n - (beta / p_obs) ln(n) / n, or nullopt where select_k fails.
std::optional<double> coding_rate(std::size_t n, double p_obs, double beta);
// k / n for the integer k of select_k.
std::optional<double> coding_rate_integer(std::size_t n, double p_obs, double beta);

// Two-flow slotted ALOHA.
double aloha_throughput(double alpha);  // alpha (1 - alpha)
double aloha_obs_prob(double alpha);    // (1 - alpha)^5

// alpha (1-alpha)(1 + 1/n) - alpha beta ln n / ((1-alpha)^4 n), or nullopt
// where select_k fails at p_obs = (1 - alpha)^5.
std::optional<double> effective_throughput(double alpha, std::size_t n, double beta);

struct HammingMiss {
  double mds_formula;  // (1 - p_obs)^(m + 1), the MDS formula at Hamming (n, k)
  double dmin_mode;   // (1 - p_obs)^3, the real minimum-weight attacker
};

HammingMiss p_miss_hamming_modes(unsigned m, double p_obs);

}  // namespace wdc::analytic
