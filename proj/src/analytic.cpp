#include "wdc/analytic.hpp"

#include <cmath>
#include <string>

#include "wdc/error.hpp"

namespace wdc::analytic {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidParameters, std::string(what) + " must lie in [0, 1]");
}

void require_selection(std::size_t n, double p_obs, double beta) {
  if (n < 2) throw Error(ErrorCode::InvalidParameters, "block length n must be at least 2");
  if (!(p_obs > 0.0 && p_obs <= 1.0)) throw Error(ErrorCode::InvalidParameters, "p_obs must lie in (0, 1]");
  if (!(beta > 0.0)) throw Error(ErrorCode::InvalidParameters, "beta must be positive");
}

// Guards ceil() against x = 3.0000000000000004 from an exact integer log.
int ceil_tolerant(double x) { return static_cast<int>(std::ceil(x - 1e-12)); }

}  // namespace

double throughput_linear_watchdog(std::size_t l_sym, std::size_t m_check) {
  if (l_sym < 1) throw Error(ErrorCode::InvalidParameters, "packet length must be at least 1");
  return static_cast<double>(l_sym) / static_cast<double>(2 * l_sym + m_check);
}

double linear_miss_probability(std::uint32_t fq, std::size_t l_sym, std::size_t nullity) {
  if (nullity > l_sym) throw Error(ErrorCode::InvalidParameters, "nullity exceeds packet length");
  const double q = fq;
  return (std::pow(q, static_cast<double>(nullity)) - 1.0) / (std::pow(q, static_cast<double>(l_sym)) - 1.0);
}

MissBounds linear_miss_bounds(std::uint32_t fq, std::size_t l_sym, std::size_t m_check) {
  if (fq < 2 || l_sym < 1) throw Error(ErrorCode::InvalidParameters, "need fq >= 2 and l_sym >= 1");
  if (m_check > l_sym) throw Error(ErrorCode::InvalidParameters, "m_check must not exceed l_sym");
  return {linear_miss_probability(fq, l_sym, l_sym - m_check), 1.0};
}

int min_check_symbols(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw Error(ErrorCode::InvalidParameters, "theta must lie in (0, 1)");
  return ceil_tolerant(-std::log2(theta));
}

int min_check_symbols(double theta, std::uint32_t fq) {
  if (!(theta > 0.0 && theta < 1.0)) throw Error(ErrorCode::InvalidParameters, "theta must lie in (0, 1)");
  if (fq < 2) throw Error(ErrorCode::InvalidParameters, "field order must be at least 2");
  return ceil_tolerant(-std::log(theta) / std::log(static_cast<double>(fq)));
}

double p_miss_mds(std::size_t n, std::size_t k, double p_obs) {
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidParameters, "need 1 <= k <= n");
  require_probability(p_obs, "p_obs");
  return std::pow(1.0 - p_obs, static_cast<double>(n - k + 1));
}

double p_miss_bound(std::size_t n, std::size_t k, double p_obs) {
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidParameters, "need 1 <= k <= n");
  require_probability(p_obs, "p_obs");
  return std::exp(-p_obs * static_cast<double>(n - k + 1));
}

double k_real(std::size_t n, double p_obs, double beta) {
  require_selection(n, p_obs, beta);
  return static_cast<double>(n) + 1.0 - beta * std::log(static_cast<double>(n)) / p_obs;
}

std::optional<std::size_t> select_k(std::size_t n, double p_obs, double beta) {
  const double k = std::floor(k_real(n, p_obs, beta));
  if (k < 1.0) return std::nullopt;
  if (k >= static_cast<double>(n)) return n - 1;
  return static_cast<std::size_t>(k);
}

double p_miss_selected_real(std::size_t n, double p_obs, double beta) {
  require_selection(n, p_obs, beta);
  return std::pow(1.0 - p_obs, beta * std::log(static_cast<double>(n)) / p_obs);
}

std::optional<double> coding_rate(std::size_t n, double p_obs, double beta) {
  if (!select_k(n, p_obs, beta)) return std::nullopt;
  const double nn = static_cast<double>(n);
  return 1.0 + 1.0 / nn - (beta / p_obs) * std::log(nn) / nn;
}

std::optional<double> coding_rate_integer(std::size_t n, double p_obs, double beta) {
  const auto k = select_k(n, p_obs, beta);
  if (!k) return std::nullopt;
  return static_cast<double>(*k) / static_cast<double>(n);
}

double aloha_throughput(double alpha) {
  require_probability(alpha, "alpha");
  return alpha * (1.0 - alpha);
}

double aloha_obs_prob(double alpha) {
  require_probability(alpha, "alpha");
  return std::pow(1.0 - alpha, 5);
}

std::optional<double> effective_throughput(double alpha, std::size_t n, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::InvalidParameters, "alpha must lie in (0, 1)");
  if (!select_k(n, aloha_obs_prob(alpha), beta)) return std::nullopt;
  const double nn = static_cast<double>(n);
  return alpha * (1.0 - alpha) * (1.0 + 1.0 / nn) - alpha * beta * std::log(nn) / (std::pow(1.0 - alpha, 4) * nn);
}

HammingMiss p_miss_hamming_modes(unsigned m, double p_obs) {
  if (m < 2) throw Error(ErrorCode::InvalidParameters, "Hamming parameter m must be at least 2");
  require_probability(p_obs, "p_obs");
  return {std::pow(1.0 - p_obs, static_cast<double>(m + 1)), std::pow(1.0 - p_obs, 3.0)};
}

}  // namespace wdc::analytic
