#include "wdc/field.hpp"

#include <array>
#include <bit>

#include "wdc/error.hpp"
#include "wdc/rng.hpp"

namespace wdc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrimePower: return "NotPrimePower";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthExceedsField: return "LengthExceedsField";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::NotSystematic: return "NotSystematic";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooLargeForExhaustive: return "TooLargeForExhaustive";
    case ErrorCode::MissingPackets: return "MissingPackets";
    case ErrorCode::StrategyCodeMismatch: return "StrategyCodeMismatch";
    case ErrorCode::NoUndetectableError: return "NoUndetectableError";
    case ErrorCode::NoCodeAvailable: return "NoCodeAvailable";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

constexpr std::array<std::uint32_t, 17> kDefaultPolynomials = {
    0,       0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x89,   0x11D,
    0x211,   0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
};

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_prime_power(std::uint32_t n) {
  if (n < 2) return false;
  std::uint32_t p = 2;
  while (n % p != 0) ++p;
  while (n % p == 0) n /= p;
  return n == 1;
}

int degree(std::uint32_t poly) { return 31 - std::countl_zero(poly); }

// Remainder of a modulo b over GF(2)[x].
std::uint32_t gf2_mod(std::uint32_t a, std::uint32_t b) {
  const int db = degree(b);
  while (a != 0 && degree(a) >= db) a ^= b << (degree(a) - db);
  return a;
}

}  // namespace

std::uint32_t Field::default_polynomial(unsigned width) {
  if (width < 1 || width > kMaxWidth) {
    throw Error(ErrorCode::UnsupportedOrder, "GF(2^w) needs 1 <= w <= 16, got w=" + std::to_string(width));
  }
  return kDefaultPolynomials[width];
}

// Trial division by every polynomial of degree 1..deg/2. A reducible
// polynomial always has a factor in that range.
bool Field::is_irreducible_gf2(std::uint32_t poly) {
  if (poly < 2) return false;
  const int d = degree(poly);
  for (int fd = 1; fd <= d / 2; ++fd) {
    for (std::uint32_t f = 1u << fd; f < (2u << fd); ++f) {
      if (gf2_mod(poly, f) == 0) return false;
    }
  }
  return true;
}

FieldPtr Field::prime(std::uint32_t p) {
  if (!is_prime(p)) {
    if (is_prime_power(p)) {
      throw Error(ErrorCode::UnsupportedOrder, std::to_string(p) + " is a prime power; use Field::binary for 2^w");
    }
    throw Error(ErrorCode::NotPrimePower, std::to_string(p) + " is not prime");
  }
  if (p > 65521) throw Error(ErrorCode::UnsupportedOrder, "prime fields are limited to p <= 65521");
  return FieldPtr(new Field(p, p, 1, 0));
}

FieldPtr Field::binary(unsigned width, std::optional<std::uint32_t> polynomial) {
  const std::uint32_t poly = polynomial ? *polynomial : default_polynomial(width);
  if (width < 1 || width > kMaxWidth) {
    throw Error(ErrorCode::UnsupportedOrder, "GF(2^w) needs 1 <= w <= 16, got w=" + std::to_string(width));
  }
  if (degree(poly) != static_cast<int>(width)) {
    throw Error(ErrorCode::ReduciblePolynomial, "reduction polynomial degree does not match w=" + std::to_string(width));
  }
  if (!is_irreducible_gf2(poly)) {
    throw Error(ErrorCode::ReduciblePolynomial, "polynomial " + std::to_string(poly) + " is reducible over GF(2)");
  }
  return FieldPtr(new Field(1u << width, 2, width, poly));
}

FieldPtr Field::of_order(std::uint32_t order) {
  if (order >= 2 && std::has_single_bit(order)) {
    return binary(static_cast<unsigned>(std::countr_zero(order)));
  }
  if (is_prime(order)) return prime(order);
  if (is_prime_power(order)) {
    throw Error(ErrorCode::UnsupportedOrder, "only prime and 2^w orders are supported, got " + std::to_string(order));
  }
  throw Error(ErrorCode::NotPrimePower, std::to_string(order) + " is not a prime power");
}

Field::Field(std::uint32_t order, std::uint32_t characteristic, unsigned width, std::uint32_t polynomial)
    : order_(order), characteristic_(characteristic), width_(width), polynomial_(polynomial) {
  build_tables();
  self_check();
}

std::string Field::name() const {
  if (is_binary()) return "GF(2^" + std::to_string(width_) + ")";
  return "GF(" + std::to_string(order_) + ")";
}

std::uint32_t Field::raw_mul(std::uint32_t a, std::uint32_t b) const noexcept {
  if (!is_binary()) return static_cast<std::uint32_t>(std::uint64_t{a} * b % order_);
  std::uint32_t r = 0;
  while (b != 0) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & order_) a ^= polynomial_;
  }
  return r;
}

void Field::build_tables() {
  const std::uint32_t group = order_ - 1;
  log_.assign(order_, 0);
  exp_.assign(2 * std::size_t{group} + 1, 0);
  if (group == 1) {
    exp_[0] = exp_[1] = exp_[2] = 1;
    generator_ = 1;
    return;
  }
  // The multiplicative group is cyclic; take the first element of full order.
  for (std::uint32_t g = 2; g < order_; ++g) {
    std::uint32_t x = 1;
    std::uint32_t k = 0;
    do {
      exp_[k] = static_cast<Symbol>(x);
      x = raw_mul(x, g);
      ++k;
    } while (x != 1 && k < group);
    if (x == 1 && k == group) {
      generator_ = static_cast<Symbol>(g);
      break;
    }
  }
  for (std::uint32_t k = 0; k < group; ++k) {
    log_[exp_[k]] = k;
    exp_[k + group] = exp_[k];
  }
  exp_[2 * std::size_t{group}] = exp_[0];
}

void Field::self_check() const {
  for (std::uint32_t a = 1; a < order_; ++a) {
    if (mul(static_cast<Symbol>(a), inv(static_cast<Symbol>(a))) != 1) {
      throw std::logic_error(name() + ": a * a^-1 != 1 for a=" + std::to_string(a));
    }
  }
  Rng rng(0x5EEDF1E1DULL ^ order_);
  for (int i = 0; i < 256; ++i) {
    const auto a = static_cast<Symbol>(rng.below(order_));
    const auto b = static_cast<Symbol>(rng.below(order_));
    const auto c = static_cast<Symbol>(rng.below(order_));
    if (mul(mul(a, b), c) != mul(a, mul(b, c)) || add(add(a, b), c) != add(a, add(b, c)) ||
        mul(a, add(b, c)) != add(mul(a, b), mul(a, c)) || mul(a, b) != raw_mul(a, b)) {
      throw std::logic_error(name() + ": field axioms violated on sampled triple");
    }
  }
}

Symbol Field::inv(Symbol a) const {
  if (a == 0) throw Error(ErrorCode::ZeroInverse, "inverse of zero in " + name());
  const std::uint32_t group = order_ - 1;
  return exp_[(group - log_[a]) % group];
}

Symbol Field::pow(Symbol a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t group = order_ - 1;
  return exp_[static_cast<std::size_t>((log_[a] * (e % group)) % group)];
}

void Field::axpy(Symbol scale, std::span<const Symbol> x, std::span<Symbol> y) const noexcept {
  if (scale == 0) return;
  const std::size_t n = std::min(x.size(), y.size());
  if (is_binary()) {
    const std::size_t ls = log_[scale];
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] != 0) y[i] ^= exp_[ls + log_[x[i]]];
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) y[i] = add(y[i], mul(scale, x[i]));
  }
}

}  // namespace wdc
