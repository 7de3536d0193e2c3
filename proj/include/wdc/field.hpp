#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wdc {

// A field element is its integer encoding in [0, order). For GF(2^w) the bits
// are polynomial coefficients; for GF(p) it is the residue.
using Symbol = std::uint16_t;
using Vector = std::vector<Symbol>;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Finite field of prime order p <= 65521 or of order 2^w with w <= 16.
// Multiplication and inversion are table driven; instances are immutable and
// shared between codes, matrices and worker threads.
class Field {
 public:
  static constexpr unsigned kMaxWidth = 16;

  // GF(p), p prime.
  static FieldPtr prime(std::uint32_t p);
  // GF(2^w). With no polynomial the default for w is used; the polynomial
  // includes the x^w term, e.g. 0x11D for x^8+x^4+x^3+x^2+1.
  static FieldPtr binary(unsigned width, std::optional<std::uint32_t> polynomial = std::nullopt);
  // Either of the above from the order alone (prime, or power of two with the
  // default polynomial).
  static FieldPtr of_order(std::uint32_t order);

  // Default reduction polynomial for GF(2^w), 1 <= w <= 16. These are the
  // conventional primitive polynomials (x^8+x^4+x^3+x^2+1 for bytes).
  static std::uint32_t default_polynomial(unsigned width);

  // True iff poly (with its leading x^degree term) is irreducible over GF(2).
  static bool is_irreducible_gf2(std::uint32_t poly);

  std::uint32_t order() const noexcept { return order_; }
  std::uint32_t characteristic() const noexcept { return characteristic_; }
  // w for GF(2^w), 1 for prime fields.
  unsigned width() const noexcept { return width_; }
  // Reduction polynomial for GF(2^w); 0 for prime fields.
  std::uint32_t polynomial() const noexcept { return polynomial_; }
  bool is_binary() const noexcept { return characteristic_ == 2; }
  // Multiplicative generator used to build the log tables.
  Symbol generator() const noexcept { return generator_; }
  std::string name() const;

  bool contains(std::uint32_t value) const noexcept { return value < order_; }

  Symbol add(Symbol a, Symbol b) const noexcept {
    if (characteristic_ == 2) return static_cast<Symbol>(a ^ b);
    std::uint32_t s = std::uint32_t{a} + b;
    return static_cast<Symbol>(s >= order_ ? s - order_ : s);
  }

  Symbol neg(Symbol a) const noexcept {
    if (characteristic_ == 2 || a == 0) return a;
    return static_cast<Symbol>(order_ - a);
  }

  Symbol sub(Symbol a, Symbol b) const noexcept { return add(a, neg(b)); }

  Symbol mul(Symbol a, Symbol b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[std::size_t{log_[a]} + log_[b]];
  }

  // Throws Error(ZeroInverse) for a == 0.
  Symbol inv(Symbol a) const;
  Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }
  // a^e with a^0 = 1 (including 0^0).
  Symbol pow(Symbol a, std::uint64_t e) const noexcept;

  // y += scale * x, element-wise.
  void axpy(Symbol scale, std::span<const Symbol> x, std::span<Symbol> y) const noexcept;

  bool operator==(const Field& other) const noexcept {
    return order_ == other.order_ && polynomial_ == other.polynomial_;
  }

 private:
  Field(std::uint32_t order, std::uint32_t characteristic, unsigned width, std::uint32_t polynomial);

  void build_tables();
  void self_check() const;
  std::uint32_t raw_mul(std::uint32_t a, std::uint32_t b) const noexcept;

  std::uint32_t order_;
  std::uint32_t characteristic_;
  unsigned width_;
  std::uint32_t polynomial_;
  Symbol generator_ = 1;
  std::vector<std::uint32_t> log_;
  std::vector<Symbol> exp_;  // doubled so log a + log b never needs a reduction
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) noexcept {
  return a == b || (a && b && *a == *b);
}

}  // namespace wdc
