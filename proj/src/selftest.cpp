#include "wdc/selftest.hpp"

#include <chrono>
#include <functional>

#include "wdc/code.hpp"
#include "wdc/field.hpp"
#include "wdc/matrix.hpp"
#include "wdc/rng.hpp"

namespace wdc {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::vector<FieldPtr> small_fields() {
  std::vector<FieldPtr> out;
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) out.push_back(Field::prime(p));
  for (unsigned w : {1u, 2u, 3u, 4u}) out.push_back(Field::binary(w));
  return out;
}

Outcome field_axioms() {
  Outcome o;
  for (const auto& fp : small_fields()) {
    const Field& f = *fp;
    const auto q = f.order();
    for (Symbol a = 0; a < q; ++a) {
      if (f.add(a, 0) != a || f.mul(a, 1) != a || f.add(a, f.neg(a)) != 0) o.fail(f.name() + ": identity law");
      if (a != 0 && f.mul(a, f.inv(a)) != 1) o.fail(f.name() + ": inverse");
      for (Symbol b = 0; b < q; ++b) {
        if (f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a)) o.fail(f.name() + ": commutativity");
        for (Symbol c = 0; c < q; ++c) {
          if (f.add(f.add(a, b), c) != f.add(a, f.add(b, c))) o.fail(f.name() + ": additive associativity");
          if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) o.fail(f.name() + ": multiplicative associativity");
          if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))) o.fail(f.name() + ": distributivity");
        }
      }
    }
  }
  if (o.pass) o.detail = "exhaustive over GF(2,3,5,7,11,13,4,8,16)";
  return o;
}

// Carry-less product then reduction by long division, independent of tables.
std::uint32_t clmul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t poly, unsigned w) {
  std::uint32_t prod = 0;
  for (unsigned i = 0; i < w; ++i) {
    if ((b >> i) & 1u) prod ^= a << i;
  }
  for (int bit = 2 * static_cast<int>(w) - 2; bit >= static_cast<int>(w); --bit) {
    if ((prod >> bit) & 1u) prod ^= poly << (bit - static_cast<int>(w));
  }
  return prod;
}

Outcome byte_field_multiply() {
  Outcome o;
  const auto f = Field::binary(8);
  for (std::uint32_t a = 0; a < 256; ++a) {
    for (std::uint32_t b = 0; b < 256; ++b) {
      if (f->mul(static_cast<Symbol>(a), static_cast<Symbol>(b)) != clmul_mod(a, b, f->polynomial(), 8)) {
        o.fail("GF(2^8) product differs for " + std::to_string(a) + "*" + std::to_string(b));
      }
    }
  }
  if (o.pass) o.detail = "65536 products match";
  return o;
}

std::vector<BlockCode> shipped_codes() {
  std::vector<BlockCode> codes;
  codes.push_back(BlockCode::reed_solomon(6, 3, Field::prime(7)));
  codes.push_back(BlockCode::reed_solomon(15, 11, Field::binary(4)));
  codes.push_back(BlockCode::reed_solomon(255, 223, Field::binary(8)));
  for (std::size_t n : {15u, 63u, 255u}) {
    unsigned w = 1;
    while ((1u << w) < n) ++w;
    for (std::size_t k : {std::size_t{1}, n / 2, n - 1}) codes.push_back(BlockCode::reed_solomon(n, k, Field::binary(w)));
  }
  for (unsigned m = 2; m <= 10; ++m) codes.push_back(BlockCode::hamming(m));
  codes.push_back(BlockCode::from_parity_check(Matrix::from_rows(Field::binary(1), {{1, 1, 1}})));
  return codes;
}

Outcome generator_parity_orthogonal(const std::vector<BlockCode>& codes, bool corrupt) {
  Outcome o;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    Matrix g = codes[i].generator();
    if (corrupt && i == 0) g(0, codes[i].k()) = codes[i].field()->add(g(0, codes[i].k()), 1);
    if (!(g * codes[i].parity_check().transpose()).is_zero()) o.fail(codes[i].name() + ": G H^T != 0");
  }
  if (o.pass) o.detail = std::to_string(codes.size()) + " codes";
  return o;
}

Outcome systematic_encoding(const std::vector<BlockCode>& codes) {
  Outcome o;
  Rng rng(0xC0DE);
  for (const auto& code : codes) {
    for (int t = 0; t < 8; ++t) {
      const Vector msg = random_vector(*code.field(), code.k(), rng);
      const Vector word = code.encode_lane(msg);
      if (!std::equal(msg.begin(), msg.end(), word.begin())) o.fail(code.name() + ": not systematic");
      if (!code.is_codeword(word)) o.fail(code.name() + ": encoded word has nonzero syndrome");
    }
  }
  if (o.pass) o.detail = "prefix property and zero syndrome";
  return o;
}

Outcome exhaustive_min_distance() {
  Outcome o;
  struct Case {
    BlockCode code;
    std::size_t expected;
  };
  const std::vector<Case> cases = {
      {BlockCode::reed_solomon(6, 3, Field::prime(7)), 4},
      {BlockCode::reed_solomon(7, 3, Field::binary(3)), 5},
      {BlockCode::reed_solomon(5, 2, Field::prime(5)), 4},
      {BlockCode::hamming(2), 3},
      {BlockCode::hamming(3), 3},
      {BlockCode::hamming(4), 3},
      {BlockCode::from_parity_check(Matrix::from_rows(Field::binary(1), {{1, 1, 1}})), 2},
  };
  for (const auto& c : cases) {
    const auto d = min_distance_exhaustive(c.code);
    if (d != c.expected) o.fail(c.code.name() + ": minimum distance " + std::to_string(d));
    if (c.code.known_min_distance() && *c.code.known_min_distance() != d) o.fail(c.code.name() + ": analytic value");
  }
  if (o.pass) o.detail = std::to_string(cases.size()) + " codes enumerated";
  return o;
}

Outcome null_space_verification() {
  Outcome o;
  Rng rng(0x5EED);
  for (std::uint32_t q : {2u, 3u, 16u}) {
    const auto f = Field::of_order(q);
    for (int t = 0; t < 40; ++t) {
      const std::size_t rows = 1 + rng.below(6);
      const std::size_t cols = 1 + rng.below(8);
      Matrix m(f, rows, cols);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<Symbol>(rng.below(rng.below(3) == 0 ? 1 : q));
      }
      const auto basis = null_space(m);
      if (basis.size() + rank(m) != cols) o.fail("rank-nullity violated");
      for (const auto& v : basis) {
        if (!is_zero(m.apply(v))) o.fail("basis vector outside kernel");
      }
      if (q == 2) {
        // Count the kernel exhaustively: it must have 2^nullity elements.
        std::uint64_t count = 0;
        Vector v(cols);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << cols); ++x) {
          for (std::size_t i = 0; i < cols; ++i) v[i] = (x >> i) & 1u;
          if (is_zero(m.apply(v))) ++count;
        }
        if (count != (std::uint64_t{1} << basis.size())) o.fail("kernel size differs from 2^nullity");
      }
    }
  }
  if (o.pass) o.detail = "120 random matrices";
  return o;
}

Outcome forgery_evades_decoder() {
  Outcome o;
  Rng rng(0xF0F0);
  const std::vector<BlockCode> codes = {BlockCode::reed_solomon(6, 3, Field::prime(7)), BlockCode::hamming(3),
                                        BlockCode::reed_solomon(15, 11, Field::binary(4))};
  for (const auto& code : codes) {
    for (int t = 0; t < 200; ++t) {
      const Block b = random_block(code, 0, 3, rng);
      const auto plan = min_weight_forgery(code, 3, rng);
      const auto forged = apply_tamper(code, b.codeword, plan);
      if (plan.support.size() != min_distance(code)) o.fail(code.name() + ": support size");
      if (detect(code, forged) != Verdict::Clean) o.fail(code.name() + ": forgery detected");
    }
  }
  if (o.pass) o.detail = "600 forgeries pass detect()";
  return o;
}

}  // namespace

std::vector<SelftestCheck> run_selftest(const SelftestOptions& options) {
  std::vector<SelftestCheck> out;
  const auto run = [&](const std::string& name, const std::function<Outcome()>& fn) {
    const auto start = Clock::now();
    SelftestCheck check;
    check.name = name;
    try {
      const Outcome o = fn();
      check.pass = o.pass;
      check.detail = o.detail;
    } catch (const std::exception& e) {
      check.pass = false;
      check.detail = e.what();
    }
    check.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    out.push_back(std::move(check));
  };

  run("field axioms (fq <= 16)", field_axioms);
  run("GF(2^8) multiply vs long division", byte_field_multiply);
  const auto codes = shipped_codes();
  run("G H^T = 0 for shipped codes", [&] { return generator_parity_orthogonal(codes, options.corrupt_generator); });
  run("systematic encoding", [&] { return systematic_encoding(codes); });
  run("minimum distance by enumeration", exhaustive_min_distance);
  run("null-space verification", null_space_verification);
  run("minimum-weight forgery passes decoder", forgery_evades_decoder);
  return out;
}

}  // namespace wdc
