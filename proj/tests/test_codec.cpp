#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>

#include "wdc/code.hpp"
#include "wdc/error.hpp"
#include "wdc/rng.hpp"

using namespace wdc;

namespace {

BlockCode rs63() { return BlockCode::reed_solomon(6, 3, Field::prime(7)); }
BlockCode parity3() { return BlockCode::from_parity_check(Matrix::from_rows(Field::binary(1), {{1, 1, 1}})); }

std::vector<Packet> packets_of(const std::vector<Vector>& lanes_per_packet) {
  std::vector<Packet> out;
  for (std::size_t i = 0; i < lanes_per_packet.size(); ++i) out.push_back({0, i, lanes_per_packet[i]});
  return out;
}

// All codewords m G for m in GF(q)^k, computed from the generator directly.
std::vector<Vector> enumerate_codewords(const BlockCode& code) {
  const auto& f = *code.field();
  const auto& g = code.generator();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < code.k(); ++i) total *= f.order();
  std::vector<Vector> words;
  Vector msg(code.k(), 0);
  for (std::uint64_t x = 0; x < total; ++x) {
    std::uint64_t y = x;
    for (auto& s : msg) {
      s = static_cast<Symbol>(y % f.order());
      y /= f.order();
    }
    Vector w(code.n(), 0);
    for (std::size_t i = 0; i < code.k(); ++i) f.axpy(msg[i], g.row(i), w);
    words.push_back(w);
  }
  return words;
}

std::size_t weight(const Vector& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Symbol s) { return s != 0; }));
}

}  // namespace

TEST_CASE("RS(6,3) over GF(7) has minimum distance 4 over all 343 codewords") {
  const auto code = rs63();
  const auto words = enumerate_codewords(code);
  CHECK(words.size() == 343);
  std::size_t dmin = code.n();
  for (const auto& w : words) {
    CHECK(code.is_codeword(w));
    if (weight(w) > 0) dmin = std::min(dmin, weight(w));
  }
  CHECK(dmin == 4);
  CHECK(min_distance_exhaustive(code) == 4);
  CHECK(min_distance(code) == 4);
  const auto dist = weight_distribution(code);
  CHECK(dist[0] == 1);
  for (std::size_t w = 1; w < 4; ++w) CHECK(dist[w] == 0);
  // MDS weight enumerator: A_d = C(n, d) (q - 1).
  CHECK(dist[4] == 15 * 6);
  CHECK(std::accumulate(dist.begin(), dist.end(), std::uint64_t{0}) == 343);
}

TEST_CASE("small RS codes are MDS") {
  for (std::uint32_t q : {4u, 5u, 7u, 8u}) {
    for (std::size_t n = 2; n <= q; ++n) {
      for (std::size_t k = 1; k < n && std::pow(q, k) <= 1 << 20; ++k) {
        const auto code = BlockCode::reed_solomon(n, k, Field::of_order(q));
        CHECK(min_distance_exhaustive(code) == n - k + 1);
        CHECK(code.known_min_distance() == n - k + 1);
      }
    }
  }
}

TEST_CASE("RS(255,223) constructs and is orthogonal to its parity check") {
  const auto code = BlockCode::reed_solomon(255, 223, Field::binary(8));
  CHECK((code.generator() * code.parity_check().transpose()).is_zero());
  CHECK(code.name() == "RS(255,223)/GF(2^8)");
}

TEST_CASE("RS construction errors") {
  CHECK_THROWS_WITH_AS(BlockCode::reed_solomon(3, 2, Field::binary(1)), doctest::Contains("LengthExceedsField"), Error);
  CHECK_THROWS_AS(BlockCode::reed_solomon(5, 5, Field::prime(7)), Error);
  CHECK_THROWS_AS(BlockCode::reed_solomon(5, 0, Field::prime(7)), Error);
  CHECK_THROWS_AS(BlockCode::hamming(1), Error);
}

TEST_CASE("RS encoding equals polynomial evaluation") {
  // Lane oracle: the systematic codeword is the evaluation at 0..n-1 of the
  // unique polynomial of degree < k through (i, m_i), i < k.
  const auto code = rs63();
  const auto& f = *code.field();
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const Vector msg = random_vector(f, 3, rng);
    const Vector word = code.encode_lane(msg);
    for (Symbol x = 0; x < 6; ++x) {
      Symbol value = 0;
      for (Symbol i = 0; i < 3; ++i) {
        Symbol basis = 1;
        for (Symbol j = 0; j < 3; ++j) {
          if (j != i) basis = f.mul(basis, f.div(f.sub(x, j), f.sub(i, j)));
        }
        value = f.add(value, f.mul(msg[i], basis));
      }
      CHECK(word[x] == value);
    }
  }
}

TEST_CASE("encode matches the generator product lane by lane") {
  const auto code = rs63();
  const auto& f = *code.field();
  const auto msg = packets_of({{1, 2, 3, 4}, {0, 6, 5, 1}, {3, 3, 0, 2}});
  const auto coded = encode(code, msg);
  REQUIRE(coded.size() == 6);
  for (std::size_t lane = 0; lane < 4; ++lane) {
    for (std::size_t j = 0; j < 6; ++j) {
      Symbol expected = 0;
      for (std::size_t i = 0; i < 3; ++i) expected = f.add(expected, f.mul(msg[i].symbols[lane], code.generator()(i, j)));
      CHECK(coded[j].symbols[lane] == expected);
    }
  }
  for (std::size_t i = 0; i < 3; ++i) CHECK(coded[i].symbols == msg[i].symbols);
  CHECK(detect(code, coded) == Verdict::Clean);
}

TEST_CASE("parity code") {
  const auto code = parity3();
  CHECK(code.n() == 3);
  CHECK(code.k() == 2);
  CHECK(min_distance(code) == 2);
  const auto coded = encode(code, packets_of({{1, 0}, {0, 1}}));
  CHECK(coded[2].symbols == Vector{1, 1});
}

TEST_CASE("Hamming codes") {
  const auto h2 = BlockCode::hamming(2);
  CHECK(h2.n() == 3);
  CHECK(h2.k() == 1);
  CHECK(min_distance_exhaustive(h2) == 3);
  CHECK(enumerate_codewords(h2).size() == 2);

  const auto h3 = BlockCode::hamming(3);
  CHECK(h3.n() == 7);
  CHECK(h3.k() == 4);
  CHECK(enumerate_codewords(h3).size() == 16);
  CHECK(min_distance_exhaustive(h3) == 3);
  // 7 codewords of weight 3 in the (7,4) code.
  CHECK(weight_distribution(h3)[3] == 7);
  CHECK(h3.min_weight_supports().size() == 7);

  const auto h4 = BlockCode::hamming(4);
  CHECK(h4.n() == 15);
  CHECK(h4.k() == 11);
  // Weight-3 codewords of the length-n Hamming code: n (n - 1) / 6.
  CHECK(h4.min_weight_supports().size() == 35);
  CHECK(weight_distribution(h4)[3] == 35);

  for (unsigned m = 2; m <= 10; ++m) {
    const auto h = BlockCode::hamming(m);
    CHECK(h.n() == (1u << m) - 1);
    CHECK(h.k() == (1u << m) - m - 1);
    CHECK((h.generator() * h.parity_check().transpose()).is_zero());
    // Columns of H are distinct and nonzero.
    std::set<std::uint32_t> cols;
    for (std::size_t j = 0; j < h.n(); ++j) {
      std::uint32_t v = 0;
      for (std::size_t i = 0; i < m; ++i) v |= std::uint32_t{h.parity_check()(i, j)} << i;
      cols.insert(v);
    }
    CHECK(cols.size() == h.n());
    CHECK(cols.count(0) == 0);
  }
}

TEST_CASE("codes from a parity-check matrix") {
  const auto f = Field::binary(1);
  // Dependent rows are dropped.
  const auto code = BlockCode::from_parity_check(Matrix::from_rows(f, {{1, 1, 0, 1}, {1, 1, 0, 1}, {0, 1, 1, 1}}));
  CHECK(code.n() == 4);
  CHECK(code.k() == 2);
  CHECK((code.generator() * code.parity_check().transpose()).is_zero());
  CHECK_THROWS_WITH_AS(BlockCode::from_parity_check(Matrix::from_rows(f, {{1, 1, 0}, {1, 1, 0}})),
                       doctest::Contains("NotSystematic"), Error);
}

TEST_CASE("detect flags every corruption of at most n-k positions of RS(6,3)") {
  const auto code = rs63();
  const auto& f = *code.field();
  Rng rng(2);
  std::uint64_t cases = 0;
  for (std::uint32_t mask = 1; mask < 64; ++mask) {
    if (std::popcount(mask) > 3) continue;
    for (int t = 0; t < 250; ++t) {
      const Block b = random_block(code, 0, 1, rng);
      auto word = b.codeword;
      for (std::size_t i = 0; i < 6; ++i) {
        if ((mask >> i) & 1u) word[i].symbols[0] = f.add(word[i].symbols[0], static_cast<Symbol>(1 + rng.below(6)));
      }
      REQUIRE(detect(code, word) == Verdict::Tampered);
      ++cases;
    }
  }
  CHECK(cases >= 10000);
}

TEST_CASE("detect agrees with row-space membership") {
  const auto code = BlockCode::reed_solomon(5, 2, Field::prime(5));
  const auto& f = *code.field();
  // Every one of the 5^5 words: codeword iff rank([G; w]) == k.
  std::uint64_t clean = 0;
  Vector w(5);
  for (std::uint32_t x = 0; x < 3125; ++x) {
    std::uint32_t y = x;
    for (auto& s : w) {
      s = static_cast<Symbol>(y % 5);
      y /= 5;
    }
    Matrix stacked(code.field(), 3, 5);
    for (std::size_t j = 0; j < 5; ++j) {
      stacked(0, j) = code.generator()(0, j);
      stacked(1, j) = code.generator()(1, j);
      stacked(2, j) = w[j];
    }
    const bool member = rank(stacked) == 2;
    REQUIRE(code.is_codeword(w) == member);
    clean += member;
    (void)f;
  }
  CHECK(clean == 25);
}

TEST_CASE("minimum-weight forgery") {
  Rng rng(3);
  SUBCASE("RS closed form is the restricted null-space solution") {
    const auto code = BlockCode::reed_solomon(15, 11, Field::binary(4));
    for (int t = 0; t < 200; ++t) {
      const auto plan = min_weight_forgery(code, 2, rng);
      REQUIRE(plan.support.size() == 5);
      const auto sol = solve_homogeneous_restricted(code.parity_check(), plan.support);
      REQUIRE(sol.has_value());
      // Restricted nullity is 1, so the lanes are multiples of the solution.
      const auto& f = *code.field();
      for (std::size_t lane = 0; lane < 2; ++lane) {
        const Symbol ratio = f.div(plan.delta[plan.support[0]][lane], (*sol)[plan.support[0]]);
        for (std::size_t i = 0; i < 15; ++i) {
          REQUIRE(plan.delta[i][lane] == f.mul(ratio, (*sol)[i]));
        }
      }
    }
  }
  SUBCASE("forgeries evade the decoder") {
    for (const auto& code : {rs63(), BlockCode::hamming(3), BlockCode::hamming(5), parity3(),
                             BlockCode::reed_solomon(63, 40, Field::binary(6))}) {
      for (int t = 0; t < 2000; ++t) {
        const Block b = random_block(code, 7, 3, rng);
        const auto plan = min_weight_forgery(code, 3, rng);
        REQUIRE(plan.support.size() == min_distance(code));
        const auto forged = apply_tamper(code, b.codeword, plan);
        REQUIRE(detect(code, forged) == Verdict::Clean);
        std::size_t differing = 0;
        for (std::size_t i = 0; i < code.n(); ++i) {
          const bool differs = forged[i].symbols != b.codeword[i].symbols;
          differing += differs;
          const bool in_support = std::binary_search(plan.support.begin(), plan.support.end(), i);
          REQUIRE(differs == in_support);
          if (in_support) {
            for (std::size_t l = 0; l < 3; ++l) REQUIRE(forged[i].symbols[l] != b.codeword[i].symbols[l]);
          }
        }
        REQUIRE(differing == min_distance(code));
      }
    }
  }
  SUBCASE("Hamming(7,4) supports are column triples summing to zero") {
    const auto code = BlockCode::hamming(3);
    const auto& h = code.parity_check();
    std::map<std::vector<std::size_t>, int> seen;
    for (int t = 0; t < 7000; ++t) {
      const auto plan = min_weight_forgery(code, 1, rng);
      REQUIRE(plan.support.size() == 3);
      for (std::size_t r = 0; r < 3; ++r) {
        REQUIRE((h(r, plan.support[0]) ^ h(r, plan.support[1]) ^ h(r, plan.support[2])) == 0);
      }
      ++seen[plan.support];
    }
    CHECK(seen.size() == 7);
    for (const auto& [support, count] : seen) CHECK(count > 850);
  }
}

TEST_CASE("raw corruption below the minimum distance is always detected") {
  Rng rng(4);
  const auto code = rs63();
  for (std::size_t c = 1; c <= 3; ++c) {
    for (int t = 0; t < 1000; ++t) {
      const Block b = random_block(code, 0, 2, rng);
      const auto plan = raw_corruption(code, 2, c, rng);
      REQUIRE(plan.support.size() == c);
      REQUIRE(detect(code, apply_tamper(code, b.codeword, plan)) == Verdict::Tampered);
    }
  }
}

TEST_CASE("lane length mismatch") {
  const auto code = rs63();
  CHECK_THROWS_WITH_AS(encode(code, packets_of({{1, 2}, {1}, {0, 0}})), doctest::Contains("LengthMismatch"), Error);
  CHECK_THROWS_AS(encode(code, packets_of({{1}, {1}})), Error);
}

TEST_CASE("exhaustive enumeration refuses large codes") {
  CHECK_THROWS_WITH_AS(min_distance_exhaustive(BlockCode::reed_solomon(255, 223, Field::binary(8))),
                       doctest::Contains("TooLargeForExhaustive"), Error);
}

TEST_CASE("scramble and unscramble") {
  Rng rng(5);
  const auto h3 = BlockCode::hamming(3);
  SUBCASE("single block is a permutation") {
    const std::vector<Block> blocks = {random_block(h3, 0, 2, rng)};
    const auto stream = scramble(blocks, rng);
    REQUIRE(stream.size() == 7);
    auto sorted = stream;
    std::sort(sorted.begin(), sorted.end(), [](const Packet& a, const Packet& b) { return a.index < b.index; });
    CHECK(sorted == blocks[0].codeword);
  }
  SUBCASE("two blocks hold each packet once") {
    const std::vector<Block> blocks = {random_block(h3, 0, 2, rng), random_block(h3, 1, 2, rng)};
    const auto stream = scramble(blocks, rng);
    REQUIRE(stream.size() == 14);
    std::set<std::pair<std::uint64_t, std::size_t>> ids;
    for (const auto& p : stream) ids.insert({p.block, p.index});
    CHECK(ids.size() == 14);
  }
  SUBCASE("round trip") {
    for (int t = 0; t < 100; ++t) {
      const auto code = t % 2 ? rs63() : h3;
      std::vector<Block> blocks;
      const std::size_t count = 1 + rng.below(5);
      for (std::size_t b = 0; b < count; ++b) blocks.push_back(random_block(code, b * 3 + 1, 1 + rng.below(4), rng));
      const auto back = unscramble(code, scramble(blocks, rng));
      REQUIRE(back.size() == blocks.size());
      for (std::size_t b = 0; b < count; ++b) {
        REQUIRE(back[b].id == blocks[b].id);
        REQUIRE(back[b].codeword == blocks[b].codeword);
      }
    }
  }
  SUBCASE("missing packet") {
    const std::vector<Block> blocks = {random_block(h3, 0, 1, rng)};
    auto stream = scramble(blocks, rng);
    stream.pop_back();
    CHECK_THROWS_WITH_AS(unscramble(h3, stream), doctest::Contains("MissingPackets"), Error);
  }
}
