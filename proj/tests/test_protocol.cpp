#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "wdc/analytic.hpp"
#include "wdc/error.hpp"
#include "wdc/harness.hpp"
#include "wdc/protocol.hpp"
#include "wdc/rng.hpp"

using namespace wdc;

namespace {

Vector vec_of(std::uint32_t bits, std::size_t len) {
  Vector v(len);
  for (std::size_t i = 0; i < len; ++i) v[i] = (bits >> i) & 1u;
  return v;
}

Vector add(const Field& f, const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
  return out;
}

}  // namespace

TEST_CASE("linear checker round trip over GF(2)^2 with M1 = [1 1]") {
  const auto g2 = Field::binary(1);
  const LinearChecker checker(Matrix::from_rows(g2, {{1, 1}}), Matrix::from_rows(g2, {{0, 1}}));
  for (std::uint32_t pb = 0; pb < 4; ++pb) {
    const Vector p = vec_of(pb, 2);
    CHECK(linear_check_roundtrip(checker, p, p) == CheckResult::Accept);
    for (std::uint32_t eb = 1; eb < 4; ++eb) {
      const Vector e = vec_of(eb, 2);
      const bool in_kernel = (e[0] ^ e[1]) == 0;
      CHECK(linear_check_roundtrip(checker, p, add(*g2, p, e)) ==
            (in_kernel ? CheckResult::Accept : CheckResult::Reject));
    }
  }
}

TEST_CASE("nonlinear checker never misses") {
  const auto g2 = Field::binary(1);
  for (std::uint32_t pb = 0; pb < 16; ++pb) {
    const Vector p = vec_of(pb, 4);
    CHECK(nonlinear_check(p, p) == CheckResult::Accept);
    for (std::uint32_t eb = 1; eb < 16; ++eb) CHECK(nonlinear_check(p, add(*g2, p, vec_of(eb, 4))) == CheckResult::Reject);
  }
}

TEST_CASE("checker linearity") {
  Rng rng(1);
  for (const auto& f : {Field::binary(1), Field::prime(7), Field::binary(8)}) {
    for (int t = 0; t < 100; ++t) {
      const auto checker = LinearChecker::random(f, 3, 6, rng);
      const Vector a = random_vector(*f, 6, rng), b = random_vector(*f, 6, rng);
      const Vector c = random_vector(*f, 6, rng), d = random_vector(*f, 6, rng);
      const Vector zero(6, 0);
      CHECK(add(*f, checker.evaluate(a, b), checker.evaluate(c, d)) ==
            checker.evaluate(add(*f, a, c), add(*f, b, d)));
      const auto gamma = static_cast<Symbol>(rng.below(f->order()));
      Vector ga(6);
      for (std::size_t i = 0; i < 6; ++i) ga[i] = f->mul(gamma, a[i]);
      Vector scaled = checker.evaluate(a, zero);
      for (auto& s : scaled) s = f->mul(gamma, s);
      CHECK(checker.evaluate(ga, zero) == scaled);
      CHECK(checker.evaluate(a, zero) == checker.m1.apply(a));
    }
  }
}

TEST_CASE("miss iff the error lies in the kernel of M1, exhaustively") {
  Rng rng(2);
  const auto g2 = Field::binary(1);
  for (std::size_t l = 1; l <= 10; ++l) {
    for (int t = 0; t < 4; ++t) {
      const std::size_t m = 1 + rng.below(l);
      const auto checker = LinearChecker::random(g2, m, l, rng);
      const Vector p = random_vector(*g2, l, rng);
      std::uint64_t misses = 0;
      for (std::uint32_t eb = 1; eb < (1u << l); ++eb) {
        const Vector e = vec_of(eb, l);
        const bool miss = linear_check_roundtrip(checker, p, add(*g2, p, e)) == CheckResult::Accept;
        REQUIRE(miss == is_zero(checker.m1.apply(e)));
        misses += miss;
      }
      const std::size_t nullity = l - rank(checker.m1);
      const double rate = static_cast<double>(misses) / static_cast<double>((1u << l) - 1);
      CHECK(misses == (std::uint64_t{1} << nullity) - 1);
      CHECK(rate == doctest::Approx(analytic::linear_miss_probability(2, l, nullity)));
      const auto bounds = analytic::linear_miss_bounds(2, l, m);
      CHECK(rate >= bounds.lower - 1e-15);
      CHECK(rate <= bounds.upper);
      if (rank(checker.m1) == m) CHECK(rate == doctest::Approx(bounds.lower));
    }
  }
}

TEST_CASE("per-packet attackers") {
  Rng rng(3);
  const auto g2 = Field::binary(1);
  const auto checker = std::make_shared<LinearChecker>(Matrix::from_rows(g2, {{1, 1, 0, 0}, {0, 0, 1, 1}}),
                                                       Matrix(g2, 2, 4));
  const auto ns = AttackerStrategy::null_space(checker);
  for (int t = 0; t < 200; ++t) {
    const Vector e = packet_error(ns, *g2, 4, rng);
    CHECK(!is_zero(e));
    CHECK(is_zero(checker->m1.apply(e)));
    CHECK(!is_zero(packet_error(AttackerStrategy::random_error(), *g2, 4, rng)));
  }
  const auto full = std::make_shared<LinearChecker>(Matrix::identity(g2, 4), Matrix(g2, 4, 4));
  CHECK_THROWS_WITH_AS(packet_error(AttackerStrategy::null_space(full), *g2, 4, rng),
                       doctest::Contains("NoUndetectableError"), Error);
}

TEST_CASE("attack_block") {
  Rng rng(4);
  const auto rs = BlockCode::reed_solomon(6, 3, Field::prime(7));
  for (int t = 0; t < 500; ++t) {
    const Block b = random_block(rs, t, 2, rng);
    const auto forged = attack_block(AttackerStrategy::min_weight_forgery(), rs, b.codeword, t, rng);
    std::size_t differ = 0;
    for (std::size_t i = 0; i < 6; ++i) differ += forged.tampered[i].symbols != b.codeword[i].symbols;
    CHECK(differ == 4);
    CHECK(detect(rs, forged.tampered) == Verdict::Clean);

    const auto raw = attack_block(AttackerStrategy::raw_corruption(1), rs, b.codeword, t, rng);
    CHECK(detect(rs, raw.tampered) == Verdict::Tampered);

    const auto none = attack_block(AttackerStrategy::none(), rs, b.codeword, t, rng);
    CHECK(none.tampered == b.codeword);
  }
  CHECK_THROWS_AS(attack_block(AttackerStrategy::raw_corruption(7), rs, random_block(rs, 0, 1, rng).codeword, 0, rng),
                  Error);
}

TEST_CASE("watchdog judgment") {
  Rng rng(5);
  const auto rs = BlockCode::reed_solomon(6, 3, Field::prime(7));
  const Block b = random_block(rs, 0, 1, rng);
  const auto forged = attack_block(AttackerStrategy::min_weight_forgery(), rs, b.codeword, 0, rng);
  const auto& support = forged.plan.support;
  std::vector<bool> outside(6, true), inside(6, false);
  for (auto i : support) {
    outside[i] = false;
    inside[i] = true;
  }
  CHECK_FALSE(watchdog_block_judge(b.codeword, forged.tampered, outside));
  CHECK(watchdog_block_judge(b.codeword, forged.tampered, inside));
  CHECK(watchdog_block_judge(b.codeword, forged.tampered, std::vector<bool>(6, true)));
  CHECK_FALSE(watchdog_block_judge(b.codeword, b.codeword, std::vector<bool>(6, true)));
}

TEST_CASE("alarm frequency of the minimal attacker") {
  const auto rs = BlockCode::reed_solomon(15, 11, Field::binary(4));
  const auto attacker = AttackerStrategy::min_weight_forgery();
  for (double p : {0.1, 0.3, 0.6}) {
    const auto tally = run_blocks(rs, attacker, ObservationModel::bernoulli(p), {1, 20000, 9, 0, 1});
    const double alarm = static_cast<double>(tally.count(BlockVerdict::CaughtByWatchdog)) / 20000.0;
    const double expected = 1.0 - std::pow(1.0 - p, 5);
    CHECK(within_sigmas(alarm, expected, 20000));
    CHECK(tally.count(BlockVerdict::CaughtByDecoder) == 0);
  }
}

TEST_CASE("run_block verdicts") {
  Rng rng(6);
  const auto rs = BlockCode::reed_solomon(6, 3, Field::prime(7));
  for (int t = 0; t < 300; ++t) {
    const auto clean = run_block(rs, AttackerStrategy::none(), ObservationModel::bernoulli(0.5), 2, t, rng);
    CHECK(clean.verdict == BlockVerdict::NoAttack);
    CHECK(clean.decoder == Verdict::Clean);

    const auto seen = run_block(rs, AttackerStrategy::min_weight_forgery(), ObservationModel::bernoulli(1.0), 2, t, rng);
    CHECK(seen.verdict == BlockVerdict::CaughtByWatchdog);
    const auto raw_seen = run_block(rs, AttackerStrategy::raw_corruption(2), ObservationModel::bernoulli(1.0), 2, t, rng);
    CHECK(raw_seen.verdict == BlockVerdict::CaughtByWatchdog);

    for (std::size_t c = 1; c <= 3; ++c) {
      const auto raw = run_block(rs, AttackerStrategy::raw_corruption(c), ObservationModel::bernoulli(0.0), 2, t, rng);
      CHECK(raw.verdict == BlockVerdict::CaughtByDecoder);
    }
    const auto blind = run_block(rs, AttackerStrategy::min_weight_forgery(), ObservationModel::bernoulli(0.0), 2, t, rng);
    CHECK(blind.verdict == BlockVerdict::Missed);
    CHECK(blind.decoder == Verdict::Clean);
    CHECK(blind.corrupted == 4);
  }
}

TEST_CASE("trace observation model") {
  auto trace = std::make_shared<std::vector<bool>>(std::vector<bool>{1, 0, 1, 1, 0, 0, 1});
  const auto model = ObservationModel::from_trace(trace);
  Rng rng(0);
  CHECK(model.capacity(3) == 2);
  CHECK(model.observe(3, 0, rng) == std::vector<bool>{1, 0, 1});
  CHECK(model.observe(3, 1, rng) == std::vector<bool>{1, 0, 0});
  CHECK_THROWS_AS(model.observe(3, 2, rng), Error);
  CHECK_THROWS_AS(ObservationModel::bernoulli(1.5), Error);
}
