// Acceptance checks, one PASS/FAIL line per criterion.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "wdc/analytic.hpp"
#include "wdc/app.hpp"
#include "wdc/code.hpp"
#include "wdc/experiments.hpp"
#include "wdc/harness.hpp"
#include "wdc/protocol.hpp"
#include "wdc/rng.hpp"
#include "wdc/selftest.hpp"
#include "wdc/simnet.hpp"

using namespace wdc;
namespace an = wdc::analytic;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Result {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail.clear();
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

const std::vector<double> kAlphas = {0.1, 0.2, 0.3, 0.5};

// Shared by criteria 2 and 3.
std::vector<SimStats> two_flow_runs() {
  std::vector<SimStats> runs;
  for (std::size_t i = 0; i < kAlphas.size(); ++i) {
    SimOptions options;
    options.until_delivered = 100000;
    runs.push_back(run_sim(Topology::two_flows(), kAlphas[i], 1'000'000'000, derive_seed(2, i), options));
  }
  return runs;
}

Result criterion1() {
  Result r;
  const auto t0 = Clock::now();
  const auto code = BlockCode::reed_solomon(15, 11, Field::binary(4));
  const auto e = estimate_p_miss(code, AttackerStrategy::min_weight_forgery(), ObservationModel::bernoulli(0.3),
                                 {1, 100000, 1, 0, 1});
  const double expected = std::pow(0.7, 5);
  const double tol = 3.0 * std::sqrt(expected * (1.0 - expected) / 1e5);
  const double secs = seconds_since(t0);
  r.require(std::abs(e.estimate - expected) <= tol, "outside tolerance");
  r.require(secs < 60.0, "too slow");
  r.detail = fmt("estimate %.5f vs %.5f, |diff| %.5f <= %.5f, %.1fs", e.estimate, expected,
                 std::abs(e.estimate - expected), tol, secs) + (r.pass ? "" : " (" + r.detail + ")");
  return r;
}

Result criterion2(const std::vector<SimStats>& runs, double secs) {
  Result r;
  std::string detail;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& s = runs[i];
    const double a = kAlphas[i];
    const double q = std::pow(1.0 - a, 5);
    const double se = reference_std_error(q, s.delivered);
    r.require(s.delivered >= 100000, fmt("alpha %.1f: only %llu deliveries", a, (unsigned long long)s.delivered));
    r.require(std::abs(s.observation_rate() - q) <= 3 * se, fmt("alpha %.1f: q off", a));
    detail += fmt("a=%.1f q=%.5f/%.5f (%.1f SE) ", a, s.observation_rate(), q, std::abs(s.observation_rate() - q) / se);
  }
  r.require(secs < 300.0, "too slow");
  r.detail = detail + fmt("%.1fs", secs) + (r.pass ? "" : " (" + r.detail + ")");
  return r;
}

Result criterion3(const std::vector<SimStats>& runs) {
  Result r;
  std::string detail;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& s = runs[i];
    const double a = kAlphas[i];
    const double t = a * (1.0 - a);
    const double f2 = std::pow(1.0 - a, 2), f3 = std::pow(1.0 - a, 3);
    r.require(within_sigmas(s.s1_to_a_rate(), t, s.slots), fmt("alpha %.1f: S1->A rate off", a));
    r.require(within_sigmas(s.source_overhear_rate(), f2, s.s1_to_a), fmt("alpha %.1f: (1-a)^2 factor off", a));
    r.require(within_sigmas(s.relay_overhear_rate(), f3, s.delivered), fmt("alpha %.1f: (1-a)^3 factor off", a));
    detail += fmt("a=%.1f T=%.5f/%.5f f2=%.4f/%.4f f3=%.4f/%.4f ", a, s.s1_to_a_rate(), t, s.source_overhear_rate(), f2,
                  s.relay_overhear_rate(), f3);
  }
  r.detail = detail + (r.pass ? "" : "(" + r.detail + ")");
  return r;
}

Result criterion4() {
  Result r;
  const auto t0 = Clock::now();
  const auto code = BlockCode::reed_solomon(6, 3, Field::prime(7));
  const auto& f = *code.field();
  // Enumerate m G for all 7^3 messages.
  std::size_t words = 0, dmin = 6;
  for (std::uint32_t x = 0; x < 343; ++x) {
    const Vector msg = {static_cast<Symbol>(x % 7), static_cast<Symbol>(x / 7 % 7), static_cast<Symbol>(x / 49)};
    Vector w(6, 0);
    for (std::size_t i = 0; i < 3; ++i) f.axpy(msg[i], code.generator().row(i), w);
    ++words;
    const auto wt = static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](Symbol s) { return s != 0; }));
    if (wt > 0) dmin = std::min(dmin, wt);
  }
  r.require(words == 343 && dmin == 4, fmt("minimum weight %zu over %zu words", dmin, words));

  // Every support of size 1..3, sampled nonzero changes on each position.
  Rng rng(4);
  std::uint64_t cases = 0, detected = 0;
  for (std::uint32_t mask = 1; mask < 64; ++mask) {
    if (std::popcount(mask) > 3) continue;
    for (int t = 0; t < 300; ++t) {
      const Block b = random_block(code, 0, 1, rng);
      auto word = b.codeword;
      for (std::size_t i = 0; i < 6; ++i) {
        if ((mask >> i) & 1u) word[i].symbols[0] = f.add(word[i].symbols[0], static_cast<Symbol>(1 + rng.below(6)));
      }
      ++cases;
      detected += detect(code, word) == Verdict::Tampered;
    }
  }
  const double secs = seconds_since(t0);
  r.require(cases >= 10000 && detected == cases, "undetected corruption");
  r.require(secs < 30.0, "too slow");
  r.detail = fmt("343 codewords, min weight %zu; %llu/%llu corruptions of <= 3 positions detected, %.2fs", dmin,
                 (unsigned long long)detected, (unsigned long long)cases, secs) +
             (r.pass ? "" : " (" + r.detail + ")");
  return r;
}

Result criterion5() {
  Result r;
  const auto g2 = Field::binary(1);
  Rng rng(5);
  int matrices = 0, exact = 0;
  std::uint64_t nonlinear_misses = 0;
  for (std::size_t m = 1; m <= 8; ++m) {
    for (int i = 0; i < 20; ++i) {
      const auto checker = LinearChecker::random(g2, m, 8, rng);
      const Vector p = random_vector(*g2, 8, rng);
      std::uint64_t misses = 0;
      for (std::uint32_t eb = 1; eb < 256; ++eb) {
        Vector fwd = p;
        for (std::size_t j = 0; j < 8; ++j) fwd[j] ^= (eb >> j) & 1u;
        misses += linear_check_roundtrip(checker, p, fwd) == CheckResult::Accept;
        nonlinear_misses += nonlinear_check(p, fwd) == CheckResult::Accept;
      }
      const std::size_t nullity = 8 - rank(checker.m1);
      const std::uint64_t predicted = (std::uint64_t{1} << nullity) - 1;
      const double rate = static_cast<double>(misses) / 255.0;
      const auto bounds = an::linear_miss_bounds(2, 8, m);
      ++matrices;
      if (misses == predicted && rate >= bounds.lower && rate <= bounds.upper) ++exact;
    }
  }
  r.require(exact == matrices, "miss count differs from (2^nullity - 1)");
  r.require(nonlinear_misses == 0, "nonlinear checker missed");
  r.detail = fmt("%d/%d matrices exact and within bounds; nonlinear misses %llu", exact, matrices,
                 (unsigned long long)nonlinear_misses);
  return r;
}

Result criterion6() {
  Result r;
  int points = 0, available = 0;
  for (std::size_t n : {15u, 63u, 255u}) {
    for (double beta : {1.0, 2.0}) {
      for (int i = 1; i <= 9; ++i) {
        const double p = i / 10.0;
        ++points;
        const auto k = an::select_k(n, p, beta);
        if (!k) continue;
        ++available;
        r.require(an::p_miss_mds(n, *k, p) <= std::pow(static_cast<double>(n), -beta),
                  fmt("bound fails at n=%zu beta=%.0f p=%.1f", n, beta, p));
      }
    }
  }
  const auto k = an::select_k(100, 0.5, 2.0);
  const auto rate = an::coding_rate(100, 0.5, 2.0);
  r.require(k && *k == 82, "select_k(100, 0.5, 2) != 82");
  r.require(rate && std::abs(*rate - 0.82579) <= 1e-5, "coding rate off");
  r.detail = fmt("bound holds on %d/%d available points (%d grid points); k=%zu, rate=%.6f", available, available,
                 points, k.value_or(0), rate.value_or(0.0)) +
             (r.pass ? "" : " (" + r.detail + ")");
  return r;
}

Result criterion7() {
  Result r;
  const std::size_t n = 255;
  const double beta = 1.0;
  // P_miss at the rounded k on the 0.05 experiment grid, and the unrounded
  // curve on a 0.01 grid.
  std::vector<double> integer_curve, te;
  for (int i = 1; i <= 10; ++i) {
    const double a = 0.05 * i;
    const double q = an::aloha_obs_prob(a);
    const auto k = an::select_k(n, q, beta);
    const auto t = an::effective_throughput(a, n, beta);
    r.require(k && t, fmt("no code at alpha %.2f", a));
    if (!k || !t) continue;
    integer_curve.push_back(an::p_miss_mds(n, *k, q));
    te.push_back(*t);
  }
  std::vector<double> continuous;
  for (int i = 1; i <= 50; ++i) {
    const double a = 0.01 * i;
    continuous.push_back(an::p_miss_selected_real(n, an::aloha_obs_prob(a), beta));
  }
  const auto nondecreasing = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i] < v[i - 1]) return false;
    }
    return true;
  };
  const std::size_t changes = sign_changes_of_differences(te);
  r.require(nondecreasing(integer_curve), "rounded-k P_miss decreases on the 0.05 grid");
  r.require(nondecreasing(continuous), "unrounded P_miss decreases on the 0.01 grid");
  r.require(changes == 1, fmt("T_E has %zu sign changes", changes));
  std::size_t peak = 0;
  for (std::size_t i = 1; i < te.size(); ++i) {
    if (te[i] > te[peak]) peak = i;
  }
  r.detail = fmt("P_miss nondecreasing (rounded k, 0.05 grid; unrounded, 0.01 grid); T_E sign changes %zu, peak at "
                 "alpha %.2f",
                 changes, 0.05 * static_cast<double>(peak + 1)) +
             (r.pass ? "" : " (" + r.detail + ")");
  return r;
}

Result criterion8() {
  Result r;
  const auto code = BlockCode::hamming(3);
  std::string detail;
  for (double p : {0.3, 0.5}) {
    const auto e = estimate_p_miss(code, AttackerStrategy::min_weight_forgery(), ObservationModel::bernoulli(p),
                                   {1, 100000, 8, static_cast<std::uint64_t>(p * 10), 1});
    const auto modes = an::p_miss_hamming_modes(3, p);
    r.require(within_sigmas(e.estimate, modes.dmin_mode, e.trials), fmt("p=%.1f off (1-p)^3", p));
    detail += fmt("p=%.1f sim %.5f vs (1-p)^3 %.5f (MDS-formula %.5f) ", p, e.estimate, modes.dmin_mode,
                  modes.mds_formula);
  }
  auto c = default_config("hamming");
  c.m_values = {3};
  c.p_obs_values = {0.3, 0.5};
  c.alpha_values = {0.2};
  c.trials = 20000;
  c.min_delivered = 140000;
  const auto res = experiment_hamming(c);
  const bool reported = res.summary.contains("divergence") && !res.summary["divergence"]["rows"].empty();
  r.require(reported, "divergence missing from summary");
  r.detail = detail + (reported ? "; divergence reported in summary" : "") + (r.pass ? "" : " (" + r.detail + ")");
  return r;
}

Result criterion9() {
  Result r;
  const fs::path base = fs::temp_directory_path() / "wdc_acceptance_determinism";
  fs::remove_all(base);
  auto c = app::load_config("two-flows", fs::path(WDC_SOURCE_DIR) / "configs" / "two-flows.conf");
  c.seed = 42;
  const auto first = app::run_to_directory(c, base / "a");
  const auto second = app::run_to_directory(c, base / "b");
  const std::string d1 = app::sha256_file(first.csv), d2 = app::sha256_file(second.csv);
  r.require(d1 == d2, "CSV digests differ between identical runs");
  c.jobs = 8;
  const auto parallel = app::run_to_directory(c, base / "c");
  const std::string d3 = app::sha256_file(parallel.csv);
  r.require(d1 == d3, "jobs 8 differs from jobs 1");
  r.require(first.result.summary["checks"] == parallel.result.summary["checks"], "summary checks differ");
  fs::remove_all(base);
  r.detail = "two-flows seed 42: csv sha256 " + d1.substr(0, 16) + "... identical twice and with 8 jobs" +
             (r.pass ? "" : " (" + r.detail + ")");
  return r;
}

Result criterion10() {
  Result r;
  const auto t0 = Clock::now();
  std::size_t passed = 0;
  const auto checks = run_selftest();
  for (const auto& c : checks) {
    passed += c.pass;
    r.require(c.pass, c.name + ": " + c.detail);
  }
  const double secs = seconds_since(t0);
  r.require(secs < 60.0, "too slow");
  bool fault_caught = false;
  SelftestOptions faulty;
  faulty.corrupt_generator = true;
  for (const auto& c : run_selftest(faulty)) fault_caught = fault_caught || !c.pass;
  r.require(fault_caught, "injected generator fault not detected");
  r.detail = fmt("%zu/%zu checks, %.2fs; injected fault detected", passed, checks.size(), secs) +
             (r.pass ? "" : " (" + r.detail + ")");
  return r;
}

}  // namespace

int main() {
  int failed = 0;
  const auto report = [&](int id, const char* title, const std::function<Result()>& fn) {
    Result r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %2d %s: %s\n", r.pass ? "PASS" : "FAIL", id, title, r.detail.c_str());
    std::fflush(stdout);
    failed += !r.pass;
  };

  report(1, "RS(15,11) miss probability", criterion1);
  const auto t0 = Clock::now();
  const auto runs = two_flow_runs();
  const double sim_secs = seconds_since(t0);
  report(2, "two-flow observation probability", [&] { return criterion2(runs, sim_secs); });
  report(3, "two-flow link rate and overhearing factors", [&] { return criterion3(runs); });
  report(4, "RS(6,3) distance and detection", criterion4);
  report(5, "linear checker miss rates", criterion5);
  report(6, "code selection bound", criterion6);
  report(7, "two-flow curve shapes", criterion7);
  report(8, "Hamming(7,4) minimum-weight attacker", criterion8);
  report(9, "determinism", criterion9);
  report(10, "selftest", criterion10);
  std::printf("%d of 10 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
