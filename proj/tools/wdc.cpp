// wdc: closed-form calculator, experiment runner and self-test.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "wdc/analytic.hpp"
#include "wdc/app.hpp"
#include "wdc/code.hpp"
#include "wdc/error.hpp"
#include "wdc/experiments.hpp"
#include "wdc/protocol.hpp"
#include "wdc/rng.hpp"
#include "wdc/selftest.hpp"
#include "wdc/simnet.hpp"

namespace {

using namespace wdc;

void print(double v) { std::printf("%.12g\n", v); }
void print(const char* label, double v) { std::printf("%s %.12g\n", label, v); }

[[noreturn]] void no_code() { throw Error(ErrorCode::NoCodeAvailable, "no code available"); }

struct AnalyticArgs {
  std::size_t n = 0;
  std::size_t k = 0;
  double p_obs = 0.0;
  double beta = 1.0;
  double alpha = 0.0;
  double theta = 0.0;
  std::uint32_t fq = 2;
  std::size_t l_sym = 0;
  std::size_t m_check = 0;
  unsigned m = 0;
  bool bound = false;
  bool integer = false;
};

void add_analytic(CLI::App& root, AnalyticArgs& a) {
  auto* cmd = root.add_subcommand("analytic", "Evaluate closed-form expressions");
  cmd->require_subcommand(1);

  auto* s = cmd->add_subcommand("throughput", "Scheduled single-flow throughput with a per-packet checker");
  s->add_option("--l-sym", a.l_sym, "Symbols per packet")->required()->check(CLI::PositiveNumber);
  s->add_option("--m-check", a.m_check, "Checking symbols per packet")->required();
  s->callback([&] { print(analytic::throughput_linear_watchdog(a.l_sym, a.m_check)); });

  s = cmd->add_subcommand("miss-bounds", "Miss-probability range of a linear checker");
  s->add_option("--fq", a.fq, "Field order")->capture_default_str();
  s->add_option("--l-sym", a.l_sym, "Symbols per packet")->required()->check(CLI::PositiveNumber);
  s->add_option("--m-check", a.m_check, "Checking symbols per packet")->required();
  s->callback([&] {
    const auto b = analytic::linear_miss_bounds(a.fq, a.l_sym, a.m_check);
    print("lower", b.lower);
    print("upper", b.upper);
  });

  s = cmd->add_subcommand("check-symbols", "Checking symbols needed for a miss target");
  s->add_option("--theta", a.theta, "Miss target")->required()->check(CLI::Range(0.0, 1.0));
  s->add_option("--fq", a.fq, "Field order (count fq-ary symbols)")->capture_default_str();
  s->callback([&] { std::printf("%d\n", analytic::min_check_symbols(a.theta, a.fq)); });

  s = cmd->add_subcommand("p-miss", "Miss probability of the minimal attacker against an MDS code");
  s->add_option("--n", a.n, "Block length")->required();
  s->add_option("--k", a.k, "Message length")->required();
  s->add_option("--p-obs", a.p_obs, "Observation probability")->required()->check(CLI::Range(0.0, 1.0));
  s->add_flag("--bound", a.bound, "Also print the exponential bound");
  s->callback([&] {
    if (a.k < 1 || a.k > a.n) throw Error(ErrorCode::InvalidParameters, "need 1 <= k <= n");
    if (a.bound) {
      print("p_miss", analytic::p_miss_mds(a.n, a.k, a.p_obs));
      print("bound", analytic::p_miss_bound(a.n, a.k, a.p_obs));
    } else {
      print(analytic::p_miss_mds(a.n, a.k, a.p_obs));
    }
  });

  s = cmd->add_subcommand("select-k", "Message length meeting the miss target n^-beta");
  s->add_option("--n", a.n, "Block length")->required()->check(CLI::Range(2, 65536));
  s->add_option("--p-obs", a.p_obs, "Observation probability")->required()->check(CLI::Range(0.0, 1.0));
  s->add_option("--beta", a.beta, "Target exponent")->required()->check(CLI::PositiveNumber);
  s->callback([&] {
    const auto k = analytic::select_k(a.n, a.p_obs, a.beta);
    if (!k) no_code();
    std::printf("%zu\n", *k);
  });

  s = cmd->add_subcommand("coding-rate", "Coding rate of the selected code");
  s->add_option("--n", a.n, "Block length")->required()->check(CLI::Range(2, 65536));
  s->add_option("--p-obs", a.p_obs, "Observation probability")->required()->check(CLI::Range(0.0, 1.0));
  s->add_option("--beta", a.beta, "Target exponent")->required()->check(CLI::PositiveNumber);
  s->add_flag("--integer", a.integer, "Use k/n for the integer k instead of the closed form");
  s->callback([&] {
    const auto r = a.integer ? analytic::coding_rate_integer(a.n, a.p_obs, a.beta)
                             : analytic::coding_rate(a.n, a.p_obs, a.beta);
    if (!r) no_code();
    print(*r);
  });

  s = cmd->add_subcommand("aloha", "Two-flow slotted-ALOHA throughput and observation probability");
  s->add_option("--alpha", a.alpha, "Access probability")->required()->check(CLI::Range(0.0, 1.0));
  s->callback([&] {
    print("throughput", analytic::aloha_throughput(a.alpha));
    print("obs_prob", analytic::aloha_obs_prob(a.alpha));
  });

  s = cmd->add_subcommand("effective-throughput", "Two-flow throughput times coding rate");
  s->add_option("--alpha", a.alpha, "Access probability")->required()->check(CLI::Range(0.0, 1.0));
  s->add_option("--n", a.n, "Block length")->required()->check(CLI::Range(2, 65536));
  s->add_option("--beta", a.beta, "Target exponent")->required()->check(CLI::PositiveNumber);
  s->callback([&] {
    const auto t = analytic::effective_throughput(a.alpha, a.n, a.beta);
    if (!t) no_code();
    print(*t);
  });

  s = cmd->add_subcommand("hamming", "Miss probability of a Hamming code, both exponents");
  s->add_option("--m", a.m, "Parity bits")->required()->check(CLI::Range(2, 10));
  s->add_option("--p-obs", a.p_obs, "Observation probability")->required()->check(CLI::Range(0.0, 1.0));
  s->callback([&] {
    const auto h = analytic::p_miss_hamming_modes(a.m, a.p_obs);
    print("mds_formula", h.mds_formula);
    print("dmin_mode", h.dmin_mode);
  });
}

struct ExperimentArgs {
  std::string name;
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<unsigned> jobs;
};

void add_experiment(CLI::App& root, ExperimentArgs& a) {
  auto* cmd = root.add_subcommand("experiment", "Run a parameter sweep and write CSV, summary and manifest");
  cmd->add_option("name", a.name, "Experiment")->required()->check(CLI::IsMember(experiment_names()));
  cmd->add_option("--config", a.config, "INI configuration file");
  cmd->add_option("--out", a.out, "Output directory (default $WDC_OUTPUT_DIR or ./out)");
  cmd->add_option("--seed", a.seed, "Base seed");
  cmd->add_option("--trials", a.trials, "Blocks per grid point")->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", a.jobs, "Worker threads")->check(CLI::PositiveNumber);
  cmd->callback([&] {
    ExperimentConfig config = app::load_config(a.name, a.config ? std::optional<std::filesystem::path>(*a.config)
                                                                : std::nullopt);
    if (a.seed) config.seed = *a.seed;
    if (a.trials) config.trials = *a.trials;
    if (a.jobs) config.jobs = *a.jobs;
    const auto run = app::run_to_directory(config, app::resolve_output_dir(a.out));
    const auto& s = run.result.summary;
    std::printf("%s: %zu rows, %zu/%zu checks passed\n", config.name.c_str(), run.result.table.rows.size(),
                s["checks_total"].get<std::size_t>() - s["checks_failed"].get<std::size_t>(),
                s["checks_total"].get<std::size_t>());
    std::printf("wrote %s\nwrote %s\nwrote %s\n", run.csv.string().c_str(), run.summary.string().c_str(),
                run.manifest_path.string().c_str());
  });
}

struct SelftestArgs {
  bool inject_fault = false;
  bool failed = false;
};

void add_selftest(CLI::App& root, SelftestArgs& a) {
  auto* cmd = root.add_subcommand("selftest", "Run the exhaustive small-instance checks");
  cmd->add_flag("--inject-fault", a.inject_fault, "Corrupt one generator entry before the G H^T check");
  cmd->callback([&] {
    SelftestOptions options;
    options.corrupt_generator = a.inject_fault;
    double total = 0.0;
    for (const auto& c : run_selftest(options)) {
      std::printf("%-4s %-42s %8.3fs  %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.seconds, c.detail.c_str());
      total += c.seconds;
      a.failed = a.failed || !c.pass;
    }
    std::printf("%s in %.3fs\n", a.failed ? "selftest FAILED" : "selftest passed", total);
  });
}

struct SimulateArgs {
  std::string topology = "two-flows";
  double alpha = 0.2;
  std::optional<double> flow2_alpha;
  std::uint64_t slots = 1000;
  std::uint64_t seed = 1;
  std::optional<std::string> trace;
};

void add_simulate(CLI::App& root, SimulateArgs& a) {
  auto* cmd = root.add_subcommand("simulate", "Run the slotted-ALOHA simulator and print its counters");
  cmd->add_option("--topology", a.topology)->check(CLI::IsMember({"single-flow", "two-flows"}))->capture_default_str();
  cmd->add_option("--alpha", a.alpha, "Access probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  cmd->add_option("--flow2-alpha", a.flow2_alpha, "Access probability of S2 and B (0 silences flow 2)")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--slots", a.slots)->capture_default_str();
  cmd->add_option("--seed", a.seed)->capture_default_str();
  cmd->add_option("--trace", a.trace, "Write the per-slot CSV trace to this file");
  cmd->callback([&] {
    SimOptions options;
    options.flow2_alpha = a.flow2_alpha;
    std::ofstream trace_file;
    if (a.trace) {
      trace_file.open(*a.trace);
      if (!trace_file) throw Error(ErrorCode::IoError, "cannot write '" + *a.trace + "'");
      options.trace = &trace_file;
    }
    const Topology topo = a.topology == "single-flow" ? Topology::single_flow() : Topology::two_flows();
    const SimStats s = run_sim(topo, a.alpha, a.slots, a.seed, options);
    if (a.trace && !trace_file.flush()) throw Error(ErrorCode::IoError, "write to '" + *a.trace + "' failed");
    std::printf("slots %llu\n", static_cast<unsigned long long>(s.slots));
    print("s1_to_a_rate", s.s1_to_a_rate());
    print("delivery_rate", s.delivery_rate());
    print("observation_rate", s.observation_rate());
    print("source_overhear_rate", s.source_overhear_rate());
    print("relay_overhear_rate", s.relay_overhear_rate());
    std::printf("delivered %llu\ncomparable %llu\n", static_cast<unsigned long long>(s.delivered),
                static_cast<unsigned long long>(s.comparable));
  });
}

struct CodewordArgs {
  std::size_t n = 6;
  std::size_t k = 3;
  std::uint32_t q = 7;
  std::optional<unsigned> hamming;
  std::size_t lanes = 4;
  std::uint64_t seed = 1;
  bool forge = false;
};

void add_codeword(CLI::App& root, CodewordArgs& a) {
  auto* cmd = root.add_subcommand("codeword", "Encode a random block and print it as CSV");
  cmd->add_option("--n", a.n, "Reed-Solomon block length")->capture_default_str();
  cmd->add_option("--k", a.k, "Reed-Solomon message length")->capture_default_str();
  cmd->add_option("--q", a.q, "Field order")->capture_default_str();
  cmd->add_option("--hamming", a.hamming, "Use the binary Hamming code with this many parity bits instead");
  cmd->add_option("--lanes", a.lanes, "Symbols per packet")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--seed", a.seed)->capture_default_str();
  cmd->add_flag("--forge", a.forge, "Add a minimum-weight codeword before printing");
  cmd->callback([&] {
    const BlockCode code = a.hamming ? BlockCode::hamming(*a.hamming)
                                     : BlockCode::reed_solomon(a.n, a.k, Field::of_order(a.q));
    Rng rng(a.seed);
    Block block = random_block(code, 0, a.lanes, rng);
    auto word = block.codeword;
    if (a.forge) word = apply_tamper(code, word, min_weight_forgery(code, a.lanes, rng));
    app::write_codeword_csv(std::cout, code, word);
    std::cerr << code.name() << (detect(code, word) == Verdict::Clean ? " clean\n" : " tampered\n");
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App root{"Watchdog and coding toolkit"};
  root.set_version_flag("--version", wdc::app::kVersion);
  root.require_subcommand(1);

  AnalyticArgs analytic_args;
  ExperimentArgs experiment_args;
  SelftestArgs selftest_args;
  SimulateArgs simulate_args;
  CodewordArgs codeword_args;
  add_analytic(root, analytic_args);
  add_experiment(root, experiment_args);
  add_selftest(root, selftest_args);
  add_simulate(root, simulate_args);
  add_codeword(root, codeword_args);

  try {
    root.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return root.exit(e) == 0 ? wdc::app::kOk : wdc::app::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return wdc::app::exit_code_for(e);
  }
  if (selftest_args.failed) return wdc::app::kSelftestFailed;
  return wdc::app::kOk;
}
