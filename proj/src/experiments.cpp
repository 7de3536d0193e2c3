#include "wdc/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "wdc/analytic.hpp"
#include "wdc/code.hpp"
#include "wdc/error.hpp"
#include "wdc/harness.hpp"
#include "wdc/protocol.hpp"
#include "wdc/rng.hpp"
#include "wdc/simnet.hpp"

namespace wdc {

namespace {

using nlohmann::json;

constexpr std::uint64_t kSimStream = 0x51A1;

// Collects per-row checks for the summary document.
class CheckLog {
 public:
  void add(std::int64_t row, const std::string& check, bool pass, double value, double expected, double tolerance) {
    checks_.push_back({{"row", row}, {"check", check}, {"pass", pass}, {"value", value}, {"expected", expected},
                       {"tolerance", tolerance}});
    if (!pass) ++failed_;
  }
  void add(std::int64_t row, const std::string& check, bool pass) {
    checks_.push_back({{"row", row}, {"check", check}, {"pass", pass}});
    if (!pass) ++failed_;
  }

  json summary(const ExperimentConfig& config, std::size_t rows) const {
    return {{"experiment", config.name}, {"config", config.to_json()}, {"seed", config.seed},
            {"rows", rows},              {"checks", checks_},          {"checks_total", checks_.size()},
            {"checks_failed", failed_},  {"all_pass", failed_ == 0}};
  }

 private:
  json checks_ = json::array();
  std::size_t failed_ = 0;
};

FieldPtr field_for_length(std::size_t n) {
  unsigned w = 1;
  while ((std::size_t{1} << w) < n) ++w;
  return Field::binary(w);
}

AttackerStrategy parse_attacker(const std::string& spec) {
  if (spec == "min-weight") return AttackerStrategy::min_weight_forgery();
  if (spec.rfind("raw:", 0) == 0) {
    try {
      return AttackerStrategy::raw_corruption(std::stoul(spec.substr(4)));
    } catch (const std::logic_error&) {
    }
  }
  throw Error(ErrorCode::ConfigError, "attacker must be 'min-weight' or 'raw:<positions>', got '" + spec + "'");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::ConfigError, what);
}

void validate_common(const ExperimentConfig& c) {
  require(c.trials >= 1, "trials must be at least 1");
  require(c.lanes >= 1, "lanes must be at least 1");
  require(c.jobs >= 1, "jobs must be at least 1");
}

std::size_t max_of(const std::vector<std::size_t>& v) { return v.empty() ? 0 : *std::max_element(v.begin(), v.end()); }

// One simulation per alpha, long enough to deliver `needed` flow-1 packets.
std::vector<SimStats> simulate_alpha_grid(const ExperimentConfig& c, std::uint64_t needed) {
  std::vector<SimStats> sims(c.alpha_values.size());
  parallel_for(sims.size(), c.jobs, [&](std::size_t a) {
    SimOptions options;
    options.until_delivered = needed;
    sims[a] = run_sim(Topology::two_flows(), c.alpha_values[a], std::numeric_limits<std::uint64_t>::max(),
                      derive_seed(c.seed, kSimStream, a), options);
  });
  return sims;
}

void validate_alpha_grid(const ExperimentConfig& c) {
  require(!c.alpha_values.empty(), "alpha grid is empty");
  for (double a : c.alpha_values) require(a > 0.0 && a <= 0.5, "alpha values must lie in (0, 0.5]");
}

bool nondecreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1]) return false;
  }
  return true;
}

// No interior local minimum: differences go up then down at most once.
bool unimodal(const std::vector<double>& v) {
  bool falling = false;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double d = v[i] - v[i - 1];
    if (d < 0) falling = true;
    if (d > 0 && falling) return false;
  }
  return true;
}

Cell opt_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(std::monostate{}); }

}  // namespace

json ExperimentConfig::to_json() const {
  return {{"name", name},
          {"seed", seed},
          {"trials", trials},
          {"jobs", jobs},
          {"lanes", lanes},
          {"n", n_values},
          {"beta", beta_values},
          {"p_obs", p_obs_values},
          {"alpha", alpha_values},
          {"m", m_values},
          {"k_mode", k_mode},
          {"k", k_values},
          {"attacker", attacker},
          {"min_delivered", min_delivered},
          {"fq", fq},
          {"l_sym", l_sym},
          {"m_check", m_check_values},
          {"matrices", matrices}};
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"single-flow", "two-flows", "hamming", "linear-limitation"};
  return names;
}

ExperimentConfig default_config(const std::string& name) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw Error(ErrorCode::ConfigError, "unknown experiment '" + name + "'");
  }
  ExperimentConfig c;
  c.name = name;
  if (name == "single-flow") c.trials = 100000;
  if (name == "two-flows") c.trials = 2000;
  return c;
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw Error(ErrorCode::InvalidParameters, "no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

const Cell& Table::at(std::size_t row, const std::string& name) const { return rows.at(row).at(column(name)); }

double Table::number(std::size_t row, const std::string& name) const {
  const Cell& c = at(row, name);
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  throw Error(ErrorCode::InvalidParameters, "column '" + name + "' is not numeric in this row");
}

bool Table::empty_cell(std::size_t row, const std::string& name) const {
  return std::holds_alternative<std::monostate>(at(row, name));
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  char buf[64];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              std::snprintf(buf, sizeof buf, "%.17g", v);
              out << buf;
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
              out << v;
            } else if constexpr (std::is_same_v<T, std::string>) {
              out << v;
            }
          },
          row[i]);
    }
    out << '\n';
  }
}

std::string to_csv(const Table& table) {
  std::ostringstream s;
  write_csv(s, table);
  return s.str();
}

std::size_t sign_changes_of_differences(const std::vector<double>& values) {
  std::size_t changes = 0;
  int last = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double d = values[i] - values[i - 1];
    const int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

ExperimentResult experiment_single_flow(const ExperimentConfig& c) {
  validate_common(c);
  require(!c.n_values.empty() && !c.p_obs_values.empty(), "single-flow needs n and p_obs grids");
  const bool fixed = c.k_mode == "fixed";
  require(fixed || c.k_mode == "select", "k_mode must be 'select' or 'fixed'");
  require(!fixed || c.k_values.size() == c.n_values.size(), "fixed k_mode needs one k per n");
  require(fixed || !c.beta_values.empty(), "select k_mode needs a beta grid");
  const AttackerStrategy attacker = parse_attacker(c.attacker);

  ExperimentResult result;
  Table& t = result.table;
  t.header = {"n",         "beta",      "p_obs",     "k",         "no_code",  "rate",
              "p_miss_analytic", "p_miss_bound_exp", "n_pow_neg_beta", "sim_p_miss", "std_error", "ci_lower",
              "ci_upper",  "trials",    "within_3se"};
  CheckLog log;
  std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<BlockCode>> codes;
  const auto code_for = [&](std::size_t n, std::size_t k) -> const BlockCode& {
    auto& slot = codes[{n, k}];
    if (!slot) slot = std::make_unique<BlockCode>(BlockCode::reed_solomon(n, k, field_for_length(n)));
    return *slot;
  };

  std::uint64_t point = 0;
  std::vector<double> fixed_curve;
  for (std::size_t ni = 0; ni < c.n_values.size(); ++ni) {
    const std::size_t n = c.n_values[ni];
    require(n >= 2, "block length must be at least 2");
    const std::vector<double> betas = fixed ? std::vector<double>{0.0} : c.beta_values;
    for (double beta : betas) {
      fixed_curve.clear();
      for (double p : c.p_obs_values) {
        require(p > 0.0 && p <= 1.0, "p_obs values must lie in (0, 1]");
        const std::int64_t row = static_cast<std::int64_t>(t.rows.size());
        std::optional<std::size_t> k = fixed ? std::optional<std::size_t>(c.k_values[ni]) : analytic::select_k(n, p, beta);
        std::vector<Cell> r = {static_cast<std::int64_t>(n), fixed ? Cell{} : Cell(beta), p};
        if (!k) {
          r.insert(r.end(), {Cell{}, std::int64_t{1}});
          r.resize(t.header.size());
          t.rows.push_back(std::move(r));
          ++point;
          continue;
        }
        const BlockCode& code = code_for(n, *k);
        std::optional<double> analytic_p;
        if (attacker.kind == AttackKind::MinWeightForgery) {
          analytic_p = analytic::p_miss_mds(n, *k, p);
        } else if (attacker.positions <= n - *k) {
          analytic_p = 0.0;
        }
        const auto est = estimate_p_miss(code, attacker, ObservationModel::bernoulli(p),
                                         {c.lanes, c.trials, c.seed, point++, c.jobs});
        const bool agree = analytic_p && within_sigmas(est.estimate, *analytic_p, est.trials);
        const std::optional<double> bound =
            fixed ? std::nullopt : std::optional<double>(std::pow(static_cast<double>(n), -beta));
        r.insert(r.end(), {static_cast<std::int64_t>(*k), std::int64_t{0},
                           static_cast<double>(*k) / static_cast<double>(n), opt_cell(analytic_p),
                           analytic::p_miss_bound(n, *k, p), opt_cell(bound), est.estimate, est.std_error, est.lower,
                           est.upper, static_cast<std::int64_t>(est.trials), std::int64_t{agree ? 1 : 0}});
        t.rows.push_back(std::move(r));
        if (analytic_p) {
          log.add(row, "sim_within_3se", agree, est.estimate, *analytic_p,
                  3.0 * reference_std_error(*analytic_p, est.trials));
          fixed_curve.push_back(*analytic_p);
        }
        if (!fixed && analytic_p) {
          const double limit = std::pow(static_cast<double>(n), -beta);
          log.add(row, "p_miss_le_n_pow_neg_beta", *analytic_p <= limit, *analytic_p, limit, 0.0);
        }
      }
      if (fixed && !fixed_curve.empty()) {
        auto reversed = fixed_curve;
        std::reverse(reversed.begin(), reversed.end());
        log.add(-1, "p_miss_nonincreasing_in_p_obs(n=" + std::to_string(n) + ")", nondecreasing(reversed));
      }
    }
  }
  result.summary = log.summary(c, t.rows.size());
  return result;
}

ExperimentResult experiment_two_flows(const ExperimentConfig& c) {
  validate_common(c);
  validate_alpha_grid(c);
  require(!c.n_values.empty() && !c.beta_values.empty(), "two-flows needs n and beta grids");
  const AttackerStrategy attacker = parse_attacker(c.attacker);
  require(attacker.kind == AttackKind::MinWeightForgery, "two-flows uses the minimum-weight attacker");

  const std::uint64_t needed = std::max<std::uint64_t>(c.min_delivered, c.trials * max_of(c.n_values));
  const auto sims = simulate_alpha_grid(c, needed);
  std::vector<std::shared_ptr<const std::vector<bool>>> traces;
  for (const auto& s : sims) traces.push_back(s.comparable_trace);

  ExperimentResult result;
  Table& t = result.table;
  t.header = {"alpha",        "n",           "beta",       "k",           "no_code",        "q_analytic",
              "q_sim",        "q_std_error", "delivered",  "slots",       "t_analytic",     "t_sim",
              "p_miss_analytic", "p_miss_continuous", "n_pow_neg_beta", "sim_p_miss", "std_error", "ci_lower",
              "ci_upper",     "trials",      "te_analytic", "te_sim"};
  CheckLog log;
  json shape = json::array();

  for (std::size_t a = 0; a < sims.size(); ++a) {
    const double alpha = c.alpha_values[a];
    const auto& s = sims[a];
    const double q = analytic::aloha_obs_prob(alpha);
    const double t_an = analytic::aloha_throughput(alpha);
    log.add(-1, "q_within_3se(alpha=" + std::to_string(alpha) + ")",
            within_sigmas(s.observation_rate(), q, s.delivered), s.observation_rate(), q,
            3.0 * reference_std_error(q, s.delivered));
    log.add(-1, "t_within_3se(alpha=" + std::to_string(alpha) + ")", within_sigmas(s.s1_to_a_rate(), t_an, s.slots),
            s.s1_to_a_rate(), t_an, 3.0 * reference_std_error(t_an, s.slots));
  }

  std::uint64_t point = 0;
  for (std::size_t n : c.n_values) {
    require(n >= 2 && n <= 65536, "block length must lie in [2, 65536]");
    for (double beta : c.beta_values) {
      std::vector<double> p_int, p_cont, te;
      for (std::size_t a = 0; a < sims.size(); ++a) {
        const double alpha = c.alpha_values[a];
        const auto& s = sims[a];
        const double q = analytic::aloha_obs_prob(alpha);
        const std::int64_t row = static_cast<std::int64_t>(t.rows.size());
        std::vector<Cell> r = {alpha, static_cast<std::int64_t>(n), beta};
        const auto k = analytic::select_k(n, q, beta);
        const double q_sim = s.observation_rate();
        if (!k) {
          r.insert(r.end(), {Cell{}, std::int64_t{1}, q, q_sim, reference_std_error(q, s.delivered),
                             static_cast<std::int64_t>(s.delivered), static_cast<std::int64_t>(s.slots),
                             analytic::aloha_throughput(alpha), s.s1_to_a_rate()});
          r.resize(t.header.size());
          t.rows.push_back(std::move(r));
          ++point;
          continue;
        }
        const BlockCode code = BlockCode::reed_solomon(n, *k, field_for_length(n));
        const double p_an = analytic::p_miss_mds(n, *k, q);
        const double p_real = analytic::p_miss_selected_real(n, q, beta);
        const double bound = std::pow(static_cast<double>(n), -beta);
        const auto est = estimate_p_miss(code, attacker, ObservationModel::from_trace(traces[a]),
                                         {c.lanes, c.trials, c.seed, point++, c.jobs});
        const double rate = static_cast<double>(*k) / static_cast<double>(n);
        const auto te_an = analytic::effective_throughput(alpha, n, beta);
        const double te_sim = s.delivery_rate() * rate;
        r.insert(r.end(), {static_cast<std::int64_t>(*k), std::int64_t{0}, q, q_sim,
                           reference_std_error(q, s.delivered), static_cast<std::int64_t>(s.delivered),
                           static_cast<std::int64_t>(s.slots), analytic::aloha_throughput(alpha), s.s1_to_a_rate(),
                           p_an, p_real, bound, est.estimate, est.std_error, est.lower, est.upper,
                           static_cast<std::int64_t>(est.trials), opt_cell(te_an), te_sim});
        t.rows.push_back(std::move(r));
        log.add(row, "sim_p_miss_within_3se", within_sigmas(est.estimate, p_an, est.trials), est.estimate, p_an,
                3.0 * reference_std_error(p_an, est.trials));
        log.add(row, "p_miss_le_n_pow_neg_beta", p_an <= bound, p_an, bound, 0.0);
        p_int.push_back(p_an);
        p_cont.push_back(p_real);
        if (te_an) te.push_back(*te_an);
      }
      const std::string tag = "(n=" + std::to_string(n) + ",beta=" + std::to_string(beta) + ")";
      log.add(-1, "p_miss_continuous_nondecreasing" + tag, nondecreasing(p_cont));
      log.add(-1, "te_unimodal" + tag, unimodal(te));
      shape.push_back({{"n", n},
                       {"beta", beta},
                       {"available_points", p_int.size()},
                       {"p_miss_integer_k_nondecreasing", nondecreasing(p_int)},
                       {"p_miss_continuous_nondecreasing", nondecreasing(p_cont)},
                       {"te_sign_changes", sign_changes_of_differences(te)}});
    }
  }
  result.summary = log.summary(c, t.rows.size());
  result.summary["shape"] = shape;
  return result;
}

ExperimentResult experiment_hamming(const ExperimentConfig& c) {
  validate_common(c);
  validate_alpha_grid(c);
  require(!c.m_values.empty(), "hamming needs an m grid");
  std::size_t max_n = 0;
  for (unsigned m : c.m_values) {
    require(m >= 2 && m <= 10, "Hamming m must lie in [2, 10]");
    max_n = std::max(max_n, (std::size_t{1} << m) - 1);
  }
  const std::uint64_t needed = std::max<std::uint64_t>(c.min_delivered, c.trials * max_n);
  const auto sims = simulate_alpha_grid(c, needed);
  const AttackerStrategy attacker = AttackerStrategy::min_weight_forgery();

  ExperimentResult result;
  Table& t = result.table;
  t.header = {"m",          "n",        "k",         "model",    "alpha",    "p_obs",
              "q_sim",      "rate",     "p_miss_mds_formula", "p_miss_dmin_mode", "sim_p_miss", "std_error",
              "ci_lower",   "ci_upper", "trials",    "matches_dmin_mode", "matches_mds_formula", "te_analytic",
              "te_sim"};
  CheckLog log;
  json divergence = json::array();
  std::vector<double> rates;
  std::uint64_t point = 0;

  for (unsigned m : c.m_values) {
    const BlockCode code = BlockCode::hamming(m);
    const double rate = static_cast<double>(code.k()) / static_cast<double>(code.n());
    rates.push_back(rate);
    const auto emit = [&](const std::string& model, std::optional<double> alpha, double p_obs,
                          const ObservationModel& obs, const SimStats* sim) {
      const std::int64_t row = static_cast<std::int64_t>(t.rows.size());
      const auto modes = analytic::p_miss_hamming_modes(m, p_obs);
      const auto est = estimate_p_miss(code, attacker, obs, {c.lanes, c.trials, c.seed, point++, c.jobs});
      const bool dmin_ok = within_sigmas(est.estimate, modes.dmin_mode, est.trials);
      const bool mds_ok = within_sigmas(est.estimate, modes.mds_formula, est.trials);
      std::vector<Cell> r = {static_cast<std::int64_t>(m),
                             static_cast<std::int64_t>(code.n()),
                             static_cast<std::int64_t>(code.k()),
                             model,
                             opt_cell(alpha),
                             p_obs,
                             sim ? Cell(sim->observation_rate()) : Cell{},
                             rate,
                             modes.mds_formula,
                             modes.dmin_mode,
                             est.estimate,
                             est.std_error,
                             est.lower,
                             est.upper,
                             static_cast<std::int64_t>(est.trials),
                             std::int64_t{dmin_ok ? 1 : 0},
                             std::int64_t{mds_ok ? 1 : 0},
                             alpha ? Cell(analytic::aloha_throughput(*alpha) * rate) : Cell{},
                             sim ? Cell(sim->delivery_rate() * rate) : Cell{}};
      t.rows.push_back(std::move(r));
      log.add(row, "sim_matches_dmin_mode", dmin_ok, est.estimate, modes.dmin_mode,
              3.0 * reference_std_error(modes.dmin_mode, est.trials));
      if (!mds_ok) {
        divergence.push_back({{"row", row},
                              {"m", m},
                              {"p_obs", p_obs},
                              {"sim_p_miss", est.estimate},
                              {"mds_formula", modes.mds_formula},
                              {"dmin_mode", modes.dmin_mode},
                              {"mds_exponent", m + 1},
                              {"dmin_exponent", 3}});
      }
    };
    for (std::size_t a = 0; a < sims.size(); ++a) {
      const double alpha = c.alpha_values[a];
      emit("aloha", alpha, analytic::aloha_obs_prob(alpha), ObservationModel::from_trace(sims[a].comparable_trace),
           &sims[a]);
    }
    for (double p : c.p_obs_values) {
      require(p >= 0.0 && p <= 1.0, "p_obs values must lie in [0, 1]");
      emit("bernoulli", std::nullopt, p, ObservationModel::bernoulli(p), nullptr);
    }
  }
  if (std::is_sorted(c.m_values.begin(), c.m_values.end())) log.add(-1, "rate_increasing_in_m", std::adjacent_find(rates.begin(), rates.end(), std::greater_equal<>()) == rates.end());

  result.summary = log.summary(c, t.rows.size());
  result.summary["divergence"] = {
      {"description",
       "Hamming codes are not MDS: the minimum-weight attacker alters 3 packets, so the miss probability is "
       "(1-p_obs)^3, not (1-p_obs)^(m+1) from the MDS formula. Rows listed here disagree with the MDS-formula "
       "value by more than 3 standard errors; this is expected and not a failure."},
      {"rows", divergence}};
  return result;
}

ExperimentResult experiment_linear_limitation(const ExperimentConfig& c) {
  require(c.matrices >= 1, "matrices must be at least 1");
  require(c.l_sym >= 1, "l_sym must be at least 1");
  const FieldPtr field = Field::of_order(c.fq);
  const double space = std::pow(static_cast<double>(c.fq), static_cast<double>(c.l_sym));
  require(space <= static_cast<double>(1u << 20), "exhaustive mode needs fq^l_sym <= 2^20");
  const auto nonzero = static_cast<std::uint64_t>(space) - 1;

  ExperimentResult result;
  Table& t = result.table;
  t.header = {"m_check",       "matrix",       "rank",           "nullity",        "nonzero_errors",
              "linear_misses", "predicted_misses", "miss_rate",  "lower_bound",    "upper_bound",
              "exact_match",   "within_bounds", "nonlinear_misses", "throughput_linear", "throughput_nonlinear"};
  CheckLog log;

  for (std::size_t m : c.m_check_values) {
    require(m >= 1 && m <= c.l_sym, "m_check values must lie in [1, l_sym]");
    for (std::size_t j = 0; j < c.matrices; ++j) {
      const std::int64_t row = static_cast<std::int64_t>(t.rows.size());
      Rng rng(derive_seed(c.seed, m, j));
      const LinearChecker checker = LinearChecker::random(field, m, c.l_sym, rng);
      const std::size_t r = rank(checker.m1);
      const std::size_t nullity = c.l_sym - r;
      const Vector p = random_vector(*field, c.l_sym, rng);

      std::uint64_t linear_misses = 0;
      std::uint64_t nonlinear_misses = 0;
      Vector e(c.l_sym, 0);
      Vector fwd(c.l_sym);
      for (std::uint64_t idx = 1; idx <= nonzero; ++idx) {
        std::uint64_t x = idx;
        for (auto& s : e) {
          s = static_cast<Symbol>(x % c.fq);
          x /= c.fq;
        }
        for (std::size_t i = 0; i < c.l_sym; ++i) fwd[i] = field->add(p[i], e[i]);
        if (linear_check_roundtrip(checker, p, fwd) == CheckResult::Accept) ++linear_misses;
        if (nonlinear_check(p, fwd) == CheckResult::Accept) ++nonlinear_misses;
      }
      const auto predicted = static_cast<std::uint64_t>(std::pow(static_cast<double>(c.fq), static_cast<double>(nullity))) - 1;
      const double rate = static_cast<double>(linear_misses) / static_cast<double>(nonzero);
      const auto bounds = analytic::linear_miss_bounds(c.fq, c.l_sym, m);
      const bool exact = linear_misses == predicted;
      const bool within = rate >= bounds.lower && rate <= bounds.upper;
      const double t_lin = analytic::throughput_linear_watchdog(c.l_sym, m);
      const double t_nonlin = analytic::throughput_linear_watchdog(c.l_sym, 1);
      t.rows.push_back({static_cast<std::int64_t>(m), static_cast<std::int64_t>(j), static_cast<std::int64_t>(r),
                        static_cast<std::int64_t>(nullity), static_cast<std::int64_t>(nonzero),
                        static_cast<std::int64_t>(linear_misses), static_cast<std::int64_t>(predicted), rate,
                        bounds.lower, bounds.upper, std::int64_t{exact ? 1 : 0}, std::int64_t{within ? 1 : 0},
                        static_cast<std::int64_t>(nonlinear_misses), t_lin, t_nonlin});
      log.add(row, "exhaustive_misses_match_kernel", exact, static_cast<double>(linear_misses),
              static_cast<double>(predicted), 0.0);
      log.add(row, "miss_rate_within_bounds", within, rate, bounds.lower, 0.0);
      log.add(row, "strictly_above_bound_iff_rank_deficient", (rate > bounds.lower) == (r < m));
      log.add(row, "nonlinear_misses_zero", nonlinear_misses == 0, static_cast<double>(nonlinear_misses), 0.0, 0.0);
      log.add(row, "nonlinear_throughput_not_lower", t_nonlin >= t_lin, t_nonlin, t_lin, 0.0);
    }
  }
  result.summary = log.summary(c, t.rows.size());
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.name == "single-flow") return experiment_single_flow(config);
  if (config.name == "two-flows") return experiment_two_flows(config);
  if (config.name == "hamming") return experiment_hamming(config);
  if (config.name == "linear-limitation") return experiment_linear_limitation(config);
  throw Error(ErrorCode::ConfigError, "unknown experiment '" + config.name + "'");
}

}  // namespace wdc
