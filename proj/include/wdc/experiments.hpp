#pragma once

// Parameter sweeps that put the closed-form predictions next to simulated
// values. Each experiment returns a CSV-ready table and a JSON summary with a
// pass/fail entry for every agreement check.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace wdc {

struct ExperimentConfig {
  std::string name;  // single-flow | two-flows | hamming | linear-limitation
  std::uint64_t seed = 1;
  std::uint64_t trials = 10000;  // blocks per grid point (single-flow: 100000, two-flows: 2000)
  unsigned jobs = 1;
  std::size_t lanes = 1;  // symbols per packet in block simulations

  std::vector<std::size_t> n_values = {15, 63, 255};
  std::vector<double> beta_values = {1.0, 2.0};
  std::vector<double> p_obs_values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<double> alpha_values = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  std::vector<unsigned> m_values = {3, 4, 5, 6};

  // single-flow: "select" picks k per (n, beta, p_obs); "fixed" uses k_values,
  // one per entry of n_values.
  std::string k_mode = "select";
  std::vector<std::size_t> k_values;
  // "min-weight" or "raw:<positions>".
  std::string attacker = "min-weight";

  // two-flows / hamming: delivered flow-1 packets simulated per alpha (at
  // least trials * n are always simulated).
  std::uint64_t min_delivered = 100000;

  // linear-limitation
  std::uint32_t fq = 2;
  std::size_t l_sym = 8;
  std::vector<std::size_t> m_check_values = {1, 2, 3, 4, 5, 6, 7, 8};
  std::size_t matrices = 20;

  nlohmann::json to_json() const;
};

// Default configuration of a named experiment (ConfigError for unknown names).
ExperimentConfig default_config(const std::string& name);
const std::vector<std::string>& experiment_names();

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  std::size_t column(const std::string& name) const;
  const Cell& at(std::size_t row, const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
  bool empty_cell(std::size_t row, const std::string& name) const;
};

// Reals use 17 significant digits, empty cells are empty strings.
void write_csv(std::ostream& out, const Table& table);
std::string to_csv(const Table& table);

struct ExperimentResult {
  Table table;
  nlohmann::json summary;

  bool all_pass() const { return summary.value("all_pass", false); }
};

ExperimentResult experiment_single_flow(const ExperimentConfig& config);
ExperimentResult experiment_two_flows(const ExperimentConfig& config);
ExperimentResult experiment_hamming(const ExperimentConfig& config);
ExperimentResult experiment_linear_limitation(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config);

// Number of sign changes in the first differences of `values`.
std::size_t sign_changes_of_differences(const std::vector<double>& values);

}  // namespace wdc
