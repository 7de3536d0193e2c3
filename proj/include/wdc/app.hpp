#pragma once

// Support code for the command-line tool: configuration files, output
// directories and the run manifest.

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wdc/code.hpp"
#include "wdc/experiments.hpp"

namespace wdc::app {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kNoCode = 2, kIo = 3, kSelftestFailed = 4 };

// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

// Default configuration of `name` with the keys of an INI file applied.
//
//   [experiment] seed trials jobs lanes attacker k_mode min_delivered
//   [grid]       n beta p_obs alpha m k      (comma or space separated lists)
//   [linear]     fq l_sym m_check matrices
//
// An [experiment] name key, when present, must equal `name`. Unknown sections
// or keys and malformed values raise ConfigError.
ExperimentConfig load_config(const std::string& name, const std::optional<std::filesystem::path>& file);
ExperimentConfig parse_config(const std::string& name, std::istream& in);

// --out, else $WDC_OUTPUT_DIR, else "out".
std::filesystem::path resolve_output_dir(const std::optional<std::string>& flag);

// Lowercase hex SHA-256 of a file's bytes (IoError when unreadable).
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(const std::string& bytes);

std::string iso8601_utc(std::chrono::system_clock::time_point t);

struct RunManifest {
  std::string version = kVersion;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::string started;
  std::string finished;
  std::vector<std::pair<std::string, std::string>> digests;  // file name, sha256

  nlohmann::json to_json() const;
};

struct ExperimentRun {
  ExperimentResult result;
  RunManifest manifest;
  std::filesystem::path csv;
  std::filesystem::path summary;
  std::filesystem::path manifest_path;
};

// Runs the experiment and writes <name>.csv, <name>.summary.json and, last,
// manifest.json into `dir` (created if needed).
ExperimentRun run_to_directory(const ExperimentConfig& config, const std::filesystem::path& dir);

// One row per lane: lane,p0,...,p{n-1} with symbol values as integers.
void write_codeword_csv(std::ostream& out, const BlockCode& code, const std::vector<Packet>& codeword);

// Parses "15,63 255" style lists.
std::vector<double> parse_real_list(const std::string& text);
std::vector<std::size_t> parse_size_list(const std::string& text);

}  // namespace wdc::app
