#include "wdc/app.hpp"

#include <openssl/evp.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "wdc/error.hpp"

namespace wdc::app {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;
using nlohmann::json;

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->code()) {
      case ErrorCode::NoCodeAvailable:
        return kNoCode;
      case ErrorCode::IoError:
        return kIo;
      default:
        return kUsage;
    }
  }
  return kUsage;
}

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  if (out.empty()) config_error("empty list");
  return out;
}

template <typename T>
T parse_number(const std::string& text) {
  std::istringstream in(text);
  T value{};
  in >> value;
  if (!in || !in.eof() || (std::is_unsigned_v<T> && text.find('-') != std::string::npos)) {
    config_error("malformed number '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_number<double>(item));
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(text)) out.push_back(parse_number<std::size_t>(item));
  return out;
}

ExperimentConfig parse_config(const std::string& name, std::istream& in) {
  ExperimentConfig c = default_config(name);
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    config_error(e.what());
  }

  using Setter = void (*)(ExperimentConfig&, const std::string&);
  static const std::map<std::string, std::map<std::string, Setter>> keys = {
      {"experiment",
       {
           {"name", [](ExperimentConfig& c, const std::string& v) {
              if (v != c.name) config_error("config is for '" + v + "', not '" + c.name + "'");
            }},
           {"seed", [](ExperimentConfig& c, const std::string& v) { c.seed = parse_number<std::uint64_t>(v); }},
           {"trials", [](ExperimentConfig& c, const std::string& v) { c.trials = parse_number<std::uint64_t>(v); }},
           {"jobs", [](ExperimentConfig& c, const std::string& v) { c.jobs = parse_number<unsigned>(v); }},
           {"lanes", [](ExperimentConfig& c, const std::string& v) { c.lanes = parse_number<std::size_t>(v); }},
           {"attacker", [](ExperimentConfig& c, const std::string& v) { c.attacker = v; }},
           {"k_mode", [](ExperimentConfig& c, const std::string& v) { c.k_mode = v; }},
           {"min_delivered",
            [](ExperimentConfig& c, const std::string& v) { c.min_delivered = parse_number<std::uint64_t>(v); }},
       }},
      {"grid",
       {
           {"n", [](ExperimentConfig& c, const std::string& v) { c.n_values = parse_size_list(v); }},
           {"beta", [](ExperimentConfig& c, const std::string& v) { c.beta_values = parse_real_list(v); }},
           {"p_obs", [](ExperimentConfig& c, const std::string& v) { c.p_obs_values = parse_real_list(v); }},
           {"alpha", [](ExperimentConfig& c, const std::string& v) { c.alpha_values = parse_real_list(v); }},
           {"k", [](ExperimentConfig& c, const std::string& v) { c.k_values = parse_size_list(v); }},
           {"m",
            [](ExperimentConfig& c, const std::string& v) {
              c.m_values.clear();
              for (auto m : parse_size_list(v)) c.m_values.push_back(static_cast<unsigned>(m));
            }},
       }},
      {"linear",
       {
           {"fq", [](ExperimentConfig& c, const std::string& v) { c.fq = parse_number<std::uint32_t>(v); }},
           {"l_sym", [](ExperimentConfig& c, const std::string& v) { c.l_sym = parse_number<std::size_t>(v); }},
           {"m_check", [](ExperimentConfig& c, const std::string& v) { c.m_check_values = parse_size_list(v); }},
           {"matrices", [](ExperimentConfig& c, const std::string& v) { c.matrices = parse_number<std::size_t>(v); }},
       }},
  };

  for (const auto& [section, entries] : tree) {
    const auto known = keys.find(section);
    if (known == keys.end()) {
      if (!entries.data().empty()) config_error("key '" + section + "' outside a section");
      config_error("unknown section [" + section + "]");
    }
    for (const auto& [key, value] : entries) {
      const auto setter = known->second.find(key);
      if (setter == known->second.end()) config_error("unknown key '" + key + "' in [" + section + "]");
      try {
        setter->second(c, value.data());
      } catch (const Error& e) {
        config_error(section + "." + key + ": " + e.what());
      }
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& name, const std::optional<fs::path>& file) {
  if (!file) return default_config(name);
  std::ifstream in(*file);
  if (!in) config_error("cannot read config file '" + file->string() + "'");
  return parse_config(name, in);
}

fs::path resolve_output_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("WDC_OUTPUT_DIR"); env && *env) return env;
  return "out";
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::IoError, "SHA-256 computation failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "'");
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return sha256_hex(bytes.str());
}

std::string iso8601_utc(std::chrono::system_clock::time_point t) {
  const std::time_t secs = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json RunManifest::to_json() const {
  json files = json::object();
  for (const auto& [file, digest] : digests) files[file] = {{"sha256", digest}};
  return {{"tool", "wdc"}, {"version", version}, {"config", config}, {"seed", seed},
          {"started", started}, {"finished", finished}, {"files", files}};
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << content;
  out.close();
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

}  // namespace

ExperimentRun run_to_directory(const ExperimentConfig& config, const fs::path& dir) {
  ExperimentRun run;
  run.manifest.config = config.to_json();
  run.manifest.seed = config.seed;
  run.manifest.started = iso8601_utc(std::chrono::system_clock::now());

  run.result = run_experiment(config);

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create '" + dir.string() + "': " + ec.message());
  run.csv = dir / (config.name + ".csv");
  run.summary = dir / (config.name + ".summary.json");
  run.manifest_path = dir / "manifest.json";
  write_file(run.csv, to_csv(run.result.table));
  write_file(run.summary, run.result.summary.dump(2) + "\n");

  for (const auto& path : {run.csv, run.summary}) {
    run.manifest.digests.emplace_back(path.filename().string(), sha256_file(path));
  }
  run.manifest.finished = iso8601_utc(std::chrono::system_clock::now());
  write_file(run.manifest_path, run.manifest.to_json().dump(2) + "\n");
  return run;
}

void write_codeword_csv(std::ostream& out, const BlockCode& code, const std::vector<Packet>& codeword) {
  if (codeword.size() != code.n()) throw Error(ErrorCode::LengthMismatch, "codeword needs n packets");
  out << "lane";
  for (std::size_t i = 0; i < code.n(); ++i) out << ",p" << i;
  out << '\n';
  const std::size_t lanes = codeword.empty() ? 0 : codeword.front().symbols.size();
  for (std::size_t l = 0; l < lanes; ++l) {
    out << l;
    for (const auto& p : codeword) out << ',' << p.symbols.at(l);
    out << '\n';
  }
}

}  // namespace wdc::app
