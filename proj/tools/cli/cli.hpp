#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "poisonlab/experiments.hpp"

namespace poisonlab::cli {

inline constexpr const char* kArtifactVersion = "0.1.0";

enum class Command { Verify, Run, Sweep, AttackEval, Curve };

std::string to_string(Command c);
Command command_from_string(const std::string& text);

/// Invalid configuration; key() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error("invalid value for '" + key + "': " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct RunConfig {
  Command command = Command::Verify;
  std::vector<Fraction> etas{Fraction(1, 64)};
  std::vector<std::size_t> dims{1};
  /// Empty: n = ceil(size_factor / eta).
  std::vector<std::size_t> sizes;
  double size_factor = 4.0;
  std::size_t trials = kDefaultTrials;
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::string> learners{"exp"};
  std::vector<std::string> adversaries{"greedy"};
  std::vector<double> biases{0.25};
  /// Empty or "-": standard output.
  std::string out;
  std::string format = "csv";
  std::size_t threads = 1;
  bool inject_fault = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Known configuration keys, sorted.
const std::vector<std::string>& config_keys();

/// Flat key/value pairs to a validated config. Unknown keys are rejected.
RunConfig config_from_pairs(const std::map<std::string, std::string>& pairs);
/// Parses "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> parse_config_text(const std::string& text);
/// Canonical "key = value" lines sorted by key; parse_config_text of the
/// result gives back the same config.
std::string serialize_config(const RunConfig& cfg);
/// Hash of the canonical form without the output-only keys (out, format,
/// threads), as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

/// argv without the program name. File values (--config) are overridden by
/// flags. Throws ConfigError, or CLI::ParseError for malformed command lines.
RunConfig parse_config(const std::vector<std::string>& args);

struct ResultRow {
  std::string command;
  ExcessEstimate estimate;
  std::optional<double> loss;
  std::optional<double> bayes;
  std::string bound_name;
  std::optional<double> bound_value;
  bool pass = true;
  std::string error;
  std::string artifact_version = kArtifactVersion;
  std::string config_hash;
};

/// Column order of the CSV output and field names of the JSON output.
const std::vector<std::string>& result_columns();

/// Flattened string fields of a row, in result_columns() order.
std::vector<std::string> row_fields(const ResultRow& row);

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void write_json(const std::vector<ResultRow>& rows, std::ostream& out);
/// To cfg.out (or to out when cfg.out is empty or "-") in cfg.format. Throws
/// std::runtime_error when the path cannot be written.
void emit_results(const std::vector<ResultRow>& rows, const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Reads a CSV written by write_csv back into column -> value maps.
std::vector<std::map<std::string, std::string>> read_csv(std::istream& in);

/// Runs a parsed config; returns the process exit code.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace poisonlab::cli
