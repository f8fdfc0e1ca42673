#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dampwave/solver.hpp"

namespace dampwave {

/// Invalid or missing configuration. `key` names the offending entry and
/// `line` its line number (0 when the key is absent).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, int line, const std::string& what)
      : std::runtime_error(what), key_(std::move(key)), line_(line) {}
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

/// Flat `key = value` text with `#` comments.
class ConfigFile {
 public:
  static ConfigFile parse(std::istream& is, const std::string& source = "<config>");
  static ConfigFile parse_string(const std::string& text, const std::string& source = "<config>");
  static ConfigFile load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  int line_of(const std::string& key) const;

  std::string require_string(const std::string& key) const;
  double require_double(const std::string& key) const;
  int require_int(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;

  /// Overrides or adds a value (used by sweeps).
  void set(const std::string& key, const std::string& value);

  /// Canonical text: sorted `key = value` lines.
  std::string canonical() const;
  /// FNV-1a 64 of the canonical text, as 16 hex digits.
  std::string hash() const;
  const std::map<std::string, std::pair<std::string, int>>& entries() const { return entries_; }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::map<std::string, std::pair<std::string, int>> entries_;
};

/// Initial data shared by u0 and u1:
///   gaussian     exp(-|x|^2 / width^2)
///   polynomial   (1 + |x|^2 / width^2)^{-decay}
struct DataSpec {
  std::string kind = "gaussian";
  double amplitude = 0.01;
  double u1_amplitude = 0.01;
  double width = 1.0;
  double decay = 2.0;
};

std::pair<RealField, RealField> make_initial_data(const DataSpec& data, const GridSpec& grid);

struct LinearDecaySpec {
  double t_min = 10.0;
  double t_max = 100.0;
  int samples = 40;
};

struct ExperimentConfig {
  SolverConfig solver;
  DataSpec data;
  LinearDecaySpec linear;
  /// Snapshot spacing (time units) for energy audits.
  double snapshot_interval = 0.5;
  std::vector<std::string> warnings;
};

/// Validates every key; unknown keys and malformed values raise ConfigError.
/// Parameters outside the global-existence range only add warnings.
ExperimentConfig parse_experiment(const ConfigFile& file);

const std::vector<std::string>& known_config_keys();

}  // namespace dampwave
