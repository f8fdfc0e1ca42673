#include "dampwave/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace dampwave {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string where(const ConfigFile& f, const std::string& key) {
  const int line = f.line_of(key);
  std::ostringstream os;
  os << f.source();
  if (line > 0) os << ":" << line;
  return os.str();
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& is, const std::string& source) {
  ConfigFile f;
  f.source_ = source;
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("", line_no, source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("", line_no, source + ":" + std::to_string(line_no) + ": empty key");
    if (f.entries_.count(key)) {
      throw ConfigError(key, line_no, source + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    f.entries_[key] = {value, line_no};
  }
  return f;
}

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& source) {
  std::istringstream is(text);
  return parse(is, source);
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("", 0, "cannot open config file " + path.string());
  return parse(is, path.string());
}

std::optional<std::string> ConfigFile::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.first;
}

int ConfigFile::line_of(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.second;
}

std::string ConfigFile::require_string(const std::string& key) const {
  const auto v = get(key);
  if (!v) throw ConfigError(key, 0, source_ + ": missing required key '" + key + "'");
  return *v;
}

double ConfigFile::require_double(const std::string& key) const {
  const std::string s = require_string(key);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw ConfigError(key, line_of(key), where(*this, key) + ": key '" + key + "' expects a number, got '" + s + "'");
  }
  return value;
}

int ConfigFile::require_int(const std::string& key) const {
  const std::string s = require_string(key);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(key, line_of(key), where(*this, key) + ": key '" + key + "' expects an integer, got '" + s + "'");
  }
  return value;
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
  return has(key) ? require_double(key) : fallback;
}

int ConfigFile::get_int(const std::string& key, int fallback) const { return has(key) ? require_int(key) : fallback; }

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

void ConfigFile::set(const std::string& key, const std::string& value) {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_[key] = {value, 0};
  } else {
    it->second.first = value;
  }
}

std::string ConfigFile::canonical() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + v.first + "\n";
  return out;
}

std::string ConfigFile::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = {
      "problem.dim",   "problem.p",        "problem.source",  "weight.lambda",         "weight.A",
      "grid.L",        "grid.M",           "solver.dt",       "solver.t_end",          "solver.blowup_threshold",
      "solver.dealias", "solver.record_every", "data.kind",   "data.amplitude",        "data.u1_amplitude",
      "data.width",    "data.decay",       "linear.t_min",    "linear.t_max",          "linear.samples",
      "audit.snapshot_interval"};
  return keys;
}

std::pair<RealField, RealField> make_initial_data(const DataSpec& data, const GridSpec& grid) {
  if (!(data.width > 0.0)) throw std::invalid_argument("data width must be > 0");
  std::function<double(double)> profile;
  if (data.kind == "gaussian") {
    profile = [w2 = data.width * data.width](double r2) { return std::exp(-r2 / w2); };
  } else if (data.kind == "polynomial") {
    if (!(data.decay > 0.0)) throw std::invalid_argument("polynomial data needs decay > 0");
    profile = [w2 = data.width * data.width, k = data.decay](double r2) { return std::pow(1.0 + r2 / w2, -k); };
  } else {
    throw std::invalid_argument("unknown data kind '" + data.kind + "'");
  }
  RealField u0(grid), u1(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double g = profile(grid.radius_sq(i));
    u0.values[i] = data.amplitude * g;
    u1.values[i] = data.u1_amplitude * g;
  }
  return {std::move(u0), std::move(u1)};
}

ExperimentConfig parse_experiment(const ConfigFile& file) {
  const auto& known = known_config_keys();
  for (const auto& [key, entry] : file.entries()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(key, entry.second, where(file, key) + ": unknown key '" + key + "'");
    }
  }

  ExperimentConfig cfg;
  SolverConfig& s = cfg.solver;
  s.params.dim = file.require_int("problem.dim");
  s.params.p = file.require_double("problem.p");
  if (s.params.dim < 1 || s.params.dim > 3) {
    throw ConfigError("problem.dim", file.line_of("problem.dim"), where(file, "problem.dim") + ": problem.dim must be 1, 2 or 3");
  }
  if (!(s.params.p > 1.0)) {
    throw ConfigError("problem.p", file.line_of("problem.p"), where(file, "problem.p") + ": problem.p must be > 1");
  }
  try {
    s.source = parse_source_kind(file.get_string("problem.source", "abs_power"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("problem.source", file.line_of("problem.source"), where(file, "problem.source") + ": " + e.what());
  }

  const AdmissibleRange range = admissible_range(s.params.dim);
  const bool in_range = range.contains(s.params.p);
  if (!in_range) {
    std::ostringstream w;
    w << "p = " << s.params.p << " lies outside (" << range.lower_open << ", " << range.upper_closed
      << "]; small-data global existence is not guaranteed";
    cfg.warnings.push_back(w.str());
  }
  if (file.has("weight.lambda")) {
    s.params.lambda = file.require_double("weight.lambda");
  } else if (in_range) {
    s.params.lambda = suggested_lambda(s.params.dim, s.params.p);
  } else {
    s.params.lambda = std::max(1.0, s.params.dim / 2.0);
  }
  if (!(s.params.lambda > 0.0)) {
    throw ConfigError("weight.lambda", file.line_of("weight.lambda"), where(file, "weight.lambda") + ": weight.lambda must be > 0");
  }
  if (in_range && !(s.params.lambda > lambda_threshold(s.params.dim, s.params.p))) {
    std::ostringstream w;
    w << "lambda = " << s.params.lambda << " does not exceed the threshold "
      << lambda_threshold(s.params.dim, s.params.p);
    cfg.warnings.push_back(w.str());
  }
  const double A = file.get_double("weight.A", 2.0 * s.params.lambda);
  try {
    s.weight = WeightParams::make(A, s.params.lambda);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("weight.A", file.line_of("weight.A"), where(file, "weight.A") + ": " + e.what());
  }

  s.grid.dim = s.params.dim;
  s.grid.half_width = file.require_double("grid.L");
  s.grid.points = file.require_int("grid.M");
  try {
    s.grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("grid.M", file.line_of("grid.M"), where(file, "grid.M") + ": " + e.what());
  }

  s.dt = file.require_double("solver.dt");
  s.t_end = file.require_double("solver.t_end");
  s.blowup_threshold = file.get_double("solver.blowup_threshold", 1e6);
  s.record_every = file.get_int("solver.record_every", 1);
  const std::string dealias = file.get_string("solver.dealias", "auto");
  if (dealias == "true") {
    s.dealias = true;
  } else if (dealias == "false") {
    s.dealias = false;
  } else if (dealias != "auto") {
    throw ConfigError("solver.dealias", file.line_of("solver.dealias"),
                      where(file, "solver.dealias") + ": solver.dealias must be auto, true or false");
  }
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("solver.dt", file.line_of("solver.dt"), where(file, "solver") + ": " + e.what());
  }

  cfg.data.kind = file.get_string("data.kind", "gaussian");
  if (cfg.data.kind != "gaussian" && cfg.data.kind != "polynomial") {
    throw ConfigError("data.kind", file.line_of("data.kind"), where(file, "data.kind") + ": data.kind must be gaussian or polynomial");
  }
  cfg.data.amplitude = file.require_double("data.amplitude");
  cfg.data.u1_amplitude = file.get_double("data.u1_amplitude", cfg.data.amplitude);
  cfg.data.width = file.get_double("data.width", 1.0);
  cfg.data.decay = file.get_double("data.decay", 2.0);
  if (!(cfg.data.width > 0.0)) {
    throw ConfigError("data.width", file.line_of("data.width"), where(file, "data.width") + ": data.width must be > 0");
  }

  cfg.linear.t_min = file.get_double("linear.t_min", 10.0);
  cfg.linear.t_max = file.get_double("linear.t_max", 100.0);
  cfg.linear.samples = file.get_int("linear.samples", 40);
  if (!(cfg.linear.t_min >= 0.0 && cfg.linear.t_max > cfg.linear.t_min) || cfg.linear.samples < 10) {
    throw ConfigError("linear.samples", file.line_of("linear.samples"),
                      where(file, "linear") + ": need 0 <= t_min < t_max and at least 10 samples");
  }
  cfg.snapshot_interval = file.get_double("audit.snapshot_interval", 0.5);
  if (!(cfg.snapshot_interval > 0.0)) {
    throw ConfigError("audit.snapshot_interval", file.line_of("audit.snapshot_interval"),
                      where(file, "audit.snapshot_interval") + ": must be > 0");
  }
  return cfg;
}

}  // namespace dampwave
