// Command-line front end: simulations, decay fits, audits, inequality checks
// and parameter sweeps driven by flat key = value config files.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dampwave/experiments.hpp"
#include "dampwave/snapshot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dampwave;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct CommonFlags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool expect_global = false;
  int snapshots = 0;
};

void print_warnings(const ExperimentConfig& cfg) {
  for (const auto& w : cfg.warnings) std::cerr << "WARNING: " << w << '\n';
}

void emit(const json& j, const std::string& out, const std::string& file) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  fs::create_directories(out);
  std::ofstream os(fs::path(out) / file);
  if (!os) throw std::runtime_error("cannot write " + (fs::path(out) / file).string());
  os << j.dump(2) << '\n';
}

int cmd_simulate(const CommonFlags& f) {
  const ConfigFile file = ConfigFile::load(f.config);
  const ExperimentConfig cfg = parse_experiment(file);
  print_warnings(cfg);

  RunOptions opts;
  opts.snapshot_files_every = f.snapshots;
  const ExperimentResult res = run_experiment(cfg, opts);
  const json report = make_report(file, cfg, res);
  const fs::path out = f.out.empty() ? fs::path("runs") / file.hash() : fs::path(f.out);
  write_run_artifacts(out, report, res.outcome.series);

  if (f.snapshots > 0) {
    fs::create_directories(out / "snapshots");
    const SnapshotMeta meta{cfg.solver.params.p, cfg.solver.weight.A, cfg.solver.weight.lambda};
    for (const auto& s : res.outcome.trajectory.snapshots) {
      const auto step = std::llround(s.t / cfg.solver.dt);
      if (step % f.snapshots != 0) continue;
      std::ostringstream name;
      name << "step_" << std::setw(8) << std::setfill('0') << step << ".dwsn";
      save_snapshot(out / "snapshots" / name.str(), s, meta);
    }
  }

  const auto& o = res.outcome;
  std::cout << "status " << to_string(o.status) << "  t " << o.final_state.t << "  x_norm " << res.x_norm;
  if (o.blowup_time) std::cout << "  blowup_time " << *o.blowup_time;
  if (res.energy) std::cout << "  energy_audit " << (res.energy->passed ? "pass" : "FAIL");
  std::cout << "\nartifacts in " << out.string() << '\n';
  if (!res.audit_note.empty()) std::cerr << res.audit_note << '\n';

  if (f.expect_global && o.status != RunStatus::completed) {
    std::cerr << "expected a global solution, got status " << to_string(o.status) << '\n';
    return kExitFailure;
  }
  if (res.energy && !res.energy->passed) return kExitFailure;
  return kExitOk;
}

int cmd_linear_decay(const CommonFlags& f) {
  const ConfigFile file = ConfigFile::load(f.config);
  const ExperimentConfig cfg = parse_experiment(file);
  print_warnings(cfg);
  const LinearDecayResult res = linear_decay_experiment(cfg);

  json fits = json::object();
  for (const auto& [col, fit] : res.fits) {
    json j = to_json(fit);
    j["expected_slope"] = res.expected_slopes.at(col);
    fits[col] = j;
    std::cout << std::left << std::setw(10) << col << " slope " << std::setprecision(6) << fit.slope << " +- "
              << fit.stderr_slope << "  (expected " << res.expected_slopes.at(col) << ")\n";
  }
  const json report{{"config", {{"hash", file.hash()}, {"library_version", kLibraryVersion}}},
                    {"fits", fits},
                    {"boundary_ratio", res.profile.boundary_ratio},
                    {"boundary_contaminated", res.profile.boundary_contaminated}};
  const fs::path out = f.out.empty() ? fs::path("runs") / (file.hash() + "_linear") : fs::path(f.out);
  write_run_artifacts(out, report, res.profile.series);
  if (res.profile.boundary_contaminated) std::cerr << "WARNING: boundary contamination " << res.profile.boundary_ratio << '\n';
  return kExitOk;
}

int cmd_energy_audit(const CommonFlags& f) {
  const ConfigFile file = ConfigFile::load(f.config);
  const ExperimentConfig cfg = parse_experiment(file);
  print_warnings(cfg);
  const EnergyAuditExperiment res = energy_audit_experiment(cfg);
  if (!res.coarse.energy || !res.fine.energy) {
    std::cerr << res.coarse.audit_note << '\n';
    return kExitFailure;
  }
  const auto& c = *res.coarse.energy;
  const auto& fi = *res.fine.energy;
  const json report{{"config", {{"hash", file.hash()}, {"library_version", kLibraryVersion}}},
                    {"coarse", {{"interval", res.coarse_interval}, {"audit", to_json(c, true)}}},
                    {"fine", {{"interval", res.fine_interval}, {"audit", to_json(fi, true)}}},
                    {"status", to_string(res.coarse.outcome.status)}};
  emit(report, f.out, "energy_audit.json");
  std::cout << "interval " << res.coarse_interval << ": violation " << c.max_violation << ", quadrature "
            << c.quadrature_error_estimate << "\ninterval " << res.fine_interval << ": violation " << fi.max_violation
            << ", quadrature " << fi.quadrature_error_estimate << '\n';
  return c.passed && fi.passed ? kExitOk : kExitFailure;
}

struct CknFlags {
  std::string family = "mixed";
  std::vector<double> explicit_params;
  int dim = 0;
  double p = 0.0;
  double lambda = 0.0;
  int random_members = 0;
};

std::vector<TestFunction> random_family(int dim, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_width(std::log(0.05), std::log(20.0));
  std::uniform_int_distribution<int> kind(0, 3), degree(1, 4);
  std::vector<TestFunction> family;
  for (int i = 0; i < count; ++i) {
    TestFunction u;
    u.dim = dim;
    u.kind = static_cast<TestFunctionKind>(kind(rng));
    u.width = std::exp(log_width(rng));
    u.degree = u.kind == TestFunctionKind::polynomial_gaussian || u.kind == TestFunctionKind::hermite_gaussian ? degree(rng) : 0;
    std::uniform_real_distribution<double> shift(-u.width, u.width);
    for (int d = 0; d < dim; ++d) u.center[d] = shift(rng);
    family.push_back(u);
  }
  return family;
}

int cmd_ckn_check(const CommonFlags& f, const CknFlags& k) {
  ProblemParams params;
  if (!f.config.empty()) {
    const ExperimentConfig cfg = parse_experiment(ConfigFile::load(f.config));
    params = cfg.solver.params;
  }
  if (k.dim > 0) params.dim = k.dim;
  if (k.p > 0.0) params.p = k.p;
  if (k.lambda > 0.0) params.lambda = k.lambda;

  CknParams c;
  std::string label;
  if (!k.explicit_params.empty()) {
    if (k.explicit_params.size() != 7) throw std::invalid_argument("--params expects p,q,r,alpha,beta,sigma,a");
    c = CknParams{params.dim,          k.explicit_params[0], k.explicit_params[1], k.explicit_params[2],
                  k.explicit_params[3], k.explicit_params[4], k.explicit_params[5], k.explicit_params[6]};
    label = "explicit";
  } else {
    params.validate();
    c = weighted_lpp1_params(params);
    label = "weighted_lpp1";
  }
  const CknVerdict verdict = ckn_admissible(c);

  std::vector<TestFunction> family;
  if (k.family == "widths") {
    family = gaussian_width_family(c.dim, -5, 5);
  } else if (k.family == "mixed") {
    family = mixed_family(c.dim);
  } else {
    throw std::invalid_argument("--family must be widths or mixed");
  }
  if (f.seed && k.random_members > 0) {
    const auto extra = random_family(c.dim, *f.seed, k.random_members);
    family.insert(family.end(), extra.begin(), extra.end());
  }

  json report{{"instantiation", label}, {"params", to_json(c)}, {"verdict", to_json(verdict)}, {"family_size", family.size()}};
  if (f.seed) report["seed"] = *f.seed;
  int code = kExitOk;
  if (verdict.admissible) {
    const QuadratureOptions base;
    const RatioSweepReport coarse = ratio_sweep(family, c, base);
    const RatioSweepReport fine = ratio_sweep(family, c, base.refined());
    const double drift = std::abs(fine.max_ratio - coarse.max_ratio) / fine.max_ratio;
    report["sweep"] = to_json(coarse);
    report["refined_max_ratio"] = fine.max_ratio;
    report["refinement_drift"] = drift;
    std::cout << "admissible; max ratio " << std::setprecision(10) << coarse.max_ratio << " (refined "
              << fine.max_ratio << ", drift " << drift << ")\n";
    if (!std::isfinite(coarse.max_ratio) || drift > 1e-6) code = kExitFailure;
  } else {
    std::cout << "not admissible: " << verdict.reason << '\n';
    code = kExitFailure;
  }
  if (!f.out.empty()) emit(report, f.out, "ckn_report.json");
  else std::cout << report.dump(2) << '\n';
  return code;
}

int cmd_sweep(const CommonFlags& f, const std::vector<std::string>& grid) {
  const ConfigFile base = ConfigFile::load(f.config);
  parse_experiment(base);
  std::vector<SweepAxis> axes;
  for (const auto& g : grid) axes.push_back(parse_sweep_axis(g));
  if (axes.empty()) throw std::invalid_argument("sweep needs at least one --grid key=v1,v2");
  const auto& known = known_config_keys();
  for (const auto& a : axes) {
    if (std::find(known.begin(), known.end(), a.key) == known.end()) {
      throw ConfigError(a.key, 0, "unknown sweep key '" + a.key + "'");
    }
  }

  const fs::path out = f.out.empty() ? fs::path("runs") / (base.hash() + "_sweep") : fs::path(f.out);
  fs::create_directories(out);
  const auto rows = run_sweep(base, axes, out);
  std::ofstream os(out / "sweep.csv");
  if (!os) throw std::runtime_error("cannot write " + (out / "sweep.csv").string());
  write_sweep_csv(os, rows);
  write_sweep_csv(std::cout, rows);
  for (const auto& r : rows) {
    if (!r.error.empty()) std::cerr << "point failed: " << r.error << '\n';
  }
  return kExitOk;
}

int cmd_exponents(const CommonFlags& f, int dim, double p, double lambda) {
  ProblemParams params;
  if (!f.config.empty()) params = parse_experiment(ConfigFile::load(f.config)).solver.params;
  if (dim > 0) params.dim = dim;
  if (p > 0.0) params.p = p;
  if (lambda > 0.0) {
    params.lambda = lambda;
  } else if (f.config.empty()) {
    params.lambda = admissible_range(params.dim).contains(params.p) ? suggested_lambda(params.dim, params.p)
                                                                    : std::max(1.0, params.dim / 2.0);
  }
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("problem", 0, e.what());
  }
  std::cout << exponent_report(params).dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Damped-wave numerical laboratory"};
  app.set_version_flag("--version", std::string(kLibraryVersion));
  app.require_subcommand(1);

  CommonFlags flags;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", flags.config, "Config file (key = value)");
    if (needs_config) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "Output directory");
    sub->add_option("--seed", flags.seed, "Seed for randomized audits");
  };

  auto* simulate = app.add_subcommand("simulate", "Run the semilinear solver with audits");
  add_common(simulate, true);
  simulate->add_flag("--expect-global", flags.expect_global, "Exit 1 unless the run completes");
  simulate->add_option("--snapshots", flags.snapshots, "Write a snapshot file every EVERY steps")->check(CLI::NonNegativeNumber);

  auto* linear = app.add_subcommand("linear-decay", "Fit decay rates of the linear flow");
  add_common(linear, true);

  auto* audit = app.add_subcommand("energy-audit", "Weighted energy inequality at two snapshot spacings");
  add_common(audit, true);

  CknFlags ckn;
  auto* ckn_cmd = app.add_subcommand("ckn-check", "Weighted interpolation inequality over test-function families");
  add_common(ckn_cmd, false);
  ckn_cmd->add_option("--dim", ckn.dim, "Space dimension");
  ckn_cmd->add_option("--p", ckn.p, "Source power");
  ckn_cmd->add_option("--lambda", ckn.lambda, "Weight order");
  ckn_cmd->add_option("--params", ckn.explicit_params, "Explicit p,q,r,alpha,beta,sigma,a")->delimiter(',');
  ckn_cmd->add_option("--family", ckn.family, "widths or mixed");
  ckn_cmd->add_option("--random", ckn.random_members, "Add this many random test functions (needs --seed)");

  std::vector<std::string> grid;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over a config template");
  add_common(sweep, true);
  sweep->add_option("--grid", grid, "Axis key=v1,v2,... (repeatable)")->required();

  int e_dim = 0;
  double e_p = 0.0, e_lambda = 0.0;
  auto* exps = app.add_subcommand("exponents", "Print the exponent set and lambda threshold");
  add_common(exps, false);
  exps->add_option("--dim", e_dim, "Space dimension");
  exps->add_option("--p", e_p, "Source power");
  exps->add_option("--lambda", e_lambda, "Weight order (default: suggested)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(flags);
    if (*linear) return cmd_linear_decay(flags);
    if (*audit) return cmd_energy_audit(flags);
    if (*ckn_cmd) return cmd_ckn_check(flags, ckn);
    if (*sweep) return cmd_sweep(flags, grid);
    if (*exps) return cmd_exponents(flags, e_dim, e_p, e_lambda);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
