#include "dampwave/experiments.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <future>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <thread>

#include "dampwave/snapshot.hpp"

namespace dampwave {

using nlohmann::json;

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

int snapshot_stride(const ExperimentConfig& cfg, double interval) {
  return std::max(1, static_cast<int>(std::lround(interval / cfg.solver.dt)));
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  SolverConfig solver_cfg = cfg.solver;
  if (opts.audits) solver_cfg.snapshot_every = snapshot_stride(cfg, cfg.snapshot_interval);
  if (opts.snapshot_files_every > 0) {
    solver_cfg.snapshot_every = solver_cfg.snapshot_every > 0 ? std::gcd(solver_cfg.snapshot_every, opts.snapshot_files_every)
                                                              : opts.snapshot_files_every;
  }

  const auto [u0, u1] = make_initial_data(cfg.data, cfg.solver.grid);
  const SemilinearSolver solver(solver_cfg);

  ExperimentResult res;
  res.outcome = solver.run(u0, u1);
  res.x_norm = res.outcome.series.empty() ? 0.0 : x_norm(res.outcome.series);

  if (opts.audits) {
    // Audit only the states on the audit cadence.
    Trajectory audit;
    const int stride = snapshot_stride(cfg, cfg.snapshot_interval);
    for (const auto& s : res.outcome.trajectory.snapshots) {
      const auto step = static_cast<long long>(std::llround(s.t / cfg.solver.dt));
      if (step % stride == 0) audit.snapshots.push_back(s);
    }
    if (audit.snapshots.size() >= kMinAuditSnapshots) {
      res.energy = energy_audit(audit, cfg.solver.weight, cfg.solver.params.p, cfg.solver.source);
    } else {
      res.audit_note = "energy audit skipped: " + std::to_string(audit.snapshots.size()) + " snapshots (need " +
                       std::to_string(kMinAuditSnapshots) + ")";
    }
    if (!audit.snapshots.empty()) res.nonlinear = nl_bound_audit(audit, cfg.solver.weight, cfg.solver.params.p);
  }
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

LinearDecayResult linear_decay_experiment(const ExperimentConfig& cfg) {
  const auto [u0, u1] = make_initial_data(cfg.data, cfg.solver.grid);
  std::vector<double> times;
  const int n = cfg.linear.samples;
  const double a = std::log1p(cfg.linear.t_min), b = std::log1p(cfg.linear.t_max);
  for (int i = 0; i < n; ++i) times.push_back(std::expm1(a + (b - a) * i / (n - 1)));

  LinearDecayResult res;
  res.profile = decay_profile(u0, u1, times, cfg.solver.weight);
  const double n4 = cfg.solver.params.dim / 4.0;
  res.expected_slopes = {{"l2_u", -n4}, {"l2_grad_u", -n4 - 0.5}, {"l2_ut", -n4 - 1.0}};
  for (const auto& [col, slope] : res.expected_slopes) {
    res.fits[col] = decay_fit(res.profile.series, col, cfg.linear.t_min);
  }
  return res;
}

EnergyAuditExperiment energy_audit_experiment(const ExperimentConfig& cfg) {
  EnergyAuditExperiment out;
  out.coarse_interval = cfg.snapshot_interval;
  out.fine_interval = cfg.snapshot_interval / 2.0;
  out.coarse = run_experiment(cfg);
  ExperimentConfig fine = cfg;
  fine.snapshot_interval = out.fine_interval;
  out.fine = run_experiment(fine);
  return out;
}

json to_json(const ExponentSet& e) {
  return json{{"p_fujita", e.p_fujita},
              {"p_max", finite_or_null(e.p_max)},
              {"p_max_infinite", std::isinf(e.p_max)},
              {"q", e.q},
              {"lambda_min", finite_or_null(e.lambda_min)},
              {"theta_gn", finite_or_null(e.theta_gn)},
              {"Theta_weighted", finite_or_null(e.Theta_weighted)},
              {"mu", finite_or_null(e.mu)},
              {"theta_lp", finite_or_null(e.theta_lp)},
              {"theta_l2p", finite_or_null(e.theta_l2p)},
              {"budget_weighted", finite_or_null(e.budget_weighted)},
              {"budget_lp", finite_or_null(e.budget_lp)},
              {"budget_l2p", finite_or_null(e.budget_l2p)}};
}

json to_json(const CknParams& c) {
  return json{{"dim", c.dim},   {"p", c.p},         {"q", c.q},         {"r", c.r},     {"alpha", c.alpha},
              {"beta", c.beta}, {"sigma", c.sigma}, {"gamma", c.gamma()}, {"a", c.a}};
}

json to_json(const CknVerdict& v) {
  return json{{"admissible", v.admissible},
              {"failed", to_string(v.failed)},
              {"reason", v.reason},
              {"balance_residual", v.balance_residual}};
}

json to_json(const EnergyAuditReport& r, bool include_series) {
  json j{{"passed", r.passed},
         {"tolerance", r.tolerance},
         {"scale", r.scale},
         {"max_violation", r.max_violation},
         {"max_signed_gap", r.max_signed_gap},
         {"quadrature_error_estimate", r.quadrature_error_estimate},
         {"snapshots", r.times.size()}};
  if (include_series) {
    j["times"] = r.times;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
  }
  return j;
}

json to_json(const NonlinearBoundReport& r) {
  json j{{"applicable", r.applicable}, {"x_norm", r.x_norm}};
  if (r.applicable) {
    j["max_ratio"] = r.max_ratio;
    j["argmax_t"] = r.argmax_t;
  }
  return j;
}

json to_json(const DecayFit& f) {
  return json{{"slope", f.slope}, {"stderr", f.stderr_slope}, {"intercept", f.intercept}, {"samples", f.samples}};
}

json to_json(const RatioSweepReport& r) {
  return json{{"ratios", r.ratios},   {"max_ratio", r.max_ratio}, {"min_ratio", r.min_ratio},
              {"argmax", r.argmax},   {"argmin", r.argmin}};
}

json exponent_report(const ProblemParams& params) {
  params.validate();
  json j;
  const AdmissibleRange range = admissible_range(params.dim);
  j["dim"] = params.dim;
  j["p"] = params.p;
  j["lambda"] = params.lambda;
  j["in_admissible_range"] = range.contains(params.p);
  if (range.contains(params.p)) {
    const double threshold = lambda_threshold(params.dim, params.p);
    j["lambda_threshold"] = threshold;
    j["lambda_suggested"] = suggested_lambda(params.dim, params.p);
    j["lambda_valid"] = params.lambda > threshold;
  }
  try {
    j["exponents"] = to_json(interpolation_exponents(params));
    j["checked"] = true;
  } catch (const std::exception& e) {
    j["exponents"] = to_json(interpolation_exponents_unchecked(params));
    j["checked"] = false;
    j["check_failure"] = e.what();
  }
  return j;
}

json make_report(const ConfigFile& file, const ExperimentConfig& cfg, const ExperimentResult& result) {
  json config;
  config["hash"] = file.hash();
  config["library_version"] = kLibraryVersion;
  config["source"] = file.source();
  json values = json::object();
  for (const auto& [k, v] : file.entries()) values[k] = v.first;
  config["values"] = values;
  config["resolved"] = {{"dim", cfg.solver.params.dim},
                        {"p", cfg.solver.params.p},
                        {"lambda", cfg.solver.params.lambda},
                        {"A", cfg.solver.weight.A},
                        {"L", cfg.solver.grid.half_width},
                        {"M", cfg.solver.grid.points},
                        {"dt", cfg.solver.dt},
                        {"t_end", cfg.solver.t_end},
                        {"dealias", cfg.solver.dealias_enabled()},
                        {"source", to_string(cfg.solver.source)}};
  config["warnings"] = cfg.warnings;

  json audits = json::object();
  if (result.energy) audits["energy"] = to_json(*result.energy);
  if (result.nonlinear) audits["nonlinear_bound"] = to_json(*result.nonlinear);
  if (!result.audit_note.empty()) audits["note"] = result.audit_note;

  const RunOutcome& o = result.outcome;
  json outcome{{"status", to_string(o.status)},
               {"steps", o.steps},
               {"final_t", o.final_state.t},
               {"x_norm", result.x_norm},
               {"boundary_ratio", o.boundary_ratio},
               {"records", o.series.size()}};
  outcome["blowup_time"] = o.blowup_time ? json(*o.blowup_time) : json(nullptr);

  return json{{"config", config},
              {"exponents", exponent_report(cfg.solver.params)},
              {"audits", audits},
              {"outcome", outcome},
              {"timings", {{"wall_seconds", result.wall_seconds}, {"timestamp", timestamp_utc()}}}};
}

void write_run_artifacts(const std::filesystem::path& dir, const json& report, const TimeSeries& series) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream os(dir / "series.csv");
    if (!os) throw std::runtime_error("cannot write " + (dir / "series.csv").string());
    write_csv(os, series);
  }
  std::ofstream os(dir / "report.json");
  if (!os) throw std::runtime_error("cannot write " + (dir / "report.json").string());
  os << report.dump(2) << '\n';
}

SweepAxis parse_sweep_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("sweep axis must look like key=v1,v2");
  SweepAxis axis;
  axis.key = text.substr(0, eq);
  std::istringstream values(text.substr(eq + 1));
  std::string v;
  while (std::getline(values, v, ',')) {
    if (!v.empty()) axis.values.push_back(v);
  }
  if (axis.values.empty()) throw std::invalid_argument("sweep axis '" + axis.key + "' has no values");
  return axis;
}

std::vector<SweepRow> run_sweep(const ConfigFile& base, const std::vector<SweepAxis>& axes,
                                const std::optional<std::filesystem::path>& out_dir) {
  std::vector<std::map<std::string, std::string>> points{{}};
  for (const auto& axis : axes) {
    std::vector<std::map<std::string, std::string>> next;
    for (const auto& p : points) {
      for (const auto& v : axis.values) {
        auto q = p;
        q[axis.key] = v;
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  if (points.empty()) throw std::invalid_argument("sweep grid is empty");

  auto run_point = [&](std::size_t index) {
    SweepRow row;
    row.point = points[index];
    try {
      ConfigFile file = base;
      for (const auto& [k, v] : row.point) file.set(k, v);
      const ExperimentConfig cfg = parse_experiment(file);
      row.p = cfg.solver.params.p;
      row.amplitude = cfg.data.amplitude;
      RunOptions opts;
      opts.audits = false;
      const ExperimentResult res = run_experiment(cfg, opts);
      row.status = to_string(res.outcome.status);
      row.blowup_time = res.outcome.blowup_time;
      row.x_norm = res.x_norm;
      if (out_dir) {
        std::ostringstream name;
        name << "point_" << std::setw(3) << std::setfill('0') << index;
        write_run_artifacts(*out_dir / name.str(), make_report(file, cfg, res), res.outcome.series);
      }
    } catch (const std::exception& e) {
      row.status = "error";
      row.error = e.what();
    }
    return row;
  };

  std::vector<SweepRow> rows(points.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < points.size(); start += workers) {
    const std::size_t stop = std::min(points.size(), start + workers);
    std::vector<std::future<SweepRow>> batch;
    for (std::size_t i = start; i < stop; ++i) batch.push_back(std::async(std::launch::async, run_point, i));
    for (std::size_t i = start; i < stop; ++i) rows[i] = batch[i - start].get();
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "p,amplitude,status,blowup_time,x_norm\n";
  const auto old = os.precision(17);
  for (const auto& r : rows) {
    os << r.p << ',' << r.amplitude << ',' << r.status << ',';
    if (r.blowup_time) os << *r.blowup_time;
    os << ',';
    if (r.x_norm) os << *r.x_norm;
    os << '\n';
  }
  os.precision(old);
}

}  // namespace dampwave
