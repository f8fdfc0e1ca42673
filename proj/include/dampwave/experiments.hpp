#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dampwave/config.hpp"
#include "dampwave/exponents.hpp"
#include "dampwave/inequality_lab.hpp"
#include "dampwave/solver.hpp"

namespace dampwave {

inline constexpr const char* kLibraryVersion = "0.1.0";

struct RunOptions {
  /// Write a snapshot file every this many steps (0: none).
  int snapshot_files_every = 0;
  /// Energy and nonlinear-bound audits from in-memory snapshots.
  bool audits = true;
};

struct ExperimentResult {
  RunOutcome outcome;
  std::optional<EnergyAuditReport> energy;
  std::optional<NonlinearBoundReport> nonlinear;
  std::string audit_note;
  double x_norm = 0.0;
  double wall_seconds = 0.0;
};

/// Steps between audit snapshots for the configured interval.
int snapshot_stride(const ExperimentConfig& cfg, double interval);

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

struct LinearDecayResult {
  LinearProfile profile;
  std::map<std::string, DecayFit> fits;
  std::map<std::string, double> expected_slopes;
};

/// Linear flow sampled at log-spaced times in [t_min, t_max], with slopes
/// fitted for l2_u, l2_grad_u and l2_ut.
LinearDecayResult linear_decay_experiment(const ExperimentConfig& cfg);

/// Runs the configured problem with audit snapshots every `interval` time
/// units and at half that spacing, and audits both.
struct EnergyAuditExperiment {
  ExperimentResult coarse;
  ExperimentResult fine;
  double coarse_interval = 0.0;
  double fine_interval = 0.0;
};

EnergyAuditExperiment energy_audit_experiment(const ExperimentConfig& cfg);

nlohmann::json to_json(const ExponentSet& e);
nlohmann::json to_json(const CknParams& c);
nlohmann::json to_json(const CknVerdict& v);
nlohmann::json to_json(const EnergyAuditReport& r, bool include_series = false);
nlohmann::json to_json(const NonlinearBoundReport& r);
nlohmann::json to_json(const DecayFit& f);
nlohmann::json to_json(const RatioSweepReport& r);

/// Exponent report for (dim, p, lambda); parameters outside the global-existence
/// hypotheses are reported with "checked": false instead of throwing.
nlohmann::json exponent_report(const ProblemParams& params);

/// Report with keys config, exponents, audits, outcome, timings. Only the
/// timings object depends on the wall clock.
nlohmann::json make_report(const ConfigFile& file, const ExperimentConfig& cfg, const ExperimentResult& result);

/// series.csv and report.json under `dir` (created if missing).
void write_run_artifacts(const std::filesystem::path& dir, const nlohmann::json& report, const TimeSeries& series);

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

/// Parses "key=v1,v2,...".
SweepAxis parse_sweep_axis(const std::string& text);

struct SweepRow {
  std::map<std::string, std::string> point;
  double p = 0.0;
  double amplitude = 0.0;
  std::string status;
  std::optional<double> blowup_time;
  std::optional<double> x_norm;
  std::string error;
};

/// One run per point of the Cartesian product of `axes`, in parallel. Failed
/// points are recorded with status "error" and the sweep continues. When
/// `out_dir` is set each point writes artifacts to out_dir/point_NNN.
std::vector<SweepRow> run_sweep(const ConfigFile& base, const std::vector<SweepAxis>& axes,
                                const std::optional<std::filesystem::path>& out_dir);

/// Header p,amplitude,status,blowup_time,x_norm; empty cells for absent values.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace dampwave
