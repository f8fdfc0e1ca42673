#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dampwave/exponents.hpp"
#include "dampwave/propagator.hpp"
#include "dampwave/source.hpp"
#include "dampwave/weights.hpp"

namespace dampwave {

struct SolverConfig {
  ProblemParams params;
  GridSpec grid;
  WeightParams weight;
  double dt = 0.05;
  double t_end = 1.0;
  double blowup_threshold = 1e6;
  /// 2/3-rule filtering of the source; unset means on for p >= 3.
  std::optional<bool> dealias;
  int record_every = 1;
  /// Keep a full state every this many steps (0 keeps none).
  int snapshot_every = 0;
  SourceKind source = SourceKind::abs_power;

  bool dealias_enabled() const { return dealias.value_or(params.p >= 3.0); }
  /// Throws std::invalid_argument: dt in (0, 0.5], t_end >= dt, threshold > 1,
  /// record_every >= 1, snapshot_every >= 0, plus grid and parameter checks.
  void validate() const;
};

enum class RunStatus { completed, blew_up, boundary_contaminated };

std::string to_string(RunStatus s);

struct RunOutcome {
  RunStatus status = RunStatus::completed;
  LinearState final_state;
  TimeSeries series;
  /// Present iff status == blew_up: midpoint of the step that crossed the threshold.
  std::optional<double> blowup_time;
  Trajectory trajectory;
  double boundary_ratio = 0.0;
  std::size_t steps = 0;
};

/// Raised by SemilinearSolver::step when the new state is non-finite or
/// exceeds the blow-up threshold.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double t, const std::string& what) : std::runtime_error(what), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Pointwise source f(u). Throws std::overflow_error on non-finite output.
RealField nonlinearity(const RealField& u, double p, SourceKind kind = SourceKind::abs_power);

/// Exponential integrator for u_tt - Delta u + u_t = f(u): the linear part is
/// propagated exactly and the Duhamel integral over each step is replaced by
/// the trapezoid rule,
///
///   w*      = S(dt) (w_n + dt F(w_n))
///   w_{n+1} = S(dt) (w_n + dt/2 F(w_n)) + dt/2 F(w*),     F(u, u_t) = (0, f(u)).
///
/// This is Heun's method in the interaction picture and is second order.
class SemilinearSolver {
 public:
  explicit SemilinearSolver(SolverConfig cfg);

  const SolverConfig& config() const { return cfg_; }
  const LinearPropagator& propagator() const { return prop_; }

  /// One step of size cfg.dt. Throws BlowUpError on non-finite values or
  /// ||u||_inf above the threshold.
  LinearState step(const LinearState& state) const;

  RunOutcome run(const RealField& u0, const RealField& u1) const;

 private:
  LinearState advance(const LinearState& state) const;
  SpectralField source_spectrum(const RealField& u) const;

  SolverConfig cfg_;
  LinearPropagator prop_;
  StepMatrices matrices_;
};

}  // namespace dampwave
