#pragma once

#include <optional>
#include <vector>

#include "dampwave/propagator.hpp"
#include "dampwave/source.hpp"
#include "dampwave/timeseries.hpp"

namespace dampwave {

/// psi(t, x) = A + |x|^2 / (1 + t), Psi = psi^lambda.
struct WeightParams {
  double A = 1.0;
  double lambda = 1.0;

  /// Enforces lambda > 0 and A >= lambda / 2.
  static WeightParams make(double A, double lambda);
  /// Psi == 1 (A = 1, lambda = 0); gives the unweighted energy.
  static WeightParams unit() { return WeightParams{1.0, 0.0}; }
};

double weight_psi(double t, double r_sq, const WeightParams& w);
double weight_Psi(double t, double r_sq, const WeightParams& w);
/// d/dt Psi = -lambda |x|^2 / (1+t)^2 psi^{lambda-1}, never positive.
double weight_Psi_t(double t, double r_sq, const WeightParams& w);
/// |grad_x Psi|^2 = lambda^2 psi^{2 lambda - 2} 4 |x|^2 / (1+t)^2.
double weight_grad_Psi_sq(double t, double r_sq, const WeightParams& w);

/// 2 Psi - lambda psi^{lambda-1}, evaluated as psi^{lambda-1} (2 psi - lambda).
/// Nonnegative whenever A >= lambda / 2.
double weight_inequality_residual(double t, double r_sq, const WeightParams& w);

/// Psi sampled on the grid at time t.
std::vector<double> weight_on_grid(const GridSpec& grid, double t, const WeightParams& w);

/// Per-state quantities used by the records and the audits.
struct StateMeasures {
  double l2_u = 0.0;
  double l2_grad_u = 0.0;
  double l2_ut = 0.0;
  double linf_u = 0.0;
  double mean_u = 0.0;
  double e_psi = 0.0;
  double l2_u_weighted = 0.0;
};

StateMeasures measure_state(const LinearState& state, const WeightParams& w, const FourierTransform& fft);

/// int (|u_t|^2 + |grad u|^2) Psi dx, midpoint rule on the grid with spectral gradient.
double energy_e_psi(const LinearState& state, const WeightParams& w, const FourierTransform& fft);
double energy_e_psi(const LinearState& state, const WeightParams& w);

/// TimeRecord with the four X-norm components.
TimeRecord make_record(const LinearState& state, const WeightParams& w, const FourierTransform& fft);

/// Stored states of one run, in time order.
struct Trajectory {
  std::vector<LinearState> snapshots;
};

inline constexpr std::size_t kMinAuditSnapshots = 50;
inline constexpr double kEnergyAuditTolerance = 1e-4;

/// Weighted energy inequality checked at each snapshot:
///   E(t) <= E(0) - 2 int G(u0) Psi(0) + 2 int G(u(t)) Psi(t) - 2 int_0^t int G(u) Psi_t,
/// where G' = f (G = |u|^p u / (p+1) for the |u|^p source). The time integral
/// uses the trapezoid rule over the snapshots.
struct EnergyAuditReport {
  std::vector<double> times;
  std::vector<double> lhs;
  std::vector<double> rhs;
  /// Magnitude of the compared quantities; violations are relative to it.
  double scale = 0.0;
  /// max(0, max_t (lhs - rhs)) / scale
  double max_violation = 0.0;
  /// max_t (lhs - rhs) / scale, negative when the inequality holds with slack.
  double max_signed_gap = 0.0;
  /// |trapezoid(h) - trapezoid(2h)| / scale for the space-time integral.
  double quadrature_error_estimate = 0.0;
  double tolerance = kEnergyAuditTolerance;
  bool passed = false;
};

/// Throws std::invalid_argument with fewer than kMinAuditSnapshots snapshots.
EnergyAuditReport energy_audit(const Trajectory& trajectory, const WeightParams& w, double p,
                               SourceKind source = SourceKind::abs_power,
                               double tolerance = kEnergyAuditTolerance);

/// max over the run of
///   [int |u|^{p+1} Psi dx + int_0^t int |u|^{p+1} |Psi_t|] / ||u||_{X(t)}^{p+1}.
struct NonlinearBoundReport {
  bool applicable = false;
  double max_ratio = 0.0;
  double argmax_t = 0.0;
  double x_norm = 0.0;
};

/// Throws std::invalid_argument on an empty trajectory.
NonlinearBoundReport nl_bound_audit(const Trajectory& trajectory, const WeightParams& w, double p);

}  // namespace dampwave
