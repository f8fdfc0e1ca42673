#pragma once

#include <memory>
#include <span>
#include <vector>

#include "dampwave/multipliers.hpp"
#include "dampwave/spectral.hpp"
#include "dampwave/timeseries.hpp"

namespace dampwave {

struct WeightParams;

/// (u, u_t) at time t on a common grid.
struct LinearState {
  double t = 0.0;
  RealField u;
  RealField ut;

  LinearState() = default;
  LinearState(double time, RealField u_, RealField ut_);

  const GridSpec& grid() const { return u.grid; }
  bool all_finite() const { return u.all_finite() && ut.all_finite(); }
};

struct SpectralState {
  double t = 0.0;
  SpectralField u;
  SpectralField ut;
};

/// Per-mode propagator matrices for a fixed time increment.
class StepMatrices {
 public:
  StepMatrices(std::span<const double> xi_sq, double dt);

  double dt() const { return dt_; }
  /// Applies the matrices in place: (u, ut) <- S(dt) (u, ut).
  void apply(SpectralField& u, SpectralField& ut) const;
  /// u-component of S(dt) (0, f): multiplies f by d(dt).
  void apply_d(SpectralField& f) const;

 private:
  double dt_;
  std::vector<PropagatorMatrix> m_;
};

/// Exact solution operator of u_tt - Delta u + u_t = 0 on a periodic grid.
class LinearPropagator {
 public:
  explicit LinearPropagator(const GridSpec& grid);
  explicit LinearPropagator(std::shared_ptr<const FourierTransform> transform);

  const FourierTransform& transform() const { return *fft_; }
  std::shared_ptr<const FourierTransform> shared_transform() const { return fft_; }
  const GridSpec& grid() const { return fft_->grid(); }

  SpectralState to_spectral(const LinearState& s) const;
  LinearState to_physical(const SpectralState& s) const;

  /// u(dt) = D(dt)(u + u_t) + D'(dt) u, u_t(dt) = Delta D(dt) u + D'(dt) u_t.
  /// Throws std::domain_error on non-finite output.
  LinearState evolve(const LinearState& state, double dt) const;
  SpectralState evolve(const SpectralState& state, double dt) const;

 private:
  std::shared_ptr<const FourierTransform> fft_;
};

/// Convenience wrapper that plans a transform for the state's grid.
LinearState linear_evolve(const LinearState& state, double dt);

struct LinearProfile {
  TimeSeries series;
  /// max over times of boundary_shell_max(u) / ||u||_inf
  double boundary_ratio = 0.0;
  bool boundary_contaminated = false;
};

/// Boundary-shell amplitude above this fraction of ||u||_inf flags contamination.
inline constexpr double kBoundaryTolerance = 1e-8;

/// Linear solution from (u0, u1) evaluated directly at each requested time
/// (no time stepping). Times must be nonnegative and strictly increasing.
LinearProfile decay_profile(const RealField& u0, const RealField& u1, std::span<const double> times,
                            const WeightParams& weight);

}  // namespace dampwave
