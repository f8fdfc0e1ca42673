#include "dampwave/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dampwave {

WeightParams WeightParams::make(double A, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("weight order lambda must be > 0");
  if (!(A >= lambda / 2.0) || !std::isfinite(A)) {
    throw std::invalid_argument("weight offset A must satisfy A >= lambda / 2");
  }
  return WeightParams{A, lambda};
}

double weight_psi(double t, double r_sq, const WeightParams& w) { return w.A + r_sq / (1.0 + t); }

double weight_Psi(double t, double r_sq, const WeightParams& w) { return std::pow(weight_psi(t, r_sq, w), w.lambda); }

double weight_Psi_t(double t, double r_sq, const WeightParams& w) {
  const double tt = 1.0 + t;
  return -w.lambda * r_sq / (tt * tt) * std::pow(weight_psi(t, r_sq, w), w.lambda - 1.0);
}

double weight_grad_Psi_sq(double t, double r_sq, const WeightParams& w) {
  const double tt = 1.0 + t;
  const double g = w.lambda * std::pow(weight_psi(t, r_sq, w), w.lambda - 1.0);
  return g * g * 4.0 * r_sq / (tt * tt);
}

double weight_inequality_residual(double t, double r_sq, const WeightParams& w) {
  const double psi = weight_psi(t, r_sq, w);
  return std::pow(psi, w.lambda - 1.0) * (2.0 * psi - w.lambda);
}

std::vector<double> weight_on_grid(const GridSpec& grid, double t, const WeightParams& w) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = weight_Psi(t, grid.radius_sq(i), w);
  return out;
}

namespace {

std::vector<double> gradient_sq(const RealField& u, const FourierTransform& fft) {
  const SpectralField uh = fft.forward(u);
  std::vector<double> g(u.size(), 0.0);
  for (int axis = 0; axis < u.grid.dim; ++axis) {
    const RealField d = fft.derivative(uh, axis);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += d.values[i] * d.values[i];
  }
  return g;
}

// Cumulative trapezoid of samples y at times t.
std::vector<double> cumulative_trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  std::vector<double> c(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) c[i] = c[i - 1] + 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return c;
}

}  // namespace

StateMeasures measure_state(const LinearState& state, const WeightParams& w, const FourierTransform& fft) {
  const GridSpec& grid = state.grid();
  const double dv = grid.cell_volume();
  const std::vector<double> grad2 = gradient_sq(state.u, fft);

  StateMeasures m;
  double su = 0.0, sg = 0.0, sut = 0.0, se = 0.0, sw = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double u = state.u.values[i];
    const double ut = state.ut.values[i];
    const double psi = weight_Psi(state.t, grid.radius_sq(i), w);
    su += u * u;
    sg += grad2[i];
    sut += ut * ut;
    se += (ut * ut + grad2[i]) * psi;
    sw += psi * u * u;
  }
  m.l2_u = std::sqrt(su * dv);
  m.l2_grad_u = std::sqrt(sg * dv);
  m.l2_ut = std::sqrt(sut * dv);
  m.e_psi = se * dv;
  m.l2_u_weighted = std::sqrt(sw * dv);
  m.linf_u = linf_norm(state.u);
  m.mean_u = mean_value(state.u);
  return m;
}

double energy_e_psi(const LinearState& state, const WeightParams& w, const FourierTransform& fft) {
  return measure_state(state, w, fft).e_psi;
}

double energy_e_psi(const LinearState& state, const WeightParams& w) {
  const FourierTransform fft(state.grid());
  return energy_e_psi(state, w, fft);
}

TimeRecord make_record(const LinearState& state, const WeightParams& w, const FourierTransform& fft) {
  const StateMeasures m = measure_state(state, w, fft);
  const double n4 = state.grid().dim / 4.0;
  const double tt = 1.0 + state.t;
  TimeRecord r;
  r.t = state.t;
  r.l2_u = m.l2_u;
  r.l2_grad_u = m.l2_grad_u;
  r.l2_ut = m.l2_ut;
  r.linf_u = m.linf_u;
  r.e_psi = m.e_psi;
  r.mean_u = m.mean_u;
  r.x_components = {std::sqrt(m.e_psi), std::pow(tt, n4 + 1.0) * m.l2_ut, std::pow(tt, n4 + 0.5) * m.l2_grad_u,
                    std::pow(tt, n4) * m.l2_u};
  return r;
}

EnergyAuditReport energy_audit(const Trajectory& trajectory, const WeightParams& w, double p, SourceKind source,
                               double tolerance) {
  const auto& snaps = trajectory.snapshots;
  if (snaps.size() < kMinAuditSnapshots) {
    throw std::invalid_argument("energy audit needs at least " + std::to_string(kMinAuditSnapshots) +
                                " snapshots, got " + std::to_string(snaps.size()));
  }
  const GridSpec grid = snaps.front().grid();
  const FourierTransform fft(grid);
  const double dv = grid.cell_volume();

  const std::size_t n = snaps.size();
  std::vector<double> times(n), energy(n), g_psi(n), g_psi_t(n);
  for (std::size_t k = 0; k < n; ++k) {
    const LinearState& s = snaps[k];
    if (!(s.grid() == grid)) throw std::invalid_argument("snapshots must share a grid");
    if (k > 0 && !(s.t > snaps[k - 1].t)) throw std::invalid_argument("snapshots must be in increasing time order");
    times[k] = s.t;
    energy[k] = energy_e_psi(s, w, fft);
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double r2 = grid.radius_sq(i);
      const double g = source_potential(s.u.values[i], p, source);
      if (g == 0.0) continue;
      a += g * weight_Psi(s.t, r2, w);
      b += g * weight_Psi_t(s.t, r2, w);
    }
    g_psi[k] = a * dv;
    g_psi_t[k] = b * dv;
  }

  const std::vector<double> cum = cumulative_trapezoid(times, g_psi_t);

  EnergyAuditReport rep;
  rep.tolerance = tolerance;
  rep.times = times;
  rep.lhs = energy;
  rep.rhs.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    rep.rhs[k] = energy[0] - 2.0 * g_psi[0] + 2.0 * g_psi[k] - 2.0 * cum[k];
    const double magnitude = energy[0] + 2.0 * std::abs(g_psi[0]) + 2.0 * std::abs(g_psi[k]) + 2.0 * std::abs(cum[k]);
    rep.scale = std::max({rep.scale, magnitude, std::abs(energy[k])});
  }

  // Coarse trapezoid over every other snapshot, compared at the last even index.
  const std::size_t last_even = (n - 1) - ((n - 1) % 2);
  double coarse = 0.0;
  for (std::size_t k = 2; k <= last_even; k += 2) {
    coarse += 0.5 * (times[k] - times[k - 2]) * (g_psi_t[k] + g_psi_t[k - 2]);
  }

  if (rep.scale > 0.0) {
    double gap = -std::numeric_limits<double>::infinity();
    // t = 0 holds with equality by construction.
    for (std::size_t k = 1; k < n; ++k) gap = std::max(gap, (rep.lhs[k] - rep.rhs[k]) / rep.scale);
    rep.max_signed_gap = gap;
    rep.max_violation = std::max(0.0, gap);
    rep.quadrature_error_estimate = 2.0 * std::abs(cum[last_even] - coarse) / rep.scale;
  }
  rep.passed = rep.max_violation <= tolerance;
  return rep;
}

NonlinearBoundReport nl_bound_audit(const Trajectory& trajectory, const WeightParams& w, double p) {
  const auto& snaps = trajectory.snapshots;
  if (snaps.empty()) throw std::invalid_argument("nl_bound_audit of an empty trajectory");
  const GridSpec grid = snaps.front().grid();
  const FourierTransform fft(grid);
  const double dv = grid.cell_volume();

  const std::size_t n = snaps.size();
  std::vector<double> times(n), weighted(n), weighted_t(n), xs(n);
  double running = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const LinearState& s = snaps[k];
    times[k] = s.t;
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double r2 = grid.radius_sq(i);
      const double v = std::pow(std::abs(s.u.values[i]), p + 1.0);
      if (v == 0.0) continue;
      a += v * weight_Psi(s.t, r2, w);
      b += v * std::abs(weight_Psi_t(s.t, r2, w));
    }
    weighted[k] = a * dv;
    weighted_t[k] = b * dv;
    running = std::max(running, make_record(s, w, fft).x_sum());
    xs[k] = running;
  }
  const std::vector<double> cum = cumulative_trapezoid(times, weighted_t);

  NonlinearBoundReport rep;
  rep.x_norm = running;
  for (std::size_t k = 0; k < n; ++k) {
    if (!(xs[k] > 0.0)) continue;
    const double ratio = (weighted[k] + cum[k]) / std::pow(xs[k], p + 1.0);
    if (!rep.applicable || ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.argmax_t = times[k];
    }
    rep.applicable = true;
  }
  return rep;
}

}  // namespace dampwave
