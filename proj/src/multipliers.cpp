#include "dampwave/multipliers.hpp"

#include <cmath>

namespace dampwave {

namespace {

struct Symbols {
  double d;
  double dt;
};

// Four-term series of sinh(t w)/w and cosh(t w) in z = t^2 s, s = w^2.
// Valid for either sign of s (negative s gives the sin/cos pair).
Symbols series_symbols(double t, double s) {
  const double z = t * t * s;
  const double sinhc = t * (1.0 + z / 6.0 * (1.0 + z / 20.0 * (1.0 + z / 42.0)));
  const double coshv = 1.0 + z / 2.0 * (1.0 + z / 12.0 * (1.0 + z / 30.0));
  const double damp = std::exp(-0.5 * t);
  return {damp * sinhc, damp * (coshv - 0.5 * sinhc)};
}

Symbols symbols(double t, double xi_sq) {
  const double s = 0.25 - xi_sq;
  if (std::abs(s) < kBranchWindow) return series_symbols(t, s);

  if (s > 0.0) {
    const double w = std::sqrt(s);
    // w - 1/2 without cancellation at small xi.
    const double growth = std::exp(-t * xi_sq / (w + 0.5));
    const double decay = std::exp(-2.0 * t * w);
    const double one_minus_decay = -std::expm1(-2.0 * t * w);
    // (1 - 2w) / (2w)
    const double delta = 4.0 * xi_sq / ((1.0 + 2.0 * w) * 2.0 * w);
    return {growth * one_minus_decay / (2.0 * w), growth * (decay - 0.5 * one_minus_decay * delta)};
  }

  const double v = std::sqrt(-s);
  const double damp = std::exp(-0.5 * t);
  const double sn = std::sin(t * v);
  const double cs = std::cos(t * v);
  return {damp * sn / v, damp * (cs - 0.5 * sn / v)};
}

}  // namespace

double multiplier_d(double t, double xi_sq) { return symbols(t, xi_sq).d; }

double multiplier_dt(double t, double xi_sq) { return symbols(t, xi_sq).dt; }

PropagatorMatrix propagator_matrix(double t, double xi_sq) {
  const Symbols s = symbols(t, xi_sq);
  return {s.d + s.dt, s.d, -xi_sq * s.d, s.dt};
}

}  // namespace dampwave
