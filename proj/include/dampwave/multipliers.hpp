#pragma once

namespace dampwave {

/// Symbol of the fundamental solution D(t) of u_tt - Delta u + u_t = 0,
///
///   e^{-t/2} sinh(t w) / w,  w = sqrt(1/4 - |xi|^2)   (|xi|^2 < 1/4)
///   e^{-t/2} t                                       (|xi|^2 = 1/4)
///   e^{-t/2} sin(t v) / v,   v = sqrt(|xi|^2 - 1/4)  (|xi|^2 > 1/4)
///
/// The low-frequency branch is evaluated as e^{t(w - 1/2)} (1 - e^{-2tw}) / (2w)
/// so it stays finite for any t; near |xi|^2 = 1/4 a Taylor series in
/// s = 1/4 - |xi|^2 is used instead.
double multiplier_d(double t, double xi_sq);

/// Time derivative of multiplier_d:
///   e^{-t/2} [cosh(t w) - sinh(t w) / (2 w)]  (and the cos/sin analogue).
double multiplier_dt(double t, double xi_sq);

/// Width of the series window around the branch point.
inline constexpr double kBranchWindow = 1e-8;

/// Entries of the 2x2 propagator acting on (u_hat, ut_hat):
///   [u ]   [ d + dt   d  ] [u0]
///   [ut] = [ -xi^2 d  dt ] [u1]
/// The second time derivative of d is eliminated through d'' = -xi^2 d - d'.
struct PropagatorMatrix {
  double uu;
  double uv;
  double vu;
  double vv;
};

PropagatorMatrix propagator_matrix(double t, double xi_sq);

}  // namespace dampwave
