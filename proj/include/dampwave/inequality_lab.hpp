#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "dampwave/exponents.hpp"

namespace dampwave {

enum class TestFunctionKind { gaussian, bump, polynomial_gaussian, hermite_gaussian };

std::string to_string(TestFunctionKind k);
TestFunctionKind parse_test_function_kind(const std::string& name);

/// Smooth, rapidly decaying function of y = (x - center) / width:
///   gaussian             a e^{-|y|^2}
///   bump                 a exp(-1 / (1 - |y|^2)) on |y| < 1
///   polynomial_gaussian  a (1 + |y|^2)^degree e^{-|y|^2}
///   hermite_gaussian     a H_degree(y_1) e^{-|y|^2}   (physicists' Hermite)
struct TestFunction {
  TestFunctionKind kind = TestFunctionKind::gaussian;
  int dim = 1;
  double amplitude = 1.0;
  double width = 1.0;
  std::array<double, 3> center{0.0, 0.0, 0.0};
  int degree = 0;

  void validate() const;
  double value(std::span<const double> x) const;
  /// Analytic gradient, first `dim` entries used.
  std::array<double, 3> gradient(std::span<const double> x) const;
  /// x -> u(mu x).
  TestFunction dilated(double mu) const;
  /// Radius (about the origin) outside which u and grad u are below double precision.
  double extent() const;
};

/// Radial panels are graded geometrically toward |x| = 0 so that negative
/// weight exponents stay integrable; angular directions use the periodic
/// trapezoid rule (and Gauss-Legendre in cos(polar angle) for dim 3).
struct QuadratureOptions {
  int radial_panels = 64;
  int gauss_order = 20;
  int grading_levels = 40;
  int angular_points = 64;

  QuadratureOptions refined() const;
};

struct CknNorms {
  double weighted_u_r = 0.0;     // || |x|^gamma u ||_r
  double weighted_grad_p = 0.0;  // || |x|^alpha grad u ||_p
  double weighted_u_q = 0.0;     // || |x|^beta u ||_q
};

CknNorms ckn_norms(const TestFunction& u, const CknParams& c, const QuadratureOptions& opts = {});

/// Left side over the product of right-side norms. Throws std::invalid_argument
/// for inadmissible parameters and std::domain_error for a zero denominator.
double ckn_ratio(const TestFunction& u, const CknParams& c, const QuadratureOptions& opts = {});

/// Same ratio without the admissibility requirement, for demonstrating
/// unboundedness off the balance line.
double ckn_ratio_unchecked(const TestFunction& u, const CknParams& c, const QuadratureOptions& opts = {});

struct RatioSweepReport {
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  std::size_t argmax = 0;
  std::size_t argmin = 0;
};

/// Ratios over a family, evaluated in parallel. `require_admissible = false`
/// lets the sweep run on unbalanced parameters.
RatioSweepReport ratio_sweep(std::span<const TestFunction> family, const CknParams& c,
                             const QuadratureOptions& opts = {}, bool require_admissible = true);

/// Gaussians of widths 2^k for k in [k_min, k_max].
std::vector<TestFunction> gaussian_width_family(int dim, int k_min, int k_max);

/// Mixed family: the width ladder plus bumps, polynomial and Hermite
/// Gaussians and off-centre Gaussians.
std::vector<TestFunction> mixed_family(int dim);

}  // namespace dampwave
