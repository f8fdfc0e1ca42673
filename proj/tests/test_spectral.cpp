#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "dampwave/multipliers.hpp"
#include "dampwave/spectral.hpp"

using namespace dampwave;

namespace {

// Closed forms in extended precision, used as oracles away from the branch point.
long double d_oracle(long double t, long double xi_sq) {
  if (xi_sq < 0.25L) {
    const long double w = std::sqrt(0.25L - xi_sq);
    return std::exp(-t / 2) * std::sinh(t * w) / w;
  }
  const long double v = std::sqrt(xi_sq - 0.25L);
  return std::exp(-t / 2) * std::sin(t * v) / v;
}

long double dt_oracle(long double t, long double xi_sq) {
  if (xi_sq < 0.25L) {
    const long double w = std::sqrt(0.25L - xi_sq);
    return std::exp(-t / 2) * (std::cosh(t * w) - std::sinh(t * w) / (2 * w));
  }
  const long double v = std::sqrt(xi_sq - 0.25L);
  return std::exp(-t / 2) * (std::cos(t * v) - std::sin(t * v) / (2 * v));
}

RealField random_field(const GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  RealField f(g);
  for (auto& v : f.values) v = normal(rng);
  return f;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("grid validation") {
  CHECK_NOTHROW((GridSpec{1, 10.0, 8}).validate());
  CHECK_THROWS_AS((GridSpec{1, 10.0, 9}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{1, 10.0, 6}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{4, 10.0, 8}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{1, 0.0, 8}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{3, 10.0, 256}).validate(), std::invalid_argument);
  CHECK_NOTHROW((GridSpec{3, 10.0, 128}).validate());

  const GridSpec g{2, 5.0, 10};
  CHECK(g.spacing() == 1.0);
  CHECK(g.cell_volume() == 1.0);
  CHECK(g.size() == 100);
  CHECK(g.coordinate(0) == -5.0);
  CHECK(g.signed_index(4) == 4);
  CHECK(g.signed_index(5) == -5);
  CHECK(g.wavenumber(9) == doctest::Approx(-std::numbers::pi / 5.0));
  CHECK(g.unflatten(23) == std::array<int, 3>{2, 3, 0});
  CHECK(g.radius_sq(23) == doctest::Approx(9.0 + 4.0));
}

TEST_CASE("multiplier examples") {
  CHECK(multiplier_d(1.0, 0.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(multiplier_d(2.0, 0.25) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-15));
  const double nu = std::sqrt(3.0) / 2.0;
  CHECK(multiplier_d(1.0, 1.0) == doctest::Approx(std::exp(-0.5) * std::sin(nu) / nu).epsilon(1e-15));
  CHECK(multiplier_dt(1.0, 0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  const double r2 = std::sqrt(2.0);
  CHECK(multiplier_dt(1.0, 2.25) ==
        doctest::Approx(std::exp(-0.5) * (std::cos(r2) - std::sin(r2) / (2.0 * r2))).epsilon(1e-14));
  for (double xi_sq : {0.0, 0.1, 0.25, 0.3, 7.0}) {
    CHECK(multiplier_d(0.0, xi_sq) == 0.0);
    CHECK(multiplier_dt(0.0, xi_sq) == 1.0);
  }
}

TEST_CASE("multipliers agree with extended-precision closed forms") {
  for (double t : {0.01, 0.3, 1.0, 4.0, 12.5, 30.0}) {
    for (double xi_sq : {1e-10, 1e-4, 0.01, 0.1, 0.2, 0.2499, 0.2501, 0.4, 1.0, 9.0, 1e3}) {
      CAPTURE(t);
      CAPTURE(xi_sq);
      const double d = static_cast<double>(d_oracle(t, xi_sq));
      const double dt = static_cast<double>(dt_oracle(t, xi_sq));
      CHECK(std::abs(multiplier_d(t, xi_sq) - d) <= 1e-13 * std::max(1.0, std::abs(d)));
      CHECK(std::abs(multiplier_dt(t, xi_sq) - dt) <= 1e-13 * std::max(1.0, std::abs(dt)));
    }
  }
}

TEST_CASE("multiplier_dt is the time derivative and d solves the mode ODE") {
  const double h = 1e-5;
  for (double t : {0.5, 2.0, 9.0}) {
    for (double xi_sq : {0.0, 0.05, 0.25, 0.7, 4.0}) {
      const double fd = (multiplier_d(t + h, xi_sq) - multiplier_d(t - h, xi_sq)) / (2 * h);
      CHECK(multiplier_dt(t, xi_sq) == doctest::Approx(fd).epsilon(1e-8));
      const double d2 = (multiplier_dt(t + h, xi_sq) - multiplier_dt(t - h, xi_sq)) / (2 * h);
      CHECK(d2 + multiplier_dt(t, xi_sq) + xi_sq * multiplier_d(t, xi_sq) == doctest::Approx(0.0).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("continuity across the branch point") {
  for (double t = 0.0; t <= 100.0; t += 0.5) {
    for (double eps : {-1e-9, -1e-8, -5e-9, 1e-9, 5e-9, 1e-8, 2e-8}) {
      CHECK(std::abs(multiplier_d(t, 0.25 + eps) - multiplier_d(t, 0.25)) < 1e-7);
      CHECK(std::abs(multiplier_dt(t, 0.25 + eps) - multiplier_dt(t, 0.25)) < 1e-7);
    }
  }
  // The series and the closed forms meet at the window edges.
  for (double t : {1.0, 10.0}) {
    const double s = kBranchWindow * 1.0001;
    CHECK(multiplier_d(t, 0.25 - s) == doctest::Approx(static_cast<double>(d_oracle(t, 0.25L - s))).epsilon(1e-12));
    CHECK(multiplier_d(t, 0.25 + s) == doctest::Approx(static_cast<double>(d_oracle(t, 0.25L + s))).epsilon(1e-12));
  }
}

TEST_CASE("large times stay finite and decay where expected") {
  for (double t : {100.0, 300.0, 500.0, 1e4}) {
    for (double xi_sq : {0.0, 1e-12, 1e-3, 0.24, 0.25, 0.26, 3.0}) {
      CHECK(std::isfinite(multiplier_d(t, xi_sq)));
      CHECK(std::isfinite(multiplier_dt(t, xi_sq)));
    }
  }
  CHECK(multiplier_d(500.0, 0.0) == 1.0);
  CHECK(multiplier_d(500.0, 1e-3) == doctest::Approx(std::exp(500.0 * (std::sqrt(0.249) - 0.5)) / (2 * std::sqrt(0.249))));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ut(0.0, 200.0), ux(0.25, 50.0);
  for (int i = 0; i < 10000; ++i) {
    const double t = ut(rng), xi_sq = ux(rng);
    CHECK(std::abs(multiplier_d(t, xi_sq)) <= t * std::exp(-t / 2) * (1 + 1e-12) + 1e-300);
  }
}

TEST_CASE("propagator matrix entries") {
  const PropagatorMatrix m = propagator_matrix(2.0, 0.0);
  CHECK(m.uu == doctest::Approx(1.0));
  CHECK(m.uv == doctest::Approx(1.0 - std::exp(-2.0)));
  CHECK(m.vu == 0.0);
  CHECK(m.vv == doctest::Approx(std::exp(-2.0)));
  const PropagatorMatrix id = propagator_matrix(0.0, 3.0);
  CHECK(id.uu == 1.0);
  CHECK(id.uv == 0.0);
  CHECK(id.vu == 0.0);
  CHECK(id.vv == 1.0);
}

TEST_CASE("transform round trip and normalization") {
  for (const GridSpec g : {GridSpec{1, 7.0, 64}, GridSpec{2, 3.0, 32}, GridSpec{3, 2.0, 16}}) {
    CAPTURE(g.dim);
    const FourierTransform fft(g);
    const RealField f = random_field(g, 11 + g.dim);
    const RealField back = fft.inverse(fft.forward(f));
    double err = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(back.values[i] - f.values[i]));
    CHECK(err < 1e-12 * linf_norm(f));

    const SpectralField F = fft.forward(f);
    CHECK(l2_norm(F) == doctest::Approx(l2_norm(f)).epsilon(1e-12));

    RealField c(g);
    for (auto& v : c.values) v = 2.5;
    const SpectralField C = fft.forward(c);
    CHECK(C.coeffs[0].real() == doctest::Approx(2.5 * g.size()));
    double rest = 0.0;
    for (std::size_t i = 1; i < C.coeffs.size(); ++i) rest = std::max(rest, std::abs(C.coeffs[i]));
    CHECK(rest < 1e-12 * g.size());
  }
  const FourierTransform a(GridSpec{1, 1.0, 8});
  CHECK_THROWS_AS(a.forward(RealField(GridSpec{1, 1.0, 16})), std::invalid_argument);
}

TEST_CASE("translation is a Fourier phase on a Gaussian") {
  const GridSpec g{1, 20.0, 256};
  const FourierTransform fft(g);
  const double s = 1.7;
  const RealField centred = sample(g, [](auto x) { return std::exp(-x[0] * x[0]); });
  const RealField shifted = sample(g, [s](auto x) { return std::exp(-(x[0] - s) * (x[0] - s)); });
  const SpectralField A = fft.forward(centred);
  const SpectralField B = fft.forward(shifted);
  double err = 0.0;
  for (int k = 0; k < g.points; ++k) {
    const std::complex<double> phase = std::polar(1.0, -g.wavenumber(k) * s);
    err = std::max(err, std::abs(B.coeffs[k] - A.coeffs[k] * phase));
  }
  CHECK(err < 1e-10 * std::abs(A.coeffs[0]));
}

TEST_CASE("spectral derivative and dealiasing") {
  const GridSpec g{2, 15.0, 256};
  const FourierTransform fft(g);
  const RealField f = sample(g, [](auto x) { return std::exp(-(x[0] * x[0] + 2.0 * x[1] * x[1])); });
  const SpectralField F = fft.forward(f);
  const RealField dx = fft.derivative(F, 0), dy = fft.derivative(F, 1);
  double err = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto idx = g.unflatten(i);
    const double x = g.coordinate(idx[0]), y = g.coordinate(idx[1]);
    err = std::max(err, std::abs(dx.values[i] + 2.0 * x * f.values[i]));
    err = std::max(err, std::abs(dy.values[i] + 4.0 * y * f.values[i]));
  }
  CHECK(err < 1e-10);

  SpectralField R = fft.forward(random_field(g, 5));
  fft.dealias(R);
  for (std::size_t i = 0; i < R.coeffs.size(); ++i) {
    const auto idx = g.unflatten(i);
    const bool high = std::abs(g.signed_index(idx[0])) > g.points / 3 || std::abs(g.signed_index(idx[1])) > g.points / 3;
    if (high) CHECK(R.coeffs[i] == std::complex<double>(0.0, 0.0));
  }
}

TEST_CASE("apply_multiplier") {
  const GridSpec g{1, 10.0, 64};
  const FourierTransform fft(g);
  const SpectralField F = fft.forward(random_field(g, 9));
  const SpectralField same = apply_multiplier(F, fft.xi_sq(), [](double) { return 1.0; });
  CHECK(same.coeffs == F.coeffs);
  const SpectralField zero = apply_multiplier(F, fft.xi_sq(), [](double) { return 0.0; });
  for (const auto& c : zero.coeffs) CHECK(c == std::complex<double>(0.0, 0.0));

  // A real multiplier keeps the field real (Hermitian symmetry) and obeys Parseval.
  const SpectralField D = apply_multiplier(F, fft.xi_sq(), [](double xi_sq) { return multiplier_d(3.0, xi_sq); });
  for (int k = 1; k < g.points / 2; ++k) CHECK(std::abs(D.coeffs[k] - std::conj(D.coeffs[g.points - k])) < 1e-12);
  CHECK(l2_norm(fft.inverse(D)) == doctest::Approx(l2_norm(D)).epsilon(1e-12));

  CHECK_THROWS_AS(apply_multiplier(F, fft.xi_sq(), [](double) { return std::nan(""); }), std::domain_error);
}

TEST_CASE("field norms and boundary shell") {
  const GridSpec g{1, 4.0, 8};
  RealField f(g, {1, 2, 3, 4, 5, 6, 7, -8});
  CHECK(linf_norm(f) == 8.0);
  CHECK(mean_value(f) == doctest::Approx(20.0 / 8.0));
  CHECK(l2_norm(f) == doctest::Approx(std::sqrt(204.0)));
  CHECK(boundary_shell_max(f) == 8.0);
  f.values[3] = std::numeric_limits<double>::infinity();
  CHECK_FALSE(f.all_finite());
}

}  // TEST_SUITE
