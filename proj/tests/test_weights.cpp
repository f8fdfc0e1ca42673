#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <random>

#include "dampwave/solver.hpp"
#include "dampwave/weights.hpp"

using namespace dampwave;

namespace {

RealField gaussian(const GridSpec& g, double amplitude, double width) {
  return sample(g, [=](std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return amplitude * std::exp(-r2 / (width * width));
  });
}

RunOutcome small_run(double amplitude, double t_end, int snapshot_every, SourceKind source = SourceKind::abs_power,
                     WeightParams w = WeightParams::make(4.0, 2.0)) {
  SolverConfig cfg;
  cfg.params = {1, 4.0, w.lambda};
  cfg.grid = GridSpec{1, 100.0, 512};
  cfg.weight = w;
  cfg.dt = 0.05;
  cfg.t_end = t_end;
  cfg.snapshot_every = snapshot_every;
  cfg.source = source;
  const RealField u0 = gaussian(cfg.grid, amplitude, 1.0);
  return SemilinearSolver(cfg).run(u0, u0);
}

}  // namespace

TEST_SUITE("weights") {

TEST_CASE("weight parameters") {
  CHECK_NOTHROW(WeightParams::make(1.0, 2.0));
  CHECK_THROWS_AS(WeightParams::make(0.99, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(WeightParams::make(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(WeightParams::make(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("psi and Psi") {
  const WeightParams w = WeightParams::make(1.0, 2.0);
  CHECK(weight_psi(0.0, 0.0, w) == 1.0);
  CHECK(weight_Psi(0.0, 0.0, w) == 1.0);
  CHECK(weight_psi(0.0, 3.0, w) == 4.0);
  CHECK(weight_Psi(0.0, 3.0, w) == doctest::Approx(16.0));
  double prev = weight_psi(0.0, 5.0, w);
  for (double t = 1.0; t < 1e6; t *= 3.0) {
    const double next = weight_psi(t, 5.0, w);
    CHECK(next < prev);
    CHECK(next >= w.A);
    prev = next;
  }
  CHECK(prev == doctest::Approx(w.A).epsilon(1e-4));
}

TEST_CASE("closed-form derivatives match finite differences") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ut(0.0, 20.0), ur(0.1, 10.0), ul(0.2, 4.0);
  for (int i = 0; i < 200; ++i) {
    const double t = ut(rng), r = ur(rng), lam = ul(rng);
    const WeightParams w = WeightParams::make(lam, lam);
    const double h = 1e-6 * (1.0 + t);
    const double dpsi_t = (weight_Psi(t + h, r * r, w) - weight_Psi(t - h, r * r, w)) / (2 * h);
    CHECK(weight_Psi_t(t, r * r, w) == doctest::Approx(dpsi_t).epsilon(1e-6));
    CHECK(weight_Psi_t(t, r * r, w) <= 0.0);
    const double hr = 1e-6 * r;
    const double dpsi_r = (weight_Psi(t, (r + hr) * (r + hr), w) - weight_Psi(t, (r - hr) * (r - hr), w)) / (2 * hr);
    CHECK(weight_grad_Psi_sq(t, r * r, w) == doctest::Approx(dpsi_r * dpsi_r).epsilon(1e-6));
  }
  CHECK(weight_Psi_t(3.0, 0.0, WeightParams::make(1.0, 2.0)) == 0.0);
}

TEST_CASE("inequality residual") {
  for (double lam : {0.1, 1.0, 2.0, 7.5}) {
    CHECK(std::abs(weight_inequality_residual(0.0, 0.0, WeightParams::make(lam / 2.0, lam))) < 1e-12);
  }
  CHECK(weight_inequality_residual(0.0, 0.0, WeightParams::make(2.0, 2.0)) == doctest::Approx(4.0));
  CHECK(weight_inequality_residual(0.0, 0.0, WeightParams::make(2.0, 2.0)) ==
        doctest::Approx(2.0 * weight_Psi(0.0, 0.0, WeightParams::make(2.0, 2.0)) - 2.0 * 2.0));

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 1.0;
  for (int i = 0; i < 100000; ++i) {
    const double lam = 10.0 * (1.0 - unit(rng));
    const double A = lam / 2.0 + 9.5 * lam * unit(rng);
    const double r = 50.0 * unit(rng);
    worst = std::min(worst, weight_inequality_residual(100.0 * unit(rng), r * r, WeightParams::make(A, lam)));
  }
  CHECK(worst >= -1e-12);
}

// With psi = A + |x|^2/(1+t) the gradient ratio is 4 lambda psi^{lambda-1}.
// It stays below 2 Psi exactly when psi >= 2 lambda, so A >= 2 lambda is the
// condition that makes the energy argument go through for this psi.
TEST_CASE("gradient ratio of the weight") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ut(0.0, 50.0), ur(0.01, 30.0), ul(0.1, 6.0);
  for (int i = 0; i < 2000; ++i) {
    const double t = ut(rng), r2 = std::pow(ur(rng), 2), lam = ul(rng);
    const WeightParams w = WeightParams::make(2.0 * lam, lam);
    const double ratio = weight_grad_Psi_sq(t, r2, w) / -weight_Psi_t(t, r2, w);
    CHECK(ratio == doctest::Approx(4.0 * lam * std::pow(weight_psi(t, r2, w), lam - 1.0)).epsilon(1e-12));
    CHECK(ratio <= 2.0 * weight_Psi(t, r2, w) * (1.0 + 1e-12));
  }
  const WeightParams edge = WeightParams::make(1.0, 2.0);
  const double r2 = 0.5;
  CHECK(weight_grad_Psi_sq(0.0, r2, edge) / -weight_Psi_t(0.0, r2, edge) > 2.0 * weight_Psi(0.0, r2, edge));
}

TEST_CASE("E_Psi quadrature") {
  const GridSpec g{1, 20.0, 512};
  const LinearState flat(0.0, [&] {
    RealField c(g);
    for (auto& v : c.values) v = 3.0;
    return c;
  }(), RealField(g));
  CHECK(energy_e_psi(flat, WeightParams::make(1.0, 2.0)) == doctest::Approx(0.0).scale(1e-20));

  const LinearState s(0.0, RealField(g), gaussian(g, 1.0, 1.0));
  CHECK(energy_e_psi(s, WeightParams::unit()) == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-13));

  const LinearState s2(0.0, gaussian(g, 1.0, 2.0), gaussian(g, 0.5, 1.5));
  for (const WeightParams w : {WeightParams::make(1.0, 2.0), WeightParams::make(3.0, 1.5)}) {
    CHECK(energy_e_psi(s2, w) >= std::pow(w.A, w.lambda) * energy_e_psi(s2, WeightParams::unit()));
  }
}

TEST_CASE("linear flow: E_Psi nonincreasing when A >= 2 lambda") {
  for (const WeightParams w : {WeightParams::make(4.0, 2.0), WeightParams::make(2.0, 1.0), WeightParams::make(7.0, 3.5)}) {
    const RunOutcome out = small_run(1.0, 30.0, 0, SourceKind::none, w);
    const auto e = out.series.column("e_psi");
    for (std::size_t k = 1; k < e.size(); ++k) CHECK(e[k] <= e[k - 1] * (1.0 + 1e-10));
  }
}

TEST_CASE("linear flow: A = lambda / 2 can raise E_Psi") {
  const RunOutcome out = small_run(1.0, 2.0, 0, SourceKind::none, WeightParams::make(1.0, 2.0));
  const auto e = out.series.column("e_psi");
  double rise = 0.0;
  for (std::size_t k = 1; k < e.size(); ++k) rise = std::max(rise, e[k] / e[k - 1] - 1.0);
  CHECK(rise > 1e-3);
}

TEST_CASE("energy audit") {
  Trajectory few;
  few.snapshots.resize(10, LinearState(0.0, RealField(GridSpec{1, 1.0, 8}), RealField(GridSpec{1, 1.0, 8})));
  CHECK_THROWS_AS(energy_audit(few, WeightParams::make(4.0, 2.0), 4.0), std::invalid_argument);

  SUBCASE("zero data") {
    SolverConfig cfg;
    cfg.params = {1, 4.0, 2.0};
    cfg.grid = GridSpec{1, 20.0, 64};
    cfg.weight = WeightParams::make(4.0, 2.0);
    cfg.dt = 0.1;
    cfg.t_end = 6.0;
    cfg.snapshot_every = 1;
    const RunOutcome out = SemilinearSolver(cfg).run(RealField(cfg.grid), RealField(cfg.grid));
    const EnergyAuditReport rep = energy_audit(out.trajectory, cfg.weight, 4.0);
    CHECK(rep.passed);
    CHECK(rep.max_violation == 0.0);
  }
  SUBCASE("linear run") {
    const RunOutcome out = small_run(1.0, 10.0, 2, SourceKind::none);
    const EnergyAuditReport rep = energy_audit(out.trajectory, WeightParams::make(4.0, 2.0), 4.0, SourceKind::none);
    CHECK(rep.passed);
    for (std::size_t k = 1; k < rep.lhs.size(); ++k) CHECK(rep.lhs[k] <= rep.lhs[k - 1] * (1.0 + 1e-8));
  }
  SUBCASE("small-data semilinear run") {
    const RunOutcome out = small_run(0.01, 50.0, 10);
    const EnergyAuditReport rep = energy_audit(out.trajectory, WeightParams::make(4.0, 2.0), 4.0);
    CHECK(rep.times.size() == 101);
    CHECK(rep.passed);
    CHECK(rep.max_violation <= 1e-4);
    CHECK(rep.max_signed_gap < 0.0);
    CHECK(rep.quadrature_error_estimate < 1e-6);
  }
}

TEST_CASE("nonlinear bound audit and X norm") {
  const GridSpec g{1, 5.0, 8};
  Trajectory zero;
  zero.snapshots.emplace_back(0.0, RealField(g), RealField(g));
  const NonlinearBoundReport z = nl_bound_audit(zero, WeightParams::make(4.0, 2.0), 4.0);
  CHECK_FALSE(z.applicable);
  CHECK(z.x_norm == 0.0);
  CHECK_THROWS_AS(nl_bound_audit(Trajectory{}, WeightParams::make(4.0, 2.0), 4.0), std::invalid_argument);

  const RunOutcome a = small_run(0.01, 20.0, 10);
  const RunOutcome b = small_run(0.02, 20.0, 10);
  const NonlinearBoundReport ra = nl_bound_audit(a.trajectory, WeightParams::make(4.0, 2.0), 4.0);
  CHECK(ra.applicable);
  CHECK(std::isfinite(ra.max_ratio));
  CHECK(ra.x_norm > 0.0);
  CHECK(ra.x_norm <= x_norm(a.series) * (1.0 + 1e-12));
  // Small data: the solution is linear to leading order.
  CHECK(x_norm(b.series) / x_norm(a.series) == doctest::Approx(2.0).epsilon(0.2));
}

}  // TEST_SUITE
