#include "dampwave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dampwave {

void SolverConfig::validate() const {
  params.validate();
  grid.validate();
  if (params.dim != grid.dim) throw std::invalid_argument("problem and grid dimensions differ");
  if (!(dt > 0.0 && dt <= 0.5)) throw std::invalid_argument("dt must lie in (0, 0.5]");
  if (!(t_end >= dt)) throw std::invalid_argument("t_end must be >= dt");
  if (!(blowup_threshold > 1.0)) throw std::invalid_argument("blow-up threshold must be > 1");
  if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
  if (snapshot_every < 0) throw std::invalid_argument("snapshot_every must be >= 0");
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::blew_up: return "blew_up";
    case RunStatus::boundary_contaminated: return "boundary_contaminated";
  }
  return "unknown";
}

RealField nonlinearity(const RealField& u, double p, SourceKind kind) {
  if (!(p > 1.0)) throw std::invalid_argument("source power must be > 1");
  RealField f(u.grid);
  for (std::size_t i = 0; i < u.size(); ++i) {
    f.values[i] = source_value(u.values[i], p, kind);
    if (!std::isfinite(f.values[i])) throw std::overflow_error("source term overflowed");
  }
  return f;
}

SemilinearSolver::SemilinearSolver(SolverConfig cfg)
    : cfg_((cfg.validate(), std::move(cfg))), prop_(cfg_.grid), matrices_(prop_.transform().xi_sq(), cfg_.dt) {}

SpectralField SemilinearSolver::source_spectrum(const RealField& u) const {
  RealField f(u.grid);
  for (std::size_t i = 0; i < u.size(); ++i) f.values[i] = source_value(u.values[i], cfg_.params.p, cfg_.source);
  SpectralField fh = prop_.transform().forward(f);
  if (cfg_.dealias_enabled()) prop_.transform().dealias(fh);
  return fh;
}

LinearState SemilinearSolver::advance(const LinearState& state) const {
  const FourierTransform& fft = prop_.transform();
  const double dt = cfg_.dt;
  SpectralField uh = fft.forward(state.u);
  SpectralField vh = fft.forward(state.ut);
  const double next_t = state.t + dt;

  if (cfg_.source == SourceKind::none) {
    matrices_.apply(uh, vh);
    return LinearState(next_t, fft.inverse(uh), fft.inverse(vh));
  }

  const SpectralField fn = source_spectrum(state.u);
  for (std::size_t k = 0; k < vh.coeffs.size(); ++k) vh.coeffs[k] += 0.5 * dt * fn.coeffs[k];
  matrices_.apply(uh, vh);

  // Predictor u-component: S(dt)(w_n + dt F_n) = S(dt)(w_n + dt/2 F_n) + S(dt)(0, dt/2 F_n).
  SpectralField pred = fn;
  matrices_.apply_d(pred);
  for (std::size_t k = 0; k < pred.coeffs.size(); ++k) pred.coeffs[k] = uh.coeffs[k] + 0.5 * dt * pred.coeffs[k];
  const RealField u_star = fft.inverse(pred);

  const SpectralField fs = source_spectrum(u_star);
  for (std::size_t k = 0; k < vh.coeffs.size(); ++k) vh.coeffs[k] += 0.5 * dt * fs.coeffs[k];
  return LinearState(next_t, fft.inverse(uh), fft.inverse(vh));
}

LinearState SemilinearSolver::step(const LinearState& state) const {
  LinearState next = advance(state);
  if (!next.all_finite()) throw BlowUpError(next.t, "non-finite values at t = " + std::to_string(next.t));
  const double peak = linf_norm(next.u);
  if (peak > cfg_.blowup_threshold) {
    std::ostringstream msg;
    msg << "||u||_inf = " << peak << " exceeds the blow-up threshold at t = " << next.t;
    throw BlowUpError(next.t, msg.str());
  }
  return next;
}

RunOutcome SemilinearSolver::run(const RealField& u0, const RealField& u1) const {
  if (!(u0.grid == cfg_.grid) || !(u1.grid == cfg_.grid)) throw std::invalid_argument("data grid differs from config grid");
  if (!u0.all_finite() || !u1.all_finite()) throw std::invalid_argument("initial data must be finite");

  const FourierTransform& fft = prop_.transform();
  const auto total = static_cast<std::size_t>(std::ceil(cfg_.t_end / cfg_.dt - 1e-9));

  RunOutcome out;
  LinearState state(0.0, u0, u1);

  auto observe = [&](const LinearState& s, std::size_t n) {
    const bool last = n == total;
    if (n % static_cast<std::size_t>(cfg_.record_every) == 0 || last) {
      out.series.push(make_record(s, cfg_.weight, fft));
      const double peak = linf_norm(s.u);
      if (peak > 0.0) out.boundary_ratio = std::max(out.boundary_ratio, boundary_shell_max(s.u) / peak);
    }
    if (cfg_.snapshot_every > 0 && n % static_cast<std::size_t>(cfg_.snapshot_every) == 0) {
      out.trajectory.snapshots.push_back(s);
    }
  };

  observe(state, 0);
  for (std::size_t n = 1; n <= total; ++n) {
    LinearState next = advance(state);
    // Times are n * dt rather than an accumulated sum.
    next.t = static_cast<double>(n) * cfg_.dt;
    if (!next.all_finite() || linf_norm(next.u) > cfg_.blowup_threshold) {
      out.status = RunStatus::blew_up;
      out.blowup_time = 0.5 * (state.t + next.t);
      out.final_state = std::move(state);
      out.steps = n;
      return out;
    }
    state = std::move(next);
    observe(state, n);
  }
  out.steps = total;
  out.status = out.boundary_ratio > kBoundaryTolerance ? RunStatus::boundary_contaminated : RunStatus::completed;
  out.final_state = std::move(state);
  return out;
}

}  // namespace dampwave
