#include "dampwave/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dampwave/weights.hpp"

namespace dampwave {

LinearState::LinearState(double time, RealField u_, RealField ut_) : t(time), u(std::move(u_)), ut(std::move(ut_)) {
  if (!(u.grid == ut.grid)) throw std::invalid_argument("u and u_t must share a grid");
  if (u.size() != u.grid.size() || ut.size() != ut.grid.size()) throw std::invalid_argument("field size mismatch");
}

StepMatrices::StepMatrices(std::span<const double> xi_sq, double dt) : dt_(dt) {
  if (!(dt >= 0.0)) throw std::invalid_argument("time increment must be >= 0");
  m_.reserve(xi_sq.size());
  for (double s : xi_sq) m_.push_back(propagator_matrix(dt, s));
}

void StepMatrices::apply(SpectralField& u, SpectralField& ut) const {
  if (u.coeffs.size() != m_.size() || ut.coeffs.size() != m_.size()) {
    throw std::invalid_argument("StepMatrices: size mismatch");
  }
  for (std::size_t k = 0; k < m_.size(); ++k) {
    const auto a = u.coeffs[k];
    const auto b = ut.coeffs[k];
    u.coeffs[k] = m_[k].uu * a + m_[k].uv * b;
    ut.coeffs[k] = m_[k].vu * a + m_[k].vv * b;
  }
}

void StepMatrices::apply_d(SpectralField& f) const {
  if (f.coeffs.size() != m_.size()) throw std::invalid_argument("StepMatrices: size mismatch");
  for (std::size_t k = 0; k < m_.size(); ++k) f.coeffs[k] *= m_[k].uv;
}

LinearPropagator::LinearPropagator(const GridSpec& grid) : fft_(std::make_shared<const FourierTransform>(grid)) {}

LinearPropagator::LinearPropagator(std::shared_ptr<const FourierTransform> transform) : fft_(std::move(transform)) {
  if (!fft_) throw std::invalid_argument("null transform");
}

SpectralState LinearPropagator::to_spectral(const LinearState& s) const {
  return SpectralState{s.t, fft_->forward(s.u), fft_->forward(s.ut)};
}

LinearState LinearPropagator::to_physical(const SpectralState& s) const {
  return LinearState(s.t, fft_->inverse(s.u), fft_->inverse(s.ut));
}

SpectralState LinearPropagator::evolve(const SpectralState& state, double dt) const {
  const StepMatrices step(fft_->xi_sq(), dt);
  SpectralState out = state;
  step.apply(out.u, out.ut);
  out.t = state.t + dt;
  return out;
}

LinearState LinearPropagator::evolve(const LinearState& state, double dt) const {
  LinearState out = to_physical(evolve(to_spectral(state), dt));
  if (!out.all_finite()) throw std::domain_error("linear evolution produced non-finite values");
  return out;
}

LinearState linear_evolve(const LinearState& state, double dt) {
  const LinearPropagator prop(state.grid());
  return prop.evolve(state, dt);
}

LinearProfile decay_profile(const RealField& u0, const RealField& u1, std::span<const double> times,
                            const WeightParams& weight) {
  const LinearPropagator prop(u0.grid);
  const SpectralState initial = prop.to_spectral(LinearState(0.0, u0, u1));
  LinearProfile profile;
  for (double t : times) {
    if (!(t >= 0.0)) throw std::invalid_argument("decay_profile times must be nonnegative");
    const LinearState s = prop.to_physical(prop.evolve(initial, t));
    if (!s.all_finite()) throw std::domain_error("linear evolution produced non-finite values");
    profile.series.push(make_record(s, weight, prop.transform()));
    const double peak = linf_norm(s.u);
    if (peak > 0.0) profile.boundary_ratio = std::max(profile.boundary_ratio, boundary_shell_max(s.u) / peak);
  }
  profile.boundary_contaminated = profile.boundary_ratio > kBoundaryTolerance;
  return profile;
}

}  // namespace dampwave
