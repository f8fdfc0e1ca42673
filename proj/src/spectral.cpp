#include "dampwave/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dampwave {

namespace {

// FFTW's planner is not re-entrant; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

void GridSpec::validate() const {
  if (dim < 1 || dim > 3) throw std::invalid_argument("grid dimension must be 1, 2 or 3");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw std::invalid_argument("grid half-width must be > 0");
  if (points < 8 || points % 2 != 0) throw std::invalid_argument("points per axis must be even and >= 8");
  if (dim == 3 && points > 128) throw std::invalid_argument("3-d grids are capped at 128 points per axis");
}

double GridSpec::cell_volume() const { return std::pow(spacing(), dim); }

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int d = 0; d < dim; ++d) n *= static_cast<std::size_t>(points);
  return n;
}

double GridSpec::wavenumber(int index) const { return std::numbers::pi * signed_index(index) / half_width; }

std::array<int, 3> GridSpec::unflatten(std::size_t offset) const {
  std::array<int, 3> idx{0, 0, 0};
  const auto m = static_cast<std::size_t>(points);
  for (int d = dim - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(offset % m);
    offset /= m;
  }
  return idx;
}

double GridSpec::radius_sq(std::size_t offset) const {
  const auto idx = unflatten(offset);
  double r2 = 0.0;
  for (int d = 0; d < dim; ++d) {
    const double x = coordinate(idx[d]);
    r2 += x * x;
  }
  return r2;
}

RealField::RealField(const GridSpec& g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) throw std::invalid_argument("field size does not match grid");
}

bool RealField::all_finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

struct FourierTransform::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

FourierTransform::FourierTransform(const GridSpec& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
  grid_.validate();
  const std::size_t n = grid_.size();
  xi_sq_.resize(n);
  xi_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto idx = grid_.unflatten(k);
    std::array<double, 3> xi{0.0, 0.0, 0.0};
    double s = 0.0;
    for (int d = 0; d < grid_.dim; ++d) {
      xi[d] = grid_.wavenumber(idx[d]);
      s += xi[d] * xi[d];
    }
    xi_[k] = xi;
    xi_sq_[k] = s;
  }

  std::vector<int> shape(grid_.dim, grid_.points);
  std::vector<std::complex<double>> a(n), b(n);
  std::lock_guard lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans_->forward = fftw_plan_dft(grid_.dim, shape.data(), as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD, flags);
  plans_->backward = fftw_plan_dft(grid_.dim, shape.data(), as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD, flags);
  if (!plans_->forward || !plans_->backward) throw std::runtime_error("FFTW plan creation failed");
}

FourierTransform::~FourierTransform() {
  std::lock_guard lock(planner_mutex());
  if (plans_->forward) fftw_destroy_plan(plans_->forward);
  if (plans_->backward) fftw_destroy_plan(plans_->backward);
}

SpectralField FourierTransform::forward(const RealField& field) const {
  if (!(field.grid == grid_)) throw std::invalid_argument("forward transform: grid mismatch");
  std::vector<std::complex<double>> in(field.values.begin(), field.values.end());
  SpectralField out(grid_);
  fftw_execute_dft(plans_->forward, as_fftw(in.data()), as_fftw(out.coeffs.data()));
  return out;
}

RealField FourierTransform::inverse(const SpectralField& field) const {
  if (!(field.grid == grid_)) throw std::invalid_argument("inverse transform: grid mismatch");
  std::vector<std::complex<double>> in = field.coeffs;
  std::vector<std::complex<double>> out(in.size());
  fftw_execute_dft(plans_->backward, as_fftw(in.data()), as_fftw(out.data()));
  RealField result(grid_);
  const double scale = 1.0 / static_cast<double>(in.size());
  for (std::size_t i = 0; i < out.size(); ++i) result.values[i] = out[i].real() * scale;
  return result;
}

RealField FourierTransform::derivative(const SpectralField& field, int axis) const {
  if (axis < 0 || axis >= grid_.dim) throw std::invalid_argument("derivative axis out of range");
  SpectralField d(grid_);
  const int nyquist = grid_.points / 2;
  for (std::size_t k = 0; k < d.coeffs.size(); ++k) {
    const auto idx = grid_.unflatten(k);
    if (idx[axis] == nyquist) continue;
    d.coeffs[k] = std::complex<double>(0.0, xi_[k][axis]) * field.coeffs[k];
  }
  return inverse(d);
}

void FourierTransform::dealias(SpectralField& field) const {
  const int cutoff = grid_.points / 3;
  for (std::size_t k = 0; k < field.coeffs.size(); ++k) {
    const auto idx = grid_.unflatten(k);
    for (int d = 0; d < grid_.dim; ++d) {
      if (std::abs(grid_.signed_index(idx[d])) > cutoff) {
        field.coeffs[k] = 0.0;
        break;
      }
    }
  }
}

SpectralField apply_multiplier(const SpectralField& field, std::span<const double> xi_sq, const RadialMultiplier& m) {
  if (xi_sq.size() != field.coeffs.size()) throw std::invalid_argument("apply_multiplier: size mismatch");
  SpectralField out(field.grid);
  for (std::size_t k = 0; k < out.coeffs.size(); ++k) {
    const double factor = m(xi_sq[k]);
    if (!std::isfinite(factor)) {
      throw std::domain_error("non-finite multiplier value at |xi|^2 = " + std::to_string(xi_sq[k]));
    }
    out.coeffs[k] = factor * field.coeffs[k];
  }
  return out;
}

double l2_norm(const RealField& f) {
  double s = 0.0;
  for (double v : f.values) s += v * v;
  return std::sqrt(s * f.grid.cell_volume());
}

double l2_norm(const SpectralField& f) {
  double s = 0.0;
  for (const auto& c : f.coeffs) s += std::norm(c);
  return std::sqrt(s * f.grid.cell_volume() / static_cast<double>(f.coeffs.size()));
}

double linf_norm(const RealField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double mean_value(const RealField& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s / static_cast<double>(f.values.size());
}

double boundary_shell_max(const RealField& f) {
  const int m = f.grid.points;
  const int width = std::max(1, m / 32);
  double best = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const auto idx = f.grid.unflatten(i);
    bool in_shell = false;
    for (int d = 0; d < f.grid.dim; ++d) {
      if (idx[d] < width || idx[d] >= m - width) {
        in_shell = true;
        break;
      }
    }
    if (in_shell) best = std::max(best, std::abs(f.values[i]));
  }
  return best;
}

RealField sample(const GridSpec& grid, const std::function<double(std::span<const double>)>& f) {
  grid.validate();
  RealField out(grid);
  double x[3] = {0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const auto idx = grid.unflatten(i);
    for (int d = 0; d < grid.dim; ++d) x[d] = grid.coordinate(idx[d]);
    out.values[i] = f(std::span<const double>(x, static_cast<std::size_t>(grid.dim)));
  }
  return out;
}

}  // namespace dampwave
