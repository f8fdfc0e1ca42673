#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace dampwave {

/// Periodic box [-L, L)^dim sampled with M points per axis, x_j = -L + j h.
struct GridSpec {
  int dim = 1;
  double half_width = 1.0;
  int points = 8;

  /// Throws std::invalid_argument: dim in {1,2,3}, L > 0, M even and >= 8,
  /// M <= 128 when dim == 3.
  void validate() const;

  double spacing() const { return 2.0 * half_width / points; }
  double cell_volume() const;
  std::size_t size() const;
  double coordinate(int index) const { return -half_width + index * spacing(); }
  /// Signed FFT index: 0..M/2-1 then -M/2..-1.
  int signed_index(int index) const { return index < points / 2 ? index : index - points; }
  double wavenumber(int index) const;

  /// Multi-index of a flat row-major offset (last axis fastest).
  std::array<int, 3> unflatten(std::size_t offset) const;
  /// |x|^2 at a flat offset.
  double radius_sq(std::size_t offset) const;

  bool operator==(const GridSpec&) const = default;
};

/// Real samples on a grid, row-major over axes.
struct RealField {
  GridSpec grid;
  std::vector<double> values;

  RealField() = default;
  explicit RealField(const GridSpec& g) : grid(g), values(g.size(), 0.0) {}
  RealField(const GridSpec& g, std::vector<double> v);

  std::size_t size() const { return values.size(); }
  bool all_finite() const;
};

/// Full complex DFT coefficients, same layout as the physical field.
/// Forward transform is unscaled, inverse divides by M^dim.
struct SpectralField {
  GridSpec grid;
  std::vector<std::complex<double>> coeffs;

  SpectralField() = default;
  explicit SpectralField(const GridSpec& g) : grid(g), coeffs(g.size()) {}
};

/// Multiplier as a function of |xi|^2.
using RadialMultiplier = std::function<double(double)>;

/// FFTW plans for one grid. Plans are created once and only executed
/// afterwards, so a transform may be shared across threads.
class FourierTransform {
 public:
  explicit FourierTransform(const GridSpec& grid);
  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  const GridSpec& grid() const { return grid_; }
  /// |xi_k|^2 for every coefficient.
  std::span<const double> xi_sq() const { return xi_sq_; }

  SpectralField forward(const RealField& field) const;
  RealField inverse(const SpectralField& field) const;

  /// d/dx_axis of the field, computed spectrally with the Nyquist mode zeroed.
  RealField derivative(const SpectralField& field, int axis) const;

  /// Zeroes every mode with some |k_i| > M/3.
  void dealias(SpectralField& field) const;

 private:
  GridSpec grid_;
  std::vector<double> xi_sq_;
  std::vector<std::array<double, 3>> xi_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

/// Multiplies each coefficient by m(|xi_k|^2). Throws std::domain_error if
/// the multiplier returns a non-finite value.
SpectralField apply_multiplier(const SpectralField& field, std::span<const double> xi_sq, const RadialMultiplier& m);

/// Discrete L^2 norm with the h^dim quadrature weight.
double l2_norm(const RealField& f);
/// Discrete L^2 norm of the physical field computed from its coefficients (Parseval).
double l2_norm(const SpectralField& f);
double linf_norm(const RealField& f);
double mean_value(const RealField& f);

/// Largest |f| over the boundary shell: points within max(1, M/32) indices of
/// the box edge along some axis.
double boundary_shell_max(const RealField& f);

/// Field sampled from a function of the coordinates.
RealField sample(const GridSpec& grid, const std::function<double(std::span<const double>)>& f);

}  // namespace dampwave
