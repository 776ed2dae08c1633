#pragma once

#include <complex>
#include <cstddef>

namespace cgolab {

using cplx = std::complex<double>;

/// Periodic N x N sampling of the square Q = center + [-L/2, L/2]^2.
///
/// Sample (i, j) sits at z = corner + h*(i + i*j), with i running along x1
/// and j along x2; storage is row-major with i the slow index. The
/// reconstruction domain Omega is the concentric square of half-width L/4 and
/// every potential must live in the support box of half-width L/8.
class Grid2D {
 public:
  Grid2D(double side_length, std::size_t resolution, cplx center = {0.0, 0.0});

  double side_length() const { return side_length_; }
  std::size_t resolution() const { return resolution_; }
  std::size_t size() const { return resolution_ * resolution_; }
  cplx center() const { return center_; }
  double spacing() const { return side_length_ / static_cast<double>(resolution_); }
  double cell_area() const { return spacing() * spacing(); }

  double x1(std::size_t i) const;
  double x2(std::size_t j) const;
  cplx point(std::size_t i, std::size_t j) const { return {x1(i), x2(j)}; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * resolution_ + j; }

  /// Signed lattice index k in {-N/2, ..., N/2-1} for FFT slot m.
  long wavenumber(std::size_t m) const;
  /// Angular frequency 2*pi*k/L for FFT slot m.
  double frequency(std::size_t m) const;
  bool is_nyquist(std::size_t m) const { return m == resolution_ / 2; }
  /// Frequency spacing 2*pi/L.
  double frequency_step() const;
  double min_frequency() const { return frequency(resolution_ / 2); }
  double max_frequency() const { return frequency(resolution_ / 2 - 1); }

  double q_half_width() const { return side_length_ / 2.0; }
  double omega_half_width() const { return side_length_ / 4.0; }
  double support_half_width() const { return side_length_ / 8.0; }

  bool in_omega(cplx z, double slack = 1e-12) const;
  bool in_support(cplx z, double slack = 1e-12) const;

  /// Index of the grid node nearest to z along each axis.
  std::size_t nearest_i(double x1) const;
  std::size_t nearest_j(double x2) const;

  /// Index range [first, last] of the nodes of closed Omega along one axis.
  std::size_t omega_first() const { return resolution_ / 4; }
  std::size_t omega_last() const { return 3 * resolution_ / 4; }

  bool operator==(const Grid2D& other) const;

 private:
  double side_length_;
  std::size_t resolution_;
  cplx center_;
};

/// Validating factory: N must be a power of two, at least 16; L > 0.
Grid2D make_grid(double side_length, std::size_t resolution, cplx center = {0.0, 0.0});

void require_same_grid(const Grid2D& a, const Grid2D& b);

}  // namespace cgolab
