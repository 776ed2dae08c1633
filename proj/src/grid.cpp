#include "cgolab/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cgolab/errors.hpp"

namespace cgolab {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid2D::Grid2D(double side_length, std::size_t resolution, cplx center)
    : side_length_(side_length), resolution_(resolution), center_(center) {
  if (!(side_length > 0.0) || !std::isfinite(side_length)) {
    throw InvalidArgument("grid side length must be positive, got " + std::to_string(side_length));
  }
  if (resolution < 16 || !is_power_of_two(resolution)) {
    throw InvalidArgument("grid resolution must be a power of two >= 16, got " +
                          std::to_string(resolution));
  }
}

double Grid2D::x1(std::size_t i) const {
  return center_.real() - side_length_ / 2.0 + spacing() * static_cast<double>(i);
}

double Grid2D::x2(std::size_t j) const {
  return center_.imag() - side_length_ / 2.0 + spacing() * static_cast<double>(j);
}

long Grid2D::wavenumber(std::size_t m) const {
  const auto n = static_cast<long>(resolution_);
  const auto k = static_cast<long>(m);
  return k < n / 2 ? k : k - n;
}

double Grid2D::frequency_step() const { return 2.0 * std::numbers::pi / side_length_; }

double Grid2D::frequency(std::size_t m) const {
  return frequency_step() * static_cast<double>(wavenumber(m));
}

bool Grid2D::in_omega(cplx z, double slack) const {
  const cplx d = z - center_;
  const double r = omega_half_width() + slack;
  return std::abs(d.real()) <= r && std::abs(d.imag()) <= r;
}

bool Grid2D::in_support(cplx z, double slack) const {
  const cplx d = z - center_;
  const double r = support_half_width() + slack;
  return std::abs(d.real()) <= r && std::abs(d.imag()) <= r;
}

std::size_t Grid2D::nearest_i(double x) const {
  const double t = (x - (center_.real() - side_length_ / 2.0)) / spacing();
  const long k = std::lround(t);
  const long n = static_cast<long>(resolution_);
  return static_cast<std::size_t>(((k % n) + n) % n);
}

std::size_t Grid2D::nearest_j(double x) const {
  const double t = (x - (center_.imag() - side_length_ / 2.0)) / spacing();
  const long k = std::lround(t);
  const long n = static_cast<long>(resolution_);
  return static_cast<std::size_t>(((k % n) + n) % n);
}

bool Grid2D::operator==(const Grid2D& other) const {
  return side_length_ == other.side_length_ && resolution_ == other.resolution_ &&
         center_ == other.center_;
}

Grid2D make_grid(double side_length, std::size_t resolution, cplx center) {
  return Grid2D(side_length, resolution, center);
}

void require_same_grid(const Grid2D& a, const Grid2D& b) {
  if (!(a == b)) throw InvalidArgument("fields live on different grids");
}

}  // namespace cgolab
