#include "cgolab/harness/bump.hpp"

#include <cmath>
#include <sstream>

#include "cgolab/errors.hpp"
#include "cgolab/fft.hpp"

namespace cgolab {

Field make_bump(cplx center, double radius, cplx amplitude, const Grid2D& grid) {
  if (!(radius > 0.0)) throw InvalidArgument("bump radius must be positive");
  const cplx d = center - grid.center();
  const double box = grid.support_half_width() * (1.0 + 1e-12);
  if (std::abs(d.real()) + radius > box || std::abs(d.imag()) + radius > box) {
    std::ostringstream msg;
    msg << "bump at (" << center.real() << ", " << center.imag() << ") with radius " << radius
        << " leaves the support box of half-width " << grid.support_half_width();
    throw SupportViolation(msg.str());
  }
  return Field::from_function(grid, [&](cplx z) -> cplx {
    const double r = std::abs(z - center) / radius;
    if (r >= 1.0) return 0.0;
    return amplitude * std::exp(1.0 - 1.0 / (1.0 - r * r));
  });
}

Field make_bump(const BumpSpec& spec, const Grid2D& grid) {
  return make_bump(spec.center, spec.radius, spec.amplitude, grid);
}

BumpSpec random_bump_spec(const Grid2D& grid, std::mt19937_64& rng, double r_min, double r_max) {
  const double box = grid.support_half_width();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  BumpSpec spec;
  spec.radius = box * (r_min + (r_max - r_min) * unit(rng));
  const double slack = box - spec.radius;
  spec.center = grid.center() + cplx(slack * (2.0 * unit(rng) - 1.0), slack * (2.0 * unit(rng) - 1.0));
  spec.amplitude = 0.5 + unit(rng);
  return spec;
}

Field random_band_limited(const Grid2D& grid, int max_mode, std::mt19937_64& rng) {
  const std::size_t n = grid.resolution();
  std::normal_distribution<double> nd;
  const int nn = static_cast<int>(n);
  Field out(grid);
  for (int a = -max_mode; a <= max_mode; ++a) {
    for (int b = -max_mode; b <= max_mode; ++b) {
      if (a * a + b * b > max_mode * max_mode || (a == 0 && b == 0)) continue;
      const double re = nd(rng);
      const double im = nd(rng);
      out(static_cast<std::size_t>((a + nn) % nn), static_cast<std::size_t>((b + nn) % nn)) =
          cplx(re, im);
    }
  }
  // The bins are raw DFT slots; the inverse DFT gives the trigonometric sum.
  fft_inverse(out.data(), n);
  const double norm = out.l2_norm();
  if (norm > 0.0) out *= 1.0 / norm;
  return out;
}

}  // namespace cgolab
