#pragma once

#include <random>
#include <vector>

#include "cgolab/field.hpp"

namespace cgolab {

struct BumpSpec {
  cplx center{0.0, 0.0};
  double radius = 1.0;
  cplx amplitude{1.0, 0.0};
};

/// amplitude * exp(1 - 1/(1 - r^2)) for r = |z - center|/radius < 1, else 0.
/// Throws SupportViolation unless the closed ball lies in the support box.
Field make_bump(cplx center, double radius, cplx amplitude, const Grid2D& grid);
Field make_bump(const BumpSpec& spec, const Grid2D& grid);

/// Bump with radius in [r_min, r_max] and a center placed uniformly so the
/// ball stays inside the support box; amplitude in [0.5, 1.5].
BumpSpec random_bump_spec(const Grid2D& grid, std::mt19937_64& rng, double r_min = 0.75,
                          double r_max = 1.0);

/// Random trigonometric polynomial: sum of exp(i xi_k . z) over lattice modes
/// with |k| <= max_mode (excluding k = 0) with complex Gaussian coefficients,
/// normalized to unit L2 norm.
Field random_band_limited(const Grid2D& grid, int max_mode, std::mt19937_64& rng);

}  // namespace cgolab
