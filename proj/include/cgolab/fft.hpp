#pragma once

#include <cstddef>

#include "cgolab/grid.hpp"

namespace cgolab {

enum class PlanRigor { kEstimate, kMeasure };

/// Planner effort used for plans created after the call. Existing plans are
/// kept. Defaults to kMeasure.
void set_plan_rigor(PlanRigor rigor);
PlanRigor plan_rigor();

/// Unnormalized in-place 2D DFT of an n x n row-major array:
/// X[k] = sum_m x[m] exp(-2 pi i k.m / n). The buffer must be 64-byte aligned.
void fft_forward(cplx* data, std::size_t n);

/// Unnormalized inverse (positive exponent); fft_inverse(fft_forward(x)) = n^2 x.
void fft_inverse(cplx* data, std::size_t n);

}  // namespace cgolab
