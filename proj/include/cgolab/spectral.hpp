#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "cgolab/fft.hpp"
#include "cgolab/field.hpp"

namespace cgolab {

/// Fourier symbol m(xi1, xi2).
using Symbol = std::function<cplx(double, double)>;

/// Angular lattice frequencies along one axis in FFT order. With
/// `odd_safe` the Nyquist entry is zeroed, which is what odd symbols
/// (first derivatives) need to map real fields to real fields.
std::vector<double> axis_frequencies(const Grid2D& grid, bool odd_safe = false);

/// Raw unnormalized DFT of the physical samples (phase-free).
Buffer raw_dft(const Field& f);

/// Applies the lattice symbol table m(i, j) to F and returns a physical
/// field. No zero-mode or finiteness handling; callers supply finite tables.
template <class Fn>
Field apply_symbol(const Field& f, Fn&& m) {
  const Grid2D& g = f.grid();
  const std::size_t n = g.resolution();
  Field out = f.is_physical() ? f : f.to_physical();
  fft_forward(out.data(), n);
  const double inv = 1.0 / static_cast<double>(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) *= inv * m(i, j);
  }
  fft_inverse(out.data(), n);
  return out;
}

/// Inverse transform of m(xi) F^(xi). A non-finite m(0) is replaced by 0
/// (zero-mode policy); a non-finite value anywhere else throws.
Field apply_multiplier(const Field& f, const Symbol& m);

struct SobolevIndex {
  double s = 0.0;
  bool homogeneous = true;
};

/// ||(-Delta)^{s/2} F||_2 (xi = 0 dropped) or ||(I - Delta)^{s/2} F||_2,
/// continuum-scaled.
double sobolev_norm(const Field& f, SobolevIndex idx);

/// Same as sobolev_norm for a homogeneous index, evaluated from a raw DFT.
double homogeneous_norm_from_dft(const Grid2D& grid, const cplx* dft, double s);

/// Dyadic bump theta with supp in (1/2, 2) and sum_j theta(2^-j r) = 1 for r > 0.
double dyadic_theta(double rho);

/// Shell indices j whose annulus (2^{j-1}, 2^{j+1}) meets the nonzero lattice.
std::pair<int, int> active_shells(const Grid2D& grid);

Field littlewood_paley_project(const Field& f, int j);

/// ||P_j F||_2 for every active shell, ordered by j.
std::vector<std::pair<int, double>> shell_norms(const Field& f);

enum class BesovKind {
  kMinusOneTwoInf,  // sup_j 2^{-j} ||P_j F||_2
  kOneTwoOne,       // sum_j 2^{j} ||P_j F||_2
};

double besov_norm(const Field& f, BesovKind kind);

}  // namespace cgolab
