#include "cgolab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cgolab/errors.hpp"

namespace cgolab {

namespace {

double smooth_f(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = smooth_f(t);
  return a / (a + smooth_f(1.0 - t));
}

// 1 on [0, 1], 0 on [2, inf).
double dyadic_phi(double rho) { return smooth_step(2.0 - rho); }

}  // namespace

std::vector<double> axis_frequencies(const Grid2D& grid, bool odd_safe) {
  const std::size_t n = grid.resolution();
  std::vector<double> xi(n);
  for (std::size_t m = 0; m < n; ++m) {
    xi[m] = (odd_safe && grid.is_nyquist(m)) ? 0.0 : grid.frequency(m);
  }
  return xi;
}

Buffer raw_dft(const Field& f) {
  Field p = f.is_physical() ? f : f.to_physical();
  fft_forward(p.data(), p.grid().resolution());
  return std::move(p.values());
}

Field apply_multiplier(const Field& f, const Symbol& m) {
  const Grid2D& g = f.grid();
  const std::size_t n = g.resolution();
  const auto xi = axis_frequencies(g);
  std::vector<cplx> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx v = m(xi[i], xi[j]);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        if (i == 0 && j == 0) {
          v = 0.0;
        } else {
          throw InvalidArgument("symbol is not finite at xi = (" + std::to_string(xi[i]) + ", " +
                                std::to_string(xi[j]) + ")");
        }
      }
      table[i * n + j] = v;
    }
  }
  return apply_symbol(f, [&](std::size_t i, std::size_t j) { return table[i * n + j]; });
}

double homogeneous_norm_from_dft(const Grid2D& g, const cplx* dft, double s) {
  const std::size_t n = g.resolution();
  const auto xi = axis_frequencies(g);
  std::vector<double> xi2(n);
  for (std::size_t m = 0; m < n; ++m) xi2[m] = xi[m] * xi[m];
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == 0 && j == 0) continue;
      const double r2 = xi2[i] + xi2[j];
      acc += std::pow(r2, s) * std::norm(dft[i * n + j]);
    }
  }
  // (1/L^2) sum |h^2 DFT|^2 = h^2/N^2 sum |DFT|^2.
  const double nn = static_cast<double>(n);
  return std::sqrt(acc * g.cell_area()) / nn;
}

double sobolev_norm(const Field& f, SobolevIndex idx) {
  const Grid2D& g = f.grid();
  const Buffer dft = raw_dft(f);
  if (idx.homogeneous) return homogeneous_norm_from_dft(g, dft.data(), idx.s);
  const std::size_t n = g.resolution();
  const auto xi = axis_frequencies(g);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double w = std::pow(1.0 + xi[i] * xi[i] + xi[j] * xi[j], idx.s);
      acc += w * std::norm(dft[i * n + j]);
    }
  }
  return std::sqrt(acc * g.cell_area()) / static_cast<double>(n);
}

double dyadic_theta(double rho) { return dyadic_phi(rho) - dyadic_phi(2.0 * rho); }

std::pair<int, int> active_shells(const Grid2D& g) {
  const double rmin = g.frequency_step();
  const double rmax = std::sqrt(2.0) * std::abs(g.min_frequency());
  const int lo = static_cast<int>(std::floor(std::log2(rmin))) - 1;
  const int hi = static_cast<int>(std::ceil(std::log2(rmax))) + 1;
  return {lo, hi};
}

Field littlewood_paley_project(const Field& f, int j) {
  const Grid2D& g = f.grid();
  const auto xi = axis_frequencies(g);
  const double scale = std::ldexp(1.0, -j);
  return apply_symbol(f, [&](std::size_t a, std::size_t b) {
    return cplx(dyadic_theta(scale * std::hypot(xi[a], xi[b])), 0.0);
  });
}

std::vector<std::pair<int, double>> shell_norms(const Field& f) {
  const Grid2D& g = f.grid();
  const std::size_t n = g.resolution();
  const Buffer dft = raw_dft(f);
  const auto xi = axis_frequencies(g);
  const auto [lo, hi] = active_shells(g);
  std::vector<double> acc(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == 0 && b == 0) continue;
      const double r = std::hypot(xi[a], xi[b]);
      const double p = std::norm(dft[a * n + b]);
      // Only shells with 2^{j-1} < r < 2^{j+1} can be nonzero.
      const int jc = static_cast<int>(std::floor(std::log2(r)));
      for (int j = std::max(lo, jc - 1); j <= std::min(hi, jc + 2); ++j) {
        const double t = dyadic_theta(std::ldexp(r, -j));
        if (t != 0.0) acc[static_cast<std::size_t>(j - lo)] += t * t * p;
      }
    }
  }
  std::vector<std::pair<int, double>> out;
  const double nn = static_cast<double>(n);
  for (int j = lo; j <= hi; ++j) {
    out.emplace_back(j, std::sqrt(acc[static_cast<std::size_t>(j - lo)] * g.cell_area()) / nn);
  }
  return out;
}

double besov_norm(const Field& f, BesovKind kind) {
  double out = 0.0;
  for (const auto& [j, norm] : shell_norms(f)) {
    if (kind == BesovKind::kMinusOneTwoInf) {
      out = std::max(out, std::ldexp(norm, -j));
    } else {
      out += std::ldexp(norm, j);
    }
  }
  return out;
}

}  // namespace cgolab
