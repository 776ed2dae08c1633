#include "cgolab/phase.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cgolab/errors.hpp"
#include "cgolab/spectral.hpp"

namespace cgolab {

namespace {

// Per-axis factors of exp(i s phi): phi separates into a(x1) - b(x2).
void axis_phase(const PhaseContext& ctx, double s, std::vector<cplx>& e1, std::vector<cplx>& e2) {
  const Grid2D& g = ctx.grid();
  const std::size_t n = g.resolution();
  e1.resize(n);
  e2.resize(n);
  const double q = 0.25 * ctx.tau();
  for (std::size_t m = 0; m < n; ++m) {
    const double d1 = g.x1(m) - ctx.x().real();
    const double d2 = g.x2(m) - ctx.x().imag();
    e1[m] = std::polar(1.0, s * q * d1 * d1);
    e2[m] = std::polar(1.0, -s * q * d2 * d2);
  }
}

}  // namespace

double max_admissible_tau(const Grid2D& grid) {
  return 2.0 * std::numbers::pi / (grid.spacing() * grid.side_length() * std::numbers::sqrt2 / 2.0);
}

PhaseContext::PhaseContext(const Grid2D& grid, double tau, cplx x) : grid_(grid), tau_(tau), x_(x) {
  if (!(tau >= 1.0) || !std::isfinite(tau)) {
    throw InvalidArgument("tau must be >= 1");
  }
  const double cap = max_admissible_tau(grid);
  if (tau > cap * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "tau = " << tau << " exceeds the admissible bound " << cap << " for N = "
        << grid.resolution();
    throw NyquistViolation(msg.str());
  }
  if (!grid.in_omega(x)) throw InvalidArgument("evaluation point x must lie in Omega");
}

cplx PhaseContext::psi(cplx z) const {
  const cplx d = z - x_;
  return 0.125 * tau_ * d * d;
}

double PhaseContext::combined_phase(cplx z) const {
  const cplx d = z - x_;
  return 0.25 * tau_ * (d.real() * d.real() - d.imag() * d.imag());
}

BukhgeimPhase bukhgeim_phase(const PhaseContext& ctx) {
  const Grid2D& g = ctx.grid();
  Field psi = Field::from_function(g, [&](cplx z) { return ctx.psi(z); });
  Field combined = Field::from_function(g, [&](cplx z) { return cplx(ctx.combined_phase(z), 0.0); });
  return {std::move(psi), std::move(combined)};
}

Field phase_exponential(const PhaseContext& ctx, Sign sign) {
  std::vector<cplx> e1, e2;
  axis_phase(ctx, sign_value(sign), e1, e2);
  const std::size_t n = ctx.grid().resolution();
  Field out(ctx.grid());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = e1[i] * e2[j];
  }
  return out;
}

Field apply_M(const Field& f, const PhaseContext& ctx, Sign sign) {
  require_same_grid(f.grid(), ctx.grid());
  Field src = f.is_physical() ? f : f.to_physical();
  std::vector<cplx> e1, e2;
  axis_phase(ctx, sign_value(sign), e1, e2);
  const std::size_t n = ctx.grid().resolution();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) src(i, j) *= e1[i] * e2[j];
  }
  return src;
}

double vdc_sup(const Field& f, const PhaseContext& ctx) {
  const Field m = apply_M(f, ctx, Sign::kPlus);
  const Buffer dft = raw_dft(m);
  double sup = 0.0;
  for (const auto& v : dft) sup = std::max(sup, std::abs(v));
  return sup * ctx.grid().cell_area();
}

Field propagate_box(const Field& g, double t) {
  const auto xi = axis_frequencies(g.grid());
  const std::size_t n = g.grid().resolution();
  std::vector<cplx> p1(n), p2(n);
  for (std::size_t m = 0; m < n; ++m) {
    p1[m] = std::polar(1.0, -t * xi[m] * xi[m]);
    p2[m] = std::polar(1.0, t * xi[m] * xi[m]);
  }
  return apply_symbol(g, [&](std::size_t i, std::size_t j) { return p1[i] * p2[j]; });
}

cplx stationary_T(const Field& f, const Field& a, const PhaseContext& ctx, const PotentialSet& p) {
  const Grid2D& g = ctx.grid();
  require_same_grid(f.grid(), g);
  require_same_grid(a.grid(), g);
  require_same_grid(p.grid(), g);
  std::vector<cplx> e1, e2;
  axis_phase(ctx, 1.0, e1, e2);
  const std::size_t n = g.resolution();
  const Field& gp = p.gauge_phase();
  const bool magnetic = p.magnetic();
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    cplx row{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i * n + j;
      cplx v = e2[j] * f[k] * a[k];
      if (magnetic) v *= std::exp(cplx(0.0, 1.0) * gp[k]);
      row += v;
    }
    acc += e1[i] * row;
  }
  return ctx.tau() / (4.0 * std::numbers::pi) * g.cell_area() * acc;
}

cplx stationary_T(const Field& f, const PhaseContext& ctx, const PotentialSet& p) {
  return stationary_T(f, Field::constant(f.grid(), 1.0), ctx, p);
}

}  // namespace cgolab
