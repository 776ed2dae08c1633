#include "cgolab/recon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cgolab/errors.hpp"
#include "cgolab/parallel.hpp"

namespace cgolab {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_shared_a(const PotentialSet& p1, const PotentialSet& p2) {
  require_same_grid(p1.grid(), p2.grid());
  const Field d = p1.a() - p2.a();
  if (d.max_abs() > 1e-12 * std::max(1.0, p1.a().max_abs())) {
    throw InvalidArgument("both potential sets must share the same vector potential A");
  }
}

// Nonzero samples of F = V1 - V2 with their e^{ig} factor, so that every
// stationary functional is a short sum.
struct Integrand {
  std::vector<std::size_t> index;
  std::vector<cplx> value;  // e^{ig} F
};

Integrand make_integrand(const PotentialSet& p1, const PotentialSet& p2) {
  Integrand out;
  const Field& v1 = p1.v();
  const Field& v2 = p2.v();
  const Field& g = p1.gauge_phase();
  for (std::size_t k = 0; k < v1.size(); ++k) {
    const cplx f = v1[k] - v2[k];
    if (f == cplx(0.0, 0.0)) continue;
    out.index.push_back(k);
    out.value.push_back(p1.magnetic() ? std::exp(kI * g[k]) * f : f);
  }
  return out;
}

ReconPoint evaluate_point(const PotentialSet& p1, const PotentialSet& p2, const Integrand& integrand,
                          const PhaseContext& ctx, const CgoOptions& opts) {
  const Grid2D& g = ctx.grid();
  const std::size_t n = g.resolution();
  ReconPoint pt;
  pt.x = ctx.x();
  const std::size_t node = g.index(g.nearest_i(ctx.x().real()), g.nearest_j(ctx.x().imag()));
  pt.target = p1.v()[node].real() - p2.v()[node].real();
  pt.gauge_factor = p1.magnetic() ? std::exp(kI * p1.gauge_phase()[node]) : cplx(1.0, 0.0);
  pt.target_gauged = pt.gauge_factor * pt.target;
  if (integrand.index.empty()) return pt;

  const CgoSolution s1 = build_cgo(p1, ctx, Sign::kPlus, opts);
  const CgoSolution s2 = build_cgo(p2, ctx, Sign::kMinus, opts);
  const Field w1 = s1.w.full();
  const Field w2 = s2.w.full();

  std::vector<cplx> e1(n), e2(n);
  const double q = 0.25 * ctx.tau();
  for (std::size_t m = 0; m < n; ++m) {
    const double d1 = g.x1(m) - ctx.x().real();
    const double d2 = g.x2(m) - ctx.x().imag();
    e1[m] = std::polar(1.0, q * d1 * d1);
    e2[m] = std::polar(1.0, -q * d2 * d2);
  }
  cplx t1{0.0, 0.0}, tw1{0.0, 0.0}, tw2{0.0, 0.0}, tww{0.0, 0.0};
  for (std::size_t m = 0; m < integrand.index.size(); ++m) {
    const std::size_t k = integrand.index[m];
    const cplx b = e1[k / n] * e2[k % n] * integrand.value[m];
    const cplx a1 = w1[k];
    const cplx a2 = std::conj(w2[k]);
    t1 += b;
    tw1 += b * a1;
    tw2 += b * a2;
    tww += b * a1 * a2;
  }
  const double scale = ctx.tau() / (4.0 * std::numbers::pi) * g.cell_area();
  pt.main = scale * t1;
  pt.t_w1 = scale * tw1;
  pt.t_w2 = scale * tw2;
  pt.t_ww = scale * tww;
  pt.recon = pt.main + pt.t_w1 + pt.t_w2 + pt.t_ww;
  return pt;
}

}  // namespace

std::vector<cplx> support_subgrid(const Grid2D& grid, std::size_t count) {
  if (count < 2) throw InvalidArgument("sub-grid needs at least 2 points per axis");
  const double r = grid.support_half_width();
  const cplx c = grid.center();
  std::vector<cplx> xs;
  xs.reserve(count * count);
  for (std::size_t a = 0; a < count; ++a) {
    const double x1 = -r + 2.0 * r * static_cast<double>(a) / static_cast<double>(count - 1);
    for (std::size_t b = 0; b < count; ++b) {
      const double x2 = -r + 2.0 * r * static_cast<double>(b) / static_cast<double>(count - 1);
      xs.push_back(c + cplx(x1, x2));
    }
  }
  return xs;
}

ReconReport reconstruct_difference(const PotentialSet& p1, const PotentialSet& p2, double tau,
                                   const std::vector<cplx>& xs, const ReconOptions& opts) {
  require_shared_a(p1, p2);
  const Grid2D& g = p1.grid();
  // Admissibility errors are global, not per-point.
  if (tau > max_admissible_tau(g) * (1.0 + 1e-12)) {
    throw NyquistViolation("tau exceeds the admissible bound for this grid");
  }
  const Integrand integrand = make_integrand(p1, p2);

  ReconReport report;
  report.tau = tau;
  report.points.resize(xs.size());
  parallel_for(xs.size(), opts.threads, [&](std::size_t k) {
    try {
      const PhaseContext ctx(g, tau, xs[k]);
      report.points[k] = evaluate_point(p1, p2, integrand, ctx, opts.cgo);
    } catch (const Error& e) {
      ReconPoint pt;
      pt.x = xs[k];
      pt.ok = false;
      pt.error = e.what();
      report.points[k] = pt;
    }
  });

  double num = 0.0, den = 0.0;
  for (const auto& pt : report.points) {
    if (!pt.ok) {
      ++report.failures;
      continue;
    }
    num += std::norm(pt.recon - pt.target_gauged);
    den += std::norm(pt.target_gauged);
    report.remainder_w = std::max({report.remainder_w, std::abs(pt.t_w1), std::abs(pt.t_w2)});
    report.remainder_ww = std::max(report.remainder_ww, std::abs(pt.t_ww));
  }
  report.rel_l2_error = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  return report;
}

RemainderNorms remainder_norms(const PotentialSet& p1, const PotentialSet& p2,
                               const PhaseContext& ctx, const CgoOptions& opts) {
  require_shared_a(p1, p2);
  const Integrand integrand = make_integrand(p1, p2);
  const ReconPoint pt = evaluate_point(p1, p2, integrand, ctx, opts);
  return {std::max(std::abs(pt.t_w1), std::abs(pt.t_w2)), std::abs(pt.t_ww)};
}

std::vector<cplx> unwrap_gauge(const ReconReport& report, const PotentialSet& p) {
  const Grid2D& g = p.grid();
  std::vector<cplx> out;
  out.reserve(report.points.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& pt : report.points) {
    if (!pt.ok) {
      out.emplace_back(nan, nan);
      continue;
    }
    const std::size_t node = g.index(g.nearest_i(pt.x.real()), g.nearest_j(pt.x.imag()));
    const cplx factor = p.magnetic() ? std::exp(kI * p.gauge_phase()[node]) : cplx(1.0, 0.0);
    out.push_back(pt.recon / factor);
  }
  return out;
}

double unwrapped_rel_error(const ReconReport& report, const PotentialSet& p) {
  const auto u = unwrap_gauge(report, p);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (!report.points[k].ok) continue;
    num += std::norm(u[k] - report.points[k].target);
    den += report.points[k].target * report.points[k].target;
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double median_ratio_deviation(const ReconReport& report, const PotentialSet& p, double fraction) {
  const auto u = unwrap_gauge(report, p);
  double tmax = 0.0;
  for (const auto& pt : report.points) tmax = std::max(tmax, std::abs(pt.target));
  std::vector<double> dev;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const auto& pt = report.points[k];
    if (!pt.ok || std::abs(pt.target) < fraction * tmax || pt.target == 0.0) continue;
    dev.push_back(std::abs(u[k] / pt.target - 1.0));
  }
  if (dev.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(dev.begin(), dev.end());
  const std::size_t m = dev.size();
  return m % 2 == 1 ? dev[m / 2] : 0.5 * (dev[m / 2 - 1] + dev[m / 2]);
}

}  // namespace cgolab
