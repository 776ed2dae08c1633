#include "cgolab/cgo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cgolab/errors.hpp"
#include "cgolab/spectral.hpp"

namespace cgolab {

namespace {

constexpr cplx kI{0.0, 1.0};

double smooth_f(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = smooth_f(t);
  return a / (a + smooth_f(1.0 - t));
}

double dft_norm_combined(const Grid2D& g, const Buffer& periodic_dft, cplx affine,
                         const Buffer& kernel_dft, double s, Buffer& scratch) {
  if (affine == cplx(0.0, 0.0)) return homogeneous_norm_from_dft(g, periodic_dft.data(), s);
  scratch.resize(periodic_dft.size());
  for (std::size_t k = 0; k < scratch.size(); ++k) {
    scratch[k] = periodic_dft[k] + affine * kernel_dft[k];
  }
  return homogeneous_norm_from_dft(g, scratch.data(), s);
}

}  // namespace

std::vector<double> window_axis(const Grid2D& grid, bool second_axis) {
  const std::size_t n = grid.resolution();
  const double inner = 0.3125 * grid.side_length();
  const double outer = 0.4875 * grid.side_length();
  const double c = second_axis ? grid.center().imag() : grid.center().real();
  std::vector<double> w(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double x = (second_axis ? grid.x2(m) : grid.x1(m)) - c;
    w[m] = 1.0 - smooth_step((std::abs(x) - inner) / (outer - inner));
  }
  return w;
}

Field smooth_window(const Grid2D& grid) {
  const auto w1 = window_axis(grid, false);
  const auto w2 = window_axis(grid, true);
  const std::size_t n = grid.resolution();
  Field out(grid);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = w1[i] * w2[j];
  }
  return out;
}

Field AffineField::full() const {
  Field out(periodic);
  if (affine == cplx(0.0, 0.0)) return out;
  const Grid2D& g = out.grid();
  const std::size_t n = g.resolution();
  const cplx c = g.center();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) += 0.5 * affine * std::conj(g.point(i, j) - c);
  }
  return out;
}

ConjugatedLaplacian::ConjugatedLaplacian(const PhaseContext& ctx, const PotentialSet& p, Sign sign)
    : ctx_(ctx), sign_(sign) {
  const Grid2D& g = ctx.grid();
  require_same_grid(g, p.grid());
  const std::size_t n = g.resolution();
  const double s = sign_value(sign);
  const double q = 0.25 * ctx.tau();
  e1_.resize(n);
  e2_.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double d1 = g.x1(m) - ctx.x().real();
    const double d2 = g.x2(m) - ctx.x().imag();
    e1_[m] = std::polar(1.0, s * q * d1 * d1);
    e2_[m] = std::polar(1.0, -s * q * d2 * d2);
  }
  w1_ = window_axis(g, false);
  w2_ = window_axis(g, true);
  if (p.magnetic()) {
    const Field& gp = p.gauge_phase();
    gauge_.resize(gp.size());
    // g is purely imaginary, so e^{ig} = e^{-Im g}.
    for (std::size_t k = 0; k < gp.size(); ++k) gauge_[k] = std::exp(-gp[k].imag());
  }
  xi1_ = axis_frequencies(g, true);
  xi2_ = xi1_;
}

AffineField ConjugatedLaplacian::apply(const Field& f, Buffer* spectrum) const {
  const Grid2D& g = ctx_.grid();
  require_same_grid(g, f.grid());
  const std::size_t n = g.resolution();
  const double inv_nn = 1.0 / static_cast<double>(n * n);
  const cplx c = g.center();
  const bool magnetic = !gauge_.empty();

  Field buf = f.is_physical() ? f : f.to_physical();
  cplx mean_a{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i * n + j;
      cplx v = buf[k] * e1_[i] * e2_[j];
      if (magnetic) v *= gauge_[k];
      buf[k] = v;
      mean_a += v;
    }
  }
  mean_a *= inv_nn;

  // d^-1 with affine completion.
  fft_forward(buf.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const cplx sym = kI * cplx(xi1_[i], -xi2_[j]);
      buf(i, j) = sym == cplx(0.0, 0.0) ? cplx(0.0, 0.0) : buf(i, j) * inv_nn / sym;
    }
  }
  fft_inverse(buf.data(), n);

  cplx mean_b{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i * n + j;
      cplx v = buf[k] + 0.5 * mean_a * (g.point(i, j) - c);
      v *= w1_[i] * w2_[j] * std::conj(e1_[i] * e2_[j]);
      if (magnetic) v /= gauge_[k];
      buf[k] = v;
      mean_b += v;
    }
  }
  mean_b *= inv_nn;

  // dbar^-1, periodic part; the mean goes into the affine coefficient.
  fft_forward(buf.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const cplx sym = kI * cplx(xi1_[i], xi2_[j]);
      buf(i, j) = sym == cplx(0.0, 0.0) ? cplx(0.0, 0.0) : buf(i, j) / sym;
    }
  }
  if (spectrum != nullptr) *spectrum = buf.values();
  fft_inverse(buf.data(), n);
  buf *= inv_nn;
  return {std::move(buf), mean_b};
}

Field conjugated_laplacian_inverse(const Field& f, const PhaseContext& ctx, const PotentialSet& p,
                                   Sign sign) {
  return ConjugatedLaplacian(ctx, p, sign).apply(f).full();
}

Field apply_S(const Field& f, const PhaseContext& ctx, const PotentialSet& p, Sign sign) {
  return conjugated_laplacian_inverse(f * p.effective_potential(), ctx, p, sign);
}

CgoSolution build_cgo(const PotentialSet& p, const PhaseContext& ctx, Sign sign,
                      const CgoOptions& opts) {
  if (!(opts.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (!(opts.s > 0.0 && opts.s < 1.0)) throw InvalidArgument("s must lie in (0, 1)");
  const Grid2D& g = ctx.grid();
  CgoSolution sol{ctx, sign, AffineField{Field(g), {0.0, 0.0}}, opts.s, 0, 0.0, 0.0, 0.0, {}};
  const Field& veff = p.effective_potential();
  if (veff.max_abs() == 0.0) {
    sol.iterations = 1;
    if (opts.compute_residual) sol.residual_pde = pde_residual(sol, p);
    return sol;
  }

  const ConjugatedLaplacian lap(ctx, p, sign);
  Buffer kernel_dft = raw_dft(affine_kernel(g, Wirtinger::kDbar));
  Buffer scratch;

  Buffer w0_dft;
  const AffineField w0 = lap.apply(veff, &w0_dft);
  AffineField w = w0;
  Buffer w_dft = w0_dft;
  double w_norm = dft_norm_combined(g, w_dft, w.affine, kernel_dft, opts.s, scratch);

  Buffer s_dft;
  Buffer diff_dft(w_dft.size());
  double prev_step = -1.0;
  int non_contracting = 0;
  for (std::size_t it = 1;; ++it) {
    AffineField next = lap.apply(veff * w.full(), &s_dft);
    next.periodic += w0.periodic;
    next.affine += w0.affine;
    for (std::size_t k = 0; k < s_dft.size(); ++k) {
      s_dft[k] += w0_dft[k];
      diff_dft[k] = s_dft[k] - w_dft[k];
    }
    const double step =
        dft_norm_combined(g, diff_dft, next.affine - w.affine, kernel_dft, opts.s, scratch);
    sol.steps.push_back(step);
    if (prev_step > 0.0) {
      const double ratio = step / prev_step;
      sol.contraction_estimate = std::max(sol.contraction_estimate, ratio);
      non_contracting = ratio >= 1.0 ? non_contracting + 1 : 0;
    }
    const double rel = step / std::max(1.0, w_norm);
    w = std::move(next);
    std::swap(w_dft, s_dft);
    w_norm = dft_norm_combined(g, w_dft, w.affine, kernel_dft, opts.s, scratch);
    sol.iterations = it;
    sol.residual_fp = rel;
    if (!std::isfinite(step) || non_contracting >= 3) {
      std::ostringstream msg;
      msg << "fixed-point map does not contract at tau = " << ctx.tau() << " (step ratio "
          << (prev_step > 0.0 ? step / prev_step : 0.0) << ")";
      throw NoContraction(msg.str());
    }
    if (rel <= opts.tol) break;
    if (it >= opts.max_iter) {
      std::ostringstream msg;
      msg << "no convergence after " << it << " iterations (relative step " << rel << ")";
      throw MaxIterations(msg.str());
    }
    prev_step = step;
  }
  sol.w = std::move(w);
  if (opts.compute_residual) sol.residual_pde = pde_residual(sol, p);
  return sol;
}

Field neumann_partial_sum(const PotentialSet& p, const PhaseContext& ctx, Sign sign, std::size_t K) {
  const ConjugatedLaplacian lap(ctx, p, sign);
  const Field& veff = p.effective_potential();
  Field term = lap.apply(veff).full();
  Field sum = term;
  for (std::size_t k = 1; k <= K; ++k) {
    term = lap.apply(veff * term).full();
    sum += term;
  }
  return sum;
}

Field conjugated_residual_field(const AffineField& w, bool one, const PhaseContext& ctx,
                                const PotentialSet& p, Sign sign, bool subtract_potential) {
  const Grid2D& g = ctx.grid();
  const std::size_t n = g.resolution();
  const double s = sign_value(sign);
  const Field wfull = w.full();

  Field dbar_w = wirtinger(w.periodic, Wirtinger::kDbar);
  for (auto& v : dbar_w.values()) v += w.affine;  // dbar(conj(z)/2) = 1
  const Field d_w = wirtinger(w.periodic, Wirtinger::kD);  // d(conj(z)) = 0
  const auto xi = axis_frequencies(g);
  const Field lap_w = apply_symbol(w.periodic, [&](std::size_t i, std::size_t j) {
    return cplx(-(xi[i] * xi[i] + xi[j] * xi[j]), 0.0);
  });

  // Y = i X (k + w) + dbar w with X = A - dbar beta - mean(A), which is the
  // remainder of dbar of the full gauge potential.
  Field x_field(g);
  Field dx(g);
  Field d_beta(g);
  const cplx a_mean = p.mean_a();
  if (p.magnetic()) {
    const Field dbar_beta = wirtinger(p.beta(), Wirtinger::kDbar);
    for (std::size_t k = 0; k < x_field.size(); ++k) {
      x_field[k] = p.a()[k] - dbar_beta[k] - a_mean;
    }
    dx = wirtinger(x_field, Wirtinger::kD);
    d_beta = wirtinger(p.beta(), Wirtinger::kD);
  }

  const double kappa = one ? 1.0 : 0.0;
  Field r(g);
  const Field& veff = p.effective_potential();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i * n + j;
      const cplx z = g.point(i, j);
      const cplx u = kappa + wfull[k];
      const cplx y = kI * x_field[k] * u + dbar_w[k];
      const cplx dy = kI * dx[k] * u + kI * x_field[k] * d_w[k] + lap_w[k];
      const cplx coef = kI * s * 0.5 * ctx.tau() * (z - ctx.x()) - kI * d_beta[k] -
                        kI * std::conj(a_mean) + kI * std::conj(p.a()[k]);
      cplx v = coef * y + dy;
      if (subtract_potential) v -= veff[k] * u;
      r[k] = v;
    }
  }
  return r;
}

double pde_residual(const CgoSolution& sol, const PotentialSet& p) {
  const Field r = conjugated_residual_field(sol.w, true, sol.ctx, p, sol.sign, true);
  const Field rhs = p.effective_potential() * (sol.w.full() + Field::constant(p.grid(), 1.0));
  const double box = p.grid().support_half_width();
  const double num = l2_norm_on_box(r, box);
  const double den = l2_norm_on_box(rhs, box);
  return den > 0.0 ? num / den : num;
}

Field cgo_solution_field(const CgoSolution& sol, const PotentialSet& p) {
  const Grid2D& g = sol.ctx.grid();
  const double s = sign_value(sol.sign);
  const Field wfull = sol.w.full();
  const cplx a_mean = p.mean_a();
  const cplx c = g.center();
  Field u(g);
  const std::size_t n = g.resolution();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i * n + j;
      const cplx z = g.point(i, j);
      const cplx beta = p.beta()[k] + (std::conj(a_mean) * (z - c)).real();
      u[k] = std::exp(kI * s * sol.ctx.psi(z) - kI * beta) * (1.0 + wfull[k]);
    }
  }
  return u;
}

}  // namespace cgolab
