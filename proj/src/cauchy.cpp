#include "cgolab/cauchy.hpp"

#include <cmath>

#include "cgolab/errors.hpp"
#include "cgolab/spectral.hpp"

namespace cgolab {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx wirtinger_symbol(double xi1, double xi2, Wirtinger which) {
  return which == Wirtinger::kDbar ? kI * cplx(xi1, xi2) : kI * cplx(xi1, -xi2);
}

void check_real(const Field& f, const char* what) {
  const double scale = std::max(1.0, f.max_abs());
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (std::abs(f[k].imag()) > 1e-12 * scale) {
      throw InvalidArgument(std::string(what) + " must be real");
    }
  }
}

void check_support(const Field& f, const char* what) {
  const Grid2D& g = f.grid();
  const double tol = 1e-12 * f.max_abs();
  const std::size_t n = g.resolution();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!g.in_support(g.point(i, j), 1e-9 * g.spacing()) && std::abs(f(i, j)) > tol) {
        throw SupportViolation(std::string(what) + " is not supported in the support box");
      }
    }
  }
}

}  // namespace

Field wirtinger(const Field& f, Wirtinger which) {
  const auto xi = axis_frequencies(f.grid(), true);
  return apply_symbol(f, [&](std::size_t i, std::size_t j) {
    return wirtinger_symbol(xi[i], xi[j], which);
  });
}

Field affine_kernel(const Grid2D& grid, Wirtinger which) {
  const cplx c = grid.center();
  return Field::from_function(grid, [&](cplx z) {
    return which == Wirtinger::kD ? 0.5 * (z - c) : 0.5 * std::conj(z - c);
  });
}

AffineSplit cauchy_inverse_split(const Field& f, Wirtinger which) {
  const auto xi = axis_frequencies(f.grid(), true);
  Field periodic = apply_symbol(f, [&](std::size_t i, std::size_t j) {
    const cplx s = wirtinger_symbol(xi[i], xi[j], which);
    return s == cplx(0.0, 0.0) ? cplx(0.0, 0.0) : 1.0 / s;
  });
  return {std::move(periodic), f.mean()};
}

Field cauchy_inverse(const Field& f, Wirtinger which, ZeroMode mode) {
  AffineSplit split = cauchy_inverse_split(f, which);
  if (mode == ZeroMode::kDelete || split.mean == cplx(0.0, 0.0)) return std::move(split.periodic);
  Field k = affine_kernel(f.grid(), which);
  k *= split.mean;
  split.periodic += k;
  return std::move(split.periodic);
}

PotentialSet::PotentialSet(Field v, Field a)
    : v_(std::move(v)),
      a_(std::move(a)),
      curl_a_(v_.grid()),
      div_a_(v_.grid()),
      g_(v_.grid()),
      beta_(v_.grid()),
      veff_(v_.grid()),
      mean_a_(0.0, 0.0),
      magnetic_(false) {
  require_same_grid(v_.grid(), a_.grid());
  if (!v_.is_physical() || !a_.is_physical()) {
    throw InvalidArgument("potentials must be physical fields");
  }
  check_real(v_, "V");
  check_support(v_, "V");
  check_support(a_, "A");
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] = v_[k].real();

  magnetic_ = a_.max_abs() > 0.0;
  if (magnetic_) {
    // Derived quantities come from A without its Nyquist rows and columns:
    // the first derivatives and the full Laplacian symbol disagree there, and
    // on the remaining band -Delta g = 2i curl A holds bin by bin.
    const Grid2D& g = a_.grid();
    const Field band = apply_symbol(a_, [&](std::size_t i, std::size_t j) {
      return g.is_nyquist(i) || g.is_nyquist(j) ? 0.0 : 1.0;
    });
    // d A = (div A) + i (curl A) for A = A1 + i A2.
    const Field da = wirtinger(band, Wirtinger::kD);
    for (std::size_t k = 0; k < da.size(); ++k) {
      curl_a_[k] = da[k].imag();
      div_a_[k] = da[k].real();
    }
    beta_ = cauchy_inverse(band, Wirtinger::kDbar);
    g_ = cauchy_inverse(band.conj(), Wirtinger::kD) - beta_;
    mean_a_ = a_.mean();
  }
  veff_ = v_ - curl_a_;
}

PotentialSet PotentialSet::zero(const Grid2D& grid) { return PotentialSet(Field(grid), Field(grid)); }

PotentialSet PotentialSet::electric(Field v) {
  Field a(v.grid());
  return PotentialSet(std::move(v), std::move(a));
}

PotentialSet PotentialSet::with_v(Field v) const {
  require_same_grid(v.grid(), grid());
  check_real(v, "V");
  check_support(v, "V");
  PotentialSet out(*this);
  out.v_ = std::move(v);
  for (std::size_t k = 0; k < out.v_.size(); ++k) out.v_[k] = out.v_[k].real();
  out.veff_ = out.v_ - out.curl_a_;
  return out;
}

Field gauge_phase(const PotentialSet& p) { return p.gauge_phase(); }

Field gauge_factor(const PotentialSet& p, int sign) {
  Field out(p.grid());
  const Field& g = p.gauge_phase();
  const double s = sign >= 0 ? 1.0 : -1.0;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::exp(kI * s * g[k]);
  return out;
}

Field apply_N(const Field& f, const PotentialSet& p, int sign) {
  require_same_grid(f.grid(), p.grid());
  if (!p.magnetic()) return f;
  return f * gauge_factor(p, sign);
}

}  // namespace cgolab
