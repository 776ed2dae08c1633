#pragma once

#include <vector>

#include "cgolab/cauchy.hpp"
#include "cgolab/field.hpp"

namespace cgolab {

enum class Sign : int { kPlus = 1, kMinus = -1 };

inline double sign_value(Sign s) { return static_cast<double>(static_cast<int>(s)); }

/// Largest tau whose phase gradient (tau/2)|z - x| stays resolvable over Q:
/// tau * (L sqrt(2)/2) * h <= 2 pi.
double max_admissible_tau(const Grid2D& grid);

/// tau and the localization point x for the quadratic phase
/// psi(z) = (tau/8)(z - x)^2.
class PhaseContext {
 public:
  /// Throws NyquistViolation above max_admissible_tau, InvalidArgument for
  /// tau < 1 or x outside Omega.
  PhaseContext(const Grid2D& grid, double tau, cplx x = {0.0, 0.0});

  const Grid2D& grid() const { return grid_; }
  double tau() const { return tau_; }
  cplx x() const { return x_; }

  cplx psi(cplx z) const;
  /// psi + conj(psi) = (tau/4)((z1 - x1)^2 - (z2 - x2)^2).
  double combined_phase(cplx z) const;

 private:
  Grid2D grid_;
  double tau_;
  cplx x_;
};

struct BukhgeimPhase {
  Field psi;
  Field combined;  // real-valued samples of psi + conj(psi)
};

BukhgeimPhase bukhgeim_phase(const PhaseContext& ctx);

/// exp(+-i (psi + conj psi)) on the grid.
Field phase_exponential(const PhaseContext& ctx, Sign sign);

/// M_{+-tau}[F] = 1_Q exp(+-i (psi + conj psi)) F. On the periodic grid the
/// indicator of Q is the identity.
Field apply_M(const Field& f, const PhaseContext& ctx, Sign sign);

/// sup over the lattice of |(M_{+tau} F)^|, continuum-scaled.
double vdc_sup(const Field& f, const PhaseContext& ctx);

/// exp(i t Box) with Box = d_11 - d_22: symbol exp(-i t (xi1^2 - xi2^2)).
Field propagate_box(const Field& g, double t);

/// T^tau_a[F](x) = (tau / 4 pi) h^2 sum exp(i(psi + conj psi)) e^{ig} F a.
cplx stationary_T(const Field& f, const Field& a, const PhaseContext& ctx, const PotentialSet& p);

/// Weight a = 1.
cplx stationary_T(const Field& f, const PhaseContext& ctx, const PotentialSet& p);

}  // namespace cgolab
