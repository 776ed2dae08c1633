#pragma once

#include "cgolab/field.hpp"

namespace cgolab {

/// Wirtinger operators in the convention d = d1 - i d2, dbar = d1 + i d2, so
/// that d dbar = Delta. Symbols: dbar -> i(xi1 + i xi2), d -> i(xi1 - i xi2).
enum class Wirtinger { kD, kDbar };

/// How cauchy_inverse treats the zero mode of its input.
enum class ZeroMode {
  /// Drop the mean: the result inverts F - mean(F).
  kDelete,
  /// Add the affine particular solution of the constant part:
  /// mean(F) (z - c)/2 for d^-1 and mean(F) conj(z - c)/2 for dbar^-1,
  /// with c the grid center. The result is no longer periodic.
  kAffine,
};

Field wirtinger(const Field& f, Wirtinger which);

/// Reciprocal Wirtinger symbol (periodic Cauchy transform). Lattice points
/// where the symbol vanishes, including xi = 0, map to zero.
Field cauchy_inverse(const Field& f, Wirtinger which, ZeroMode mode = ZeroMode::kDelete);

/// Periodic part of the Cauchy inverse together with the input mean, i.e.
/// the two pieces of the kAffine result.
struct AffineSplit {
  Field periodic;
  cplx mean;
};
AffineSplit cauchy_inverse_split(const Field& f, Wirtinger which);

/// (z - c)/2 for kD and conj(z - c)/2 for kDbar: the affine correction per
/// unit mean.
Field affine_kernel(const Grid2D& grid, Wirtinger which);

/// Real potential V and vector potential A = A1 + i A2, both supported in
/// the support box, with the spectrally derived quantities the CGO
/// construction needs.
class PotentialSet {
 public:
  /// Validates reality and support of V, A1, A2 and derives curl A and g.
  PotentialSet(Field v, Field a);
  static PotentialSet zero(const Grid2D& grid);
  static PotentialSet electric(Field v);

  const Grid2D& grid() const { return v_.grid(); }
  const Field& v() const { return v_; }
  const Field& a() const { return a_; }
  const Field& curl_a() const { return curl_a_; }
  const Field& div_a() const { return div_a_; }
  /// g = d^-1 conj(A) - dbar^-1 A (periodic inverses).
  const Field& gauge_phase() const { return g_; }
  /// Periodic part of dbar^-1 A.
  const Field& beta() const { return beta_; }
  cplx mean_a() const { return mean_a_; }
  /// V - curl A.
  const Field& effective_potential() const { return veff_; }
  bool magnetic() const { return magnetic_; }

  /// Same A, different V.
  PotentialSet with_v(Field v) const;

 private:
  Field v_;
  Field a_;
  Field curl_a_;
  Field div_a_;
  Field g_;
  Field beta_;
  Field veff_;
  cplx mean_a_;
  bool magnetic_;
};

Field gauge_phase(const PotentialSet& p);

/// Real positive factor e^{+ig} (sign > 0) or e^{-ig} (sign < 0).
Field gauge_factor(const PotentialSet& p, int sign);

/// N_{+-A}[F] = e^{+-ig} F.
Field apply_N(const Field& f, const PotentialSet& p, int sign);

}  // namespace cgolab
