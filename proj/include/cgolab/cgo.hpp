#pragma once

#include <cstddef>
#include <vector>

#include "cgolab/cauchy.hpp"
#include "cgolab/phase.hpp"

namespace cgolab {

/// Smooth cutoff standing in for the indicator of Q inside the conjugated
/// Laplacian: 1 on |x_i - c_i| <= 0.3125 L, 0 from 0.4875 L on, C-infinity
/// in between. Keeps the torus seam out of the outer multiplier.
std::vector<double> window_axis(const Grid2D& grid, bool second_axis);
Field smooth_window(const Grid2D& grid);

/// A field of the form periodic + affine * conj(z - c)/2, the shape of
/// everything produced by the dbar^-1 step of the chain.
struct AffineField {
  Field periodic;
  cplx affine{0.0, 0.0};

  Field full() const;
};

/// Precomputed pieces of
///   Delta_psi^-1 F = dbar^-1 [ W e^{-i s phi} e^{-ig} d^-1 [ e^{i s phi} e^{ig} F ] ]
/// for one (tau, x, sign) and potential set, with phi = psi + conj(psi),
/// s = +-1 and both inverses completed by their affine zero-mode part.
class ConjugatedLaplacian {
 public:
  ConjugatedLaplacian(const PhaseContext& ctx, const PotentialSet& p, Sign sign);

  /// On return `spectrum` (if non-null) holds the raw DFT of the periodic part.
  AffineField apply(const Field& f, Buffer* spectrum = nullptr) const;

  const PhaseContext& context() const { return ctx_; }
  Sign sign() const { return sign_; }

 private:
  PhaseContext ctx_;
  Sign sign_;
  std::vector<cplx> e1_, e2_;      // per-axis factors of exp(i s phi)
  std::vector<double> w1_, w2_;    // per-axis window
  std::vector<double> gauge_;      // e^{ig} (real), empty when A = 0
  std::vector<double> xi1_, xi2_;  // Nyquist-safe frequencies
};

Field conjugated_laplacian_inverse(const Field& f, const PhaseContext& ctx, const PotentialSet& p,
                                   Sign sign = Sign::kPlus);

/// S[F] = Delta_psi^-1 [(V - curl A) F].
Field apply_S(const Field& f, const PhaseContext& ctx, const PotentialSet& p,
              Sign sign = Sign::kPlus);

struct CgoOptions {
  double s = 0.5;
  double tol = 1e-10;
  std::size_t max_iter = 200;
  bool compute_residual = true;
};

/// u = exp(i sign psi - i beta) (1 + w), beta = dbar^-1 A completed by
/// Re(conj(mean A)(z - c)).
struct CgoSolution {
  PhaseContext ctx;
  Sign sign;
  AffineField w;
  double s = 0.5;
  std::size_t iterations = 0;
  double residual_fp = 0.0;
  double residual_pde = 0.0;
  double contraction_estimate = 0.0;
  /// Step norms ||w_{k+1} - w_k||_{H^s} in iteration order.
  std::vector<double> steps;
};

/// Fixed-point iteration w_{k+1} = w_0 + S[w_k], w_0 = Delta_psi^-1[V - curl A].
/// Throws NoContraction after three consecutive non-decreasing steps and
/// MaxIterations when max_iter is exhausted.
CgoSolution build_cgo(const PotentialSet& p, const PhaseContext& ctx, Sign sign,
                      const CgoOptions& opts = {});

/// sum_{k <= K} S^k [w_0], for cross-checking the fixed point.
Field neumann_partial_sum(const PotentialSet& p, const PhaseContext& ctx, Sign sign, std::size_t K);

/// The factored operator (d + i conj A)(dbar + i A) applied to u/E with the
/// envelope E = exp(i sign psi - i beta) divided out analytically:
/// returns r with (d + i conj A)(dbar + i A) u - (V - curl A) u = E r.
/// `one` adds the constant 1 to the field (u = E(1 + w) vs u = E w).
Field conjugated_residual_field(const AffineField& w, bool one, const PhaseContext& ctx,
                                const PotentialSet& p, Sign sign, bool subtract_potential);

/// ||r||_{L2(support box)} / ||(V - curl A)(1 + w)||_{L2(support box)}, or
/// the absolute norm when the denominator vanishes.
double pde_residual(const CgoSolution& sol, const PotentialSet& p);

/// The full solution u on the grid.
Field cgo_solution_field(const CgoSolution& sol, const PotentialSet& p);

}  // namespace cgolab
