#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cgolab/cgo.hpp"

namespace cgolab {

/// Samples on the discrete boundary of Omega: the 2N nodes of the square
/// with index range [N/4, 3N/4], counterclockwise from the corner
/// (N/4, N/4).
class BoundaryTrace {
 public:
  explicit BoundaryTrace(const Grid2D& grid);
  BoundaryTrace(const Grid2D& grid, std::vector<cplx> values);

  static std::size_t node_count(const Grid2D& grid) { return 2 * grid.resolution(); }
  /// Grid indices (i, j) of boundary node k.
  static std::pair<std::size_t, std::size_t> node(const Grid2D& grid, std::size_t k);

  static BoundaryTrace sample(const Field& u);
  static BoundaryTrace from_function(const Grid2D& grid, const std::function<cplx(cplx)>& f);

  const Grid2D& grid() const { return grid_; }
  const std::vector<cplx>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  Grid2D grid_;
  std::vector<cplx> values_;
};

struct DirichletOptions {
  /// Fixed energy: solves with V - k^2 in place of V.
  double energy_k = 0.0;
  /// Reject systems whose 1-norm condition estimate exceeds this.
  double collision_threshold = 1e12;
  double residual_tol = 1e-10;
};

struct DirichletDiagnostics {
  std::size_t unknowns = 0;
  double relative_residual = 0.0;
  double condition_estimate = 0.0;
  std::size_t refinement_steps = 0;
};

/// Five-point discretization on the Omega nodes of
///   (grad + iA)^2 u - V u = Delta u + 2i A.grad u + i (div A) u - |A|^2 u - V u,
/// written in flux form: along each axis the first-order part is
/// i (A_{+1/2} u_{+1} - A_{-1/2} u_{-1}) / h with midpoint averages of A.
/// That is a central difference of order h^2 and it makes the scheme the
/// exact Euler-Lagrange equation of dn_pairing, so discrete solutions satisfy
/// the weak form to rounding. V may be complex here (manufactured tests).
/// Factorization happens once; solve() can be called for many traces.
class DirichletSolver {
 public:
  DirichletSolver(const Field& a, const Field& v, const DirichletOptions& opts = {});
  DirichletSolver(const PotentialSet& p, const DirichletOptions& opts = {});
  ~DirichletSolver();
  DirichletSolver(DirichletSolver&&) noexcept;
  DirichletSolver& operator=(DirichletSolver&&) noexcept;

  /// Field equal to the solution on the Omega nodes and 0 elsewhere.
  Field solve(const BoundaryTrace& f, DirichletDiagnostics* diag = nullptr) const;

  double condition_estimate() const;
  std::size_t unknowns() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Field solve_dirichlet(const PotentialSet& p, const BoundaryTrace& f, const DirichletOptions& opts = {},
                      DirichletDiagnostics* diag = nullptr);

struct DnPairing {
  cplx value{0.0, 0.0};
  std::string quadrature;
};

/// <Lambda_V f, Psi> = int_Omega (|A|^2 + V - k^2) u conj(Psi) + grad u . grad conj(Psi)
///                      + i A . (u grad conj(Psi) - conj(Psi) grad u),
/// with node trapezoid weights for the zero-order term and edge differences
/// (midpoint values of A, u, Psi; half weight on boundary edges) for the rest.
DnPairing dn_pairing(const Field& u, const Field& psi, const PotentialSet& p, double energy_k = 0.0);

/// Same pairing for raw (possibly complex) V.
DnPairing dn_pairing(const Field& u, const Field& psi, const Field& a, const Field& v,
                     double energy_k = 0.0);

/// Trapezoid quadrature of F over closed Omega.
cplx integrate_omega(const Field& f);

struct AlessandriniOptions {
  CgoOptions cgo{0.5, 1e-12, 200, true};
  DirichletOptions dirichlet{};
  /// Guards the relative residual against 0/0.
  double epsilon = 1e-300;
};

struct AlessandriniResult {
  cplx lhs{0.0, 0.0};
  cplx rhs{0.0, 0.0};
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double pde_residual_1 = 0.0;
  double pde_residual_2 = 0.0;
};

/// LHS = dn_pairing(u1, u2; P1) - dn_pairing(u~, u2; P2), u~ solving the P2
/// Dirichlet problem with the trace of u1; RHS = int_Omega (V1 - V2) u1 conj(u2).
/// u1 is the sign + CGO solution for P1, u2 the sign - solution for P2.
AlessandriniResult alessandrini_residual(const PotentialSet& p1, const PotentialSet& p2, double tau,
                                         cplx x, const AlessandriniOptions& opts = {});

/// Pairings <Lambda_V f_m, u_n> over the boundary Fourier basis
/// f_m(t) = exp(2 pi i m t / perimeter), m = -modes..modes, with u_n the
/// solution for f_n. Row-major, (2 modes + 1)^2 entries.
std::vector<cplx> dn_matrix(const PotentialSet& p, int modes, const DirichletOptions& opts = {});

}  // namespace cgolab
