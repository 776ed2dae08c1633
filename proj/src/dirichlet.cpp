#include "cgolab/dirichlet.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cgolab/errors.hpp"

namespace cgolab {

namespace {

constexpr cplx kI{0.0, 1.0};

using SpMat = Eigen::SparseMatrix<cplx>;
using Vec = Eigen::VectorXcd;

// Trapezoid weight of node index m along one axis of closed Omega.
double trap(std::size_t m, std::size_t first, std::size_t last) {
  return (m == first || m == last) ? 0.5 : 1.0;
}

double l1(const Vec& v) { return v.cwiseAbs().sum(); }

}  // namespace

BoundaryTrace::BoundaryTrace(const Grid2D& grid)
    : grid_(grid), values_(node_count(grid), cplx{0.0, 0.0}) {}

BoundaryTrace::BoundaryTrace(const Grid2D& grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != node_count(grid_)) {
    throw InvalidArgument("boundary trace length does not match the boundary node count");
  }
}

std::pair<std::size_t, std::size_t> BoundaryTrace::node(const Grid2D& grid, std::size_t k) {
  const std::size_t first = grid.omega_first();
  const std::size_t side = grid.omega_last() - first;
  if (k >= 4 * side) throw InvalidArgument("boundary index out of range");
  const std::size_t edge = k / side;
  const std::size_t t = k % side;
  switch (edge) {
    case 0:
      return {first + t, first};
    case 1:
      return {first + side, first + t};
    case 2:
      return {first + side - t, first + side};
    default:
      return {first, first + side - t};
  }
}

BoundaryTrace BoundaryTrace::sample(const Field& u) {
  const Grid2D& g = u.grid();
  const Field p = u.is_physical() ? u : u.to_physical();
  std::vector<cplx> v(node_count(g));
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto [i, j] = node(g, k);
    v[k] = p(i, j);
  }
  return BoundaryTrace(g, std::move(v));
}

BoundaryTrace BoundaryTrace::from_function(const Grid2D& grid, const std::function<cplx(cplx)>& f) {
  std::vector<cplx> v(node_count(grid));
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto [i, j] = node(grid, k);
    v[k] = f(grid.point(i, j));
  }
  return BoundaryTrace(grid, std::move(v));
}

struct DirichletSolver::Impl {
  Grid2D grid;
  std::size_t first = 0, last = 0, n = 0;
  // Couplings from interior rows to boundary nodes: (row, i, j, coefficient).
  struct BoundaryCoupling {
    std::size_t row, i, j;
    cplx coef;
  };
  std::vector<BoundaryCoupling> couplings;
  SpMat matrix;
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  double cond = 0.0;
  double residual_tol = 1e-10;

  explicit Impl(const Grid2D& g) : grid(g) {}

  std::size_t unknown(std::size_t i, std::size_t j) const {
    return (i - first - 1) * n + (j - first - 1);
  }
  bool interior(std::size_t i, std::size_t j) const {
    return i > first && i < last && j > first && j < last;
  }
};

DirichletSolver::DirichletSolver(const Field& a, const Field& v, const DirichletOptions& opts)
    : impl_(std::make_unique<Impl>(a.grid())) {
  require_same_grid(a.grid(), v.grid());
  Impl& s = *impl_;
  const Grid2D& g = s.grid;
  s.first = g.omega_first();
  s.last = g.omega_last();
  s.n = s.last - s.first - 1;
  s.residual_tol = opts.residual_tol;
  const double h = g.spacing();
  const double h2 = h * h;
  const double k2 = opts.energy_k * opts.energy_k;

  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(5 * s.n * s.n);
  for (std::size_t i = s.first + 1; i < s.last; ++i) {
    for (std::size_t j = s.first + 1; j < s.last; ++j) {
      const std::size_t row = s.unknown(i, j);
      const cplx ap = a(i, j);
      const cplx diag = 4.0 + h2 * (std::norm(ap) + v(i, j) - k2);
      trip.emplace_back(row, row, diag);
      // (di, dj, component of A along the axis at the midpoint, +-1 direction)
      const auto couple = [&](std::size_t ni, std::size_t nj, double a_mid, double dir) {
        const cplx coef = -1.0 - dir * kI * h * a_mid;
        if (s.interior(ni, nj)) {
          trip.emplace_back(row, s.unknown(ni, nj), coef);
        } else {
          s.couplings.push_back({row, ni, nj, coef});
        }
      };
      couple(i + 1, j, 0.5 * (ap.real() + a(i + 1, j).real()), 1.0);
      couple(i - 1, j, 0.5 * (ap.real() + a(i - 1, j).real()), -1.0);
      couple(i, j + 1, 0.5 * (ap.imag() + a(i, j + 1).imag()), 1.0);
      couple(i, j - 1, 0.5 * (ap.imag() + a(i, j - 1).imag()), -1.0);
    }
  }
  const auto dim = static_cast<Eigen::Index>(s.n * s.n);
  s.matrix.resize(dim, dim);
  s.matrix.setFromTriplets(trip.begin(), trip.end());
  s.matrix.makeCompressed();

  s.lu.analyzePattern(s.matrix);
  s.lu.factorize(s.matrix);
  if (s.lu.info() != Eigen::Success) {
    throw EigenvalueCollision("Dirichlet operator is singular: " + s.lu.lastErrorMessage());
  }

  double norm1 = 0.0;
  for (Eigen::Index c = 0; c < s.matrix.outerSize(); ++c) {
    double col = 0.0;
    for (SpMat::InnerIterator it(s.matrix, c); it; ++it) col += std::abs(it.value());
    norm1 = std::max(norm1, col);
  }
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> nd;
  double inv1 = 0.0;
  for (int t = 0; t < 3; ++t) {
    Vec r(dim);
    for (Eigen::Index k = 0; k < dim; ++k) r[k] = cplx(nd(rng), nd(rng));
    const Vec y = s.lu.solve(r);
    inv1 = std::max(inv1, l1(y) / l1(r));
  }
  s.cond = norm1 * inv1;
  if (!std::isfinite(s.cond) || s.cond > opts.collision_threshold) {
    std::ostringstream msg;
    msg << "Dirichlet operator is nearly singular (condition estimate " << s.cond
        << "): zero is close to a Dirichlet eigenvalue";
    throw EigenvalueCollision(msg.str());
  }
}

DirichletSolver::DirichletSolver(const PotentialSet& p, const DirichletOptions& opts)
    : DirichletSolver(p.a(), p.v(), opts) {}

DirichletSolver::~DirichletSolver() = default;
DirichletSolver::DirichletSolver(DirichletSolver&&) noexcept = default;
DirichletSolver& DirichletSolver::operator=(DirichletSolver&&) noexcept = default;

double DirichletSolver::condition_estimate() const { return impl_->cond; }
std::size_t DirichletSolver::unknowns() const { return impl_->n * impl_->n; }

Field DirichletSolver::solve(const BoundaryTrace& f, DirichletDiagnostics* diag) const {
  const Impl& s = *impl_;
  require_same_grid(f.grid(), s.grid);
  Field u(s.grid);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto [i, j] = BoundaryTrace::node(s.grid, k);
    u(i, j) = f.values()[k];
  }
  const auto dim = static_cast<Eigen::Index>(s.n * s.n);
  Vec b = Vec::Zero(dim);
  for (const auto& c : s.couplings) b[static_cast<Eigen::Index>(c.row)] -= c.coef * u(c.i, c.j);

  const double bnorm = b.norm();
  Vec x = Vec::Zero(dim);
  double rel = 0.0;
  std::size_t steps = 0;
  if (bnorm > 0.0) {
    x = s.lu.solve(b);
    Vec r = b - s.matrix * x;
    rel = r.norm() / bnorm;
    while (rel > s.residual_tol && steps < 3) {
      x += s.lu.solve(r);
      r = b - s.matrix * x;
      rel = r.norm() / bnorm;
      ++steps;
    }
    if (!(rel <= s.residual_tol)) {
      std::ostringstream msg;
      msg << "Dirichlet solve reached relative residual " << rel << " only";
      throw SolverFailure(msg.str());
    }
  }
  for (std::size_t i = s.first + 1; i < s.last; ++i) {
    for (std::size_t j = s.first + 1; j < s.last; ++j) {
      u(i, j) = x[static_cast<Eigen::Index>(s.unknown(i, j))];
    }
  }
  if (diag != nullptr) {
    diag->unknowns = s.n * s.n;
    diag->relative_residual = rel;
    diag->condition_estimate = s.cond;
    diag->refinement_steps = steps;
  }
  return u;
}

Field solve_dirichlet(const PotentialSet& p, const BoundaryTrace& f, const DirichletOptions& opts,
                      DirichletDiagnostics* diag) {
  return DirichletSolver(p, opts).solve(f, diag);
}

DnPairing dn_pairing(const Field& u, const Field& psi, const Field& a, const Field& v,
                     double energy_k) {
  const Grid2D& g = u.grid();
  require_same_grid(g, psi.grid());
  require_same_grid(g, a.grid());
  require_same_grid(g, v.grid());
  const std::size_t first = g.omega_first();
  const std::size_t last = g.omega_last();
  const double h = g.spacing();
  const double k2 = energy_k * energy_k;

  cplx zero_order{0.0, 0.0};
  cplx edges{0.0, 0.0};
  for (std::size_t i = first; i <= last; ++i) {
    const double wi = trap(i, first, last);
    for (std::size_t j = first; j <= last; ++j) {
      const double wj = trap(j, first, last);
      const cplx pc = std::conj(psi(i, j));
      zero_order += wi * wj * (std::norm(a(i, j)) + v(i, j) - k2) * u(i, j) * pc;
      if (i < last) {
        // Edge along x1, weight from the x2 position.
        const cplx du = u(i + 1, j) - u(i, j);
        const cplx dp = std::conj(psi(i + 1, j)) - pc;
        const double am = 0.5 * (a(i, j).real() + a(i + 1, j).real());
        const cplx um = 0.5 * (u(i + 1, j) + u(i, j));
        const cplx pm = 0.5 * (std::conj(psi(i + 1, j)) + pc);
        edges += wj * (du * dp + kI * h * am * (um * dp - pm * du));
      }
      if (j < last) {
        const cplx du = u(i, j + 1) - u(i, j);
        const cplx dp = std::conj(psi(i, j + 1)) - pc;
        const double am = 0.5 * (a(i, j).imag() + a(i, j + 1).imag());
        const cplx um = 0.5 * (u(i, j + 1) + u(i, j));
        const cplx pm = 0.5 * (std::conj(psi(i, j + 1)) + pc);
        edges += wi * (du * dp + kI * h * am * (um * dp - pm * du));
      }
    }
  }
  return {zero_order * h * h + edges, "trapezoid-nodes+midpoint-edges"};
}

DnPairing dn_pairing(const Field& u, const Field& psi, const PotentialSet& p, double energy_k) {
  return dn_pairing(u, psi, p.a(), p.v(), energy_k);
}

cplx integrate_omega(const Field& f) {
  const Grid2D& g = f.grid();
  const std::size_t first = g.omega_first();
  const std::size_t last = g.omega_last();
  cplx acc{0.0, 0.0};
  for (std::size_t i = first; i <= last; ++i) {
    for (std::size_t j = first; j <= last; ++j) {
      acc += trap(i, first, last) * trap(j, first, last) * f(i, j);
    }
  }
  return acc * g.cell_area();
}

AlessandriniResult alessandrini_residual(const PotentialSet& p1, const PotentialSet& p2, double tau,
                                         cplx x, const AlessandriniOptions& opts) {
  require_same_grid(p1.grid(), p2.grid());
  if ((p1.a() - p2.a()).max_abs() > 1e-12 * std::max(1.0, p1.a().max_abs())) {
    throw InvalidArgument("both potential sets must share the same vector potential A");
  }
  const PhaseContext ctx(p1.grid(), tau, x);
  const CgoSolution s1 = build_cgo(p1, ctx, Sign::kPlus, opts.cgo);
  const CgoSolution s2 = build_cgo(p2, ctx, Sign::kMinus, opts.cgo);
  const Field u1 = cgo_solution_field(s1, p1);
  const Field u2 = cgo_solution_field(s2, p2);

  const Field ut = solve_dirichlet(p2, BoundaryTrace::sample(u1), opts.dirichlet);
  const double k = opts.dirichlet.energy_k;

  AlessandriniResult res;
  res.pde_residual_1 = s1.residual_pde;
  res.pde_residual_2 = s2.residual_pde;
  res.lhs = dn_pairing(u1, u2, p1, k).value - dn_pairing(ut, u2, p2, k).value;
  res.rhs = integrate_omega((p1.v() - p2.v()) * u1 * u2.conj());
  res.abs_residual = std::abs(res.lhs - res.rhs);
  res.rel_residual = res.abs_residual / (std::abs(res.lhs) + std::abs(res.rhs) + opts.epsilon);
  return res;
}

std::vector<cplx> dn_matrix(const PotentialSet& p, int modes, const DirichletOptions& opts) {
  if (modes < 0) throw InvalidArgument("mode count must be non-negative");
  const Grid2D& g = p.grid();
  const DirichletSolver solver(p, opts);
  const std::size_t nb = BoundaryTrace::node_count(g);
  const std::size_t count = static_cast<std::size_t>(2 * modes + 1);
  std::vector<Field> sols;
  sols.reserve(count);
  for (int m = -modes; m <= modes; ++m) {
    std::vector<cplx> vals(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      vals[k] = std::polar(1.0, 2.0 * std::numbers::pi * m * static_cast<double>(k) /
                                    static_cast<double>(nb));
    }
    sols.push_back(solver.solve(BoundaryTrace(g, std::move(vals))));
  }
  std::vector<cplx> out(count * count);
  for (std::size_t r = 0; r < count; ++r) {
    for (std::size_t c = 0; c < count; ++c) {
      out[r * count + c] = dn_pairing(sols[r], sols[c], p, opts.energy_k).value;
    }
  }
  return out;
}

}  // namespace cgolab
