#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "cgolab/errors.hpp"
#include "cgolab/harness/bump.hpp"
#include "cgolab/recon.hpp"

using namespace cgolab;

namespace {

Field bump_v(const Grid2D& g) { return make_bump({0.0, 0.0}, 1.0, 1.0, g); }
Field bump_a(const Grid2D& g) { return make_bump({0.1, 0.2}, 0.8, {0.6, 0.3}, g); }

}  // namespace

TEST_CASE("support_subgrid covers the support box") {
  const Grid2D g = make_grid(8.0, 64);
  const auto xs = support_subgrid(g, 5);
  REQUIRE(xs.size() == 25);
  CHECK(xs.front() == cplx(-1.0, -1.0));
  CHECK(xs.back() == cplx(1.0, 1.0));
  CHECK(xs[1] == cplx(-1.0, -0.5));
  CHECK_THROWS_AS(support_subgrid(g, 1), InvalidArgument);
}

TEST_CASE("equal potentials reconstruct to zero") {
  const Grid2D g = make_grid(8.0, 256);
  const PotentialSet p(bump_v(g), bump_a(g));
  const ReconReport r = reconstruct_difference(p, p, 16.0, support_subgrid(g, 3));
  CHECK(r.failures == 0);
  for (const auto& pt : r.points) CHECK(std::abs(pt.recon) <= 1e-10);
  CHECK(r.remainder_w == 0.0);
  CHECK(r.remainder_ww == 0.0);
  for (const auto& u : unwrap_gauge(r, p)) CHECK(std::abs(u) <= 1e-10);
}

TEST_CASE("reconstruction splits into main term and remainders") {
  const Grid2D g = make_grid(8.0, 256);
  const Field a = bump_a(g);
  const PotentialSet p1(bump_v(g), a);
  const PotentialSet p2(make_bump({0.2, -0.1}, 0.7, 0.5, g), a);
  const ReconReport r = reconstruct_difference(p1, p2, 32.0, support_subgrid(g, 3));
  REQUIRE(r.failures == 0);
  for (const auto& pt : r.points) {
    CHECK(std::abs(pt.recon - (pt.main + pt.t_w1 + pt.t_w2 + pt.t_ww)) <= 1e-10 * (1.0 + std::abs(pt.recon)));
    // The main term is the stationary functional of V1 - V2 with weight 1.
    const PhaseContext ctx(g, 32.0, pt.x);
    CHECK(std::abs(pt.main - stationary_T(p1.v() - p2.v(), ctx, p1)) <= 1e-12 * (1.0 + std::abs(pt.main)));
  }
  const RemainderNorms rn = remainder_norms(p1, p2, PhaseContext(g, 32.0, r.points[4].x));
  CHECK(rn.w == Catch::Approx(std::max(std::abs(r.points[4].t_w1), std::abs(r.points[4].t_w2))));
  CHECK(rn.ww == Catch::Approx(std::abs(r.points[4].t_ww)));
}

TEST_CASE("main term approaches the gauged difference as tau grows") {
  const Grid2D g = make_grid(8.0, 1024);
  const Field a = bump_a(g);
  const PotentialSet p1(bump_v(g), a);
  const PotentialSet p2(Field(g), a);
  const Field f = p1.v();
  std::size_t decreasing = 0, total = 0;
  for (const cplx x : support_subgrid(g, 17)) {
    const std::size_t node = g.index(g.nearest_i(x.real()), g.nearest_j(x.imag()));
    const cplx target = std::exp(cplx(0.0, 1.0) * p1.gauge_phase()[node]) * f[node];
    double prev = std::numeric_limits<double>::infinity();
    bool mono = true;
    for (double tau : {16.0, 32.0, 64.0, 128.0}) {
      const double err = std::abs(stationary_T(f, PhaseContext(g, tau, x), p1) - target);
      mono = mono && err < prev;
      prev = err;
    }
    ++total;
    if (mono) ++decreasing;
  }
  // The approach is oscillatory, so a few points bounce between rungs.
  CHECK(static_cast<double>(decreasing) >= 0.9 * static_cast<double>(total));
}

TEST_CASE("gauge unwrap without A is the identity") {
  const Grid2D g = make_grid(8.0, 256);
  const PotentialSet p1 = PotentialSet::electric(bump_v(g));
  const PotentialSet p2 = PotentialSet::zero(g);
  const ReconReport r = reconstruct_difference(p1, p2, 32.0, support_subgrid(g, 3));
  const auto u = unwrap_gauge(r, p1);
  for (std::size_t k = 0; k < u.size(); ++k) CHECK(u[k] == r.points[k].recon);
}

TEST_CASE("reconstruction preconditions") {
  const Grid2D g = make_grid(8.0, 128);
  const PotentialSet p1(bump_v(g), bump_a(g));
  const PotentialSet p2 = PotentialSet::electric(bump_v(g));
  CHECK_THROWS_AS(reconstruct_difference(p1, p2, 16.0, {cplx(0.0, 0.0)}), InvalidArgument);
  CHECK_THROWS_AS(reconstruct_difference(p2, p2, 64.0, {cplx(0.0, 0.0)}), NyquistViolation);
}

TEST_CASE("failed points are recorded, not fatal") {
  // V x 100 does not contract at tau = 1.
  const Grid2D g = make_grid(8.0, 128);
  const PotentialSet p1 = PotentialSet::electric(make_bump({0.0, 0.0}, 1.0, 100.0, g));
  const ReconReport r = reconstruct_difference(p1, PotentialSet::zero(g), 1.0, {cplx(0.0, 0.0)});
  CHECK(r.failures == 1);
  CHECK_FALSE(r.points[0].ok);
  CHECK_FALSE(r.points[0].error.empty());
}

TEST_CASE("unwrapped magnetic reconstruction is nearly real") {
  const Grid2D g = make_grid(8.0, 512);
  const Field a = bump_a(g);
  const PotentialSet p1(bump_v(g), a);
  const PotentialSet p2(Field(g), a);
  const ReconReport r = reconstruct_difference(p1, p2, 64.0, support_subgrid(g, 9));
  REQUIRE(r.failures == 0);
  const auto u = unwrap_gauge(r, p1);
  std::vector<double> im;
  double re_max = 0.0;
  for (const auto& v : u) {
    im.push_back(std::abs(v.imag()));
    re_max = std::max(re_max, std::abs(v.real()));
  }
  std::sort(im.begin(), im.end());
  CHECK(im[im.size() / 2] <= 0.1 * re_max);
  CHECK(median_ratio_deviation(r, p1) <= 0.25);
}
