#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "cgolab/errors.hpp"
#include "cgolab/field.hpp"
#include "cgolab/grid.hpp"

using namespace cgolab;
using Catch::Approx;

namespace {

Field random_field(const Grid2D& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  Field f(g);
  for (auto& v : f.values()) v = {n(rng), n(rng)};
  return f;
}

}  // namespace

TEST_CASE("make_grid spacing and lattice") {
  const Grid2D g = make_grid(8.0, 512);
  CHECK(g.spacing() == 0.015625);
  CHECK(g.cell_area() == 0.015625 * 0.015625);

  const Grid2D s = make_grid(8.0, 16);
  CHECK(s.min_frequency() == Approx(-2.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(std::abs(s.frequency(8)) == Approx(2.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(s.is_nyquist(8));
  CHECK(s.frequency_step() == Approx(2.0 * std::numbers::pi / 8.0));
  CHECK(s.wavenumber(0) == 0);
  CHECK(s.wavenumber(1) == 1);
  CHECK(s.wavenumber(15) == -1);
}

TEST_CASE("make_grid rejects bad parameters") {
  CHECK_THROWS_AS(make_grid(8.0, 100), InvalidArgument);
  CHECK_THROWS_AS(make_grid(8.0, 8), InvalidArgument);
  CHECK_THROWS_AS(make_grid(0.0, 64), InvalidArgument);
  CHECK_THROWS_AS(make_grid(-1.0, 64), InvalidArgument);
}

TEST_CASE("grid nesting of Q, Omega and the support box") {
  const Grid2D g = make_grid(8.0, 64);
  CHECK(g.q_half_width() == 4.0);
  CHECK(g.omega_half_width() == 2.0);
  CHECK(g.support_half_width() == 1.0);
  CHECK(g.in_omega({2.0, -2.0}));
  CHECK_FALSE(g.in_omega({2.01, 0.0}));
  CHECK(g.in_support({1.0, 1.0}));
  CHECK_FALSE(g.in_support({1.0, 1.01}));
  CHECK(g.x1(g.omega_first()) == Approx(-2.0));
  CHECK(g.x1(g.omega_last()) == Approx(2.0));
  CHECK(g.x1(0) == -4.0);
  CHECK(g.nearest_i(0.01) == 32);
}

TEST_CASE("off-center grid") {
  const Grid2D g = make_grid(4.0, 32, {1.0, -1.0});
  CHECK(g.x1(16) == Approx(1.0));
  CHECK(g.x2(16) == Approx(-1.0));
  CHECK(g.in_omega({1.9, -1.9}));
  CHECK(g.in_omega({0.0, 0.0}));
  CHECK_FALSE(g.in_omega({-0.1, 0.5}));
}

TEST_CASE("spectral round trip and Parseval on random fields") {
  for (std::size_t n : {16u, 64u, 256u}) {
    const Grid2D g = make_grid(8.0, n);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const Field f = random_field(g, seed);
      const Field s = f.to_spectral();
      CHECK(s.representation() == Representation::kSpectral);
      CHECK((s.to_physical() - f).l2_norm() / f.l2_norm() <= 1e-12);
      CHECK(std::abs(s.l2_norm() - f.l2_norm()) / f.l2_norm() <= 1e-12);
    }
  }
}

TEST_CASE("spectral coefficients are continuum scaled") {
  // A lattice plane wave has a single coefficient of size L^2.
  const Grid2D g = make_grid(8.0, 32);
  const double k1 = 3 * g.frequency_step(), k2 = -2 * g.frequency_step();
  const Field f = Field::from_function(g, [&](cplx z) {
    return std::exp(cplx(0.0, k1 * z.real() + k2 * z.imag()));
  });
  const Field s = f.to_spectral();
  CHECK(std::abs(s(3, 32 - 2)) == Approx(64.0).epsilon(1e-12));
  double rest = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k != g.index(3, 30)) rest = std::max(rest, std::abs(s[k]));
  }
  CHECK(rest <= 1e-10);

  // A compactly supported Gaussian: F^(0) approximates its integral 2 pi sigma^2.
  const double sigma = 0.3;
  const Field gauss = Field::from_function(g, [&](cplx z) {
    return cplx(std::exp(-std::norm(z) / (2 * sigma * sigma)), 0.0);
  });
  CHECK(std::abs(gauss.to_spectral()[0]) ==
        Approx(2 * std::numbers::pi * sigma * sigma).epsilon(1e-11));
}

TEST_CASE("field arithmetic and reductions") {
  const Grid2D g = make_grid(8.0, 32);
  const Field a = random_field(g, 7);
  const Field b = random_field(g, 8);
  CHECK(((a + b) - b - a).max_abs() <= 1e-14);
  CHECK(((2.0 * a) - a - a).max_abs() == 0.0);
  const Field ab = a * b;
  CHECK(std::abs(ab[5] - a[5] * b[5]) <= 1e-15);
  CHECK((a.conj().conj() - a).max_abs() == 0.0);
  CHECK(a.real_part()[3].imag() == 0.0);
  CHECK(Field::constant(g, {2.0, 1.0}).mean() == cplx(2.0, 1.0));
  // ||1||_2 on Q is L.
  CHECK(Field::constant(g, 1.0).l2_norm() == Approx(8.0).epsilon(1e-14));
  // Box norm: 9 x 9 nodes with spacing 0.25 on [-1, 1]^2.
  CHECK(l2_norm_on_box(Field::constant(g, 1.0), 1.0) == Approx(std::sqrt(81 * 0.0625)));
}

TEST_CASE("mixing representations or grids is rejected") {
  const Grid2D g = make_grid(8.0, 32);
  const Grid2D h = make_grid(8.0, 64);
  Field a(g);
  CHECK_THROWS_AS(a += Field(h), InvalidArgument);
  CHECK_THROWS_AS(a += Field(g, Representation::kSpectral), InvalidArgument);
}
