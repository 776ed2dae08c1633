#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cgolab/errors.hpp"
#include "cgolab/harness/bump.hpp"
#include "cgolab/harness/config.hpp"
#include "cgolab/harness/experiment.hpp"
#include "cgolab/harness/io.hpp"
#include "cgolab/harness/rate_fit.hpp"

using namespace cgolab;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cgolab_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("make_bump examples") {
  const Grid2D g = make_grid(8.0, 64);
  const Field b = make_bump({0.0, 0.0}, 1.0, {2.0, -1.0}, g);
  CHECK(std::abs(b(32, 32) - cplx(2.0, -1.0)) <= 1e-15);
  for (std::size_t i = 0; i < 64; ++i) {
    for (std::size_t j = 0; j < 64; ++j) {
      if (std::abs(g.point(i, j)) >= 1.0) CHECK(b(i, j) == cplx(0.0, 0.0));
    }
  }
  CHECK_THROWS_AS(make_bump({0.5, 0.0}, 1.0, 1.0, g), SupportViolation);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 50; ++k) {
    const BumpSpec s = random_bump_spec(g, rng);
    CHECK((s.radius >= 0.75 && s.radius <= 1.0));
    CHECK_NOTHROW(make_bump(s, g));
  }
}

TEST_CASE("bump spectrum decays faster than any power") {
  // sup |F^(xi)| |xi|^8 over the lattice: the peak sits near |xi| ~ 175, so it
  // is resolution-independent once aliasing near Nyquist stays below it.
  std::vector<double> sups, tails;
  for (std::size_t n : {1024u, 2048u}) {
    const Grid2D g = make_grid(8.0, n);
    const Field s = make_bump({0.0, 0.0}, 1.0, 1.0, g).to_spectral();
    const double top = 0.9 * g.max_frequency();
    double sup = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double r = std::hypot(g.frequency(i), g.frequency(j));
        const double v = std::abs(s(i, j)) * std::pow(r, 8);
        sup = std::max(sup, v);
        if (r >= top) tail = std::max(tail, v);
      }
    }
    sups.push_back(sup);
    tails.push_back(tail);
  }
  CHECK(sups[1] == Approx(sups[0]).epsilon(0.05));
  CHECK(tails[1] <= 0.02 * sups[1]);
}

TEST_CASE("random_band_limited has unit norm and no mean") {
  const Grid2D g = make_grid(8.0, 64);
  std::mt19937_64 rng(2);
  const Field f = random_band_limited(g, 5, rng);
  CHECK(f.l2_norm() == Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(f.mean()) <= 1e-14);
}

TEST_CASE("fit_rate examples") {
  const RateFit exact = fit_rate({1.0, 2.0, 4.0, 8.0}, {3.0, 1.5, 0.75, 0.375});
  CHECK(exact.exponent == Approx(1.0).epsilon(1e-12));
  CHECK(exact.intercept == Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(exact.r2 == Approx(1.0).epsilon(1e-12));
  const RateFit flat = fit_rate({16.0, 32.0, 64.0}, {2.0, 2.0, 2.0});
  CHECK(flat.exponent == Approx(0.0).margin(1e-14));
  CHECK(flat.r2 == 1.0);
  CHECK_THROWS_AS(fit_rate({1.0, 2.0}, {1.0, 2.0}), InvalidArgument);
  CHECK_THROWS_AS(fit_rate({1.0, 2.0, 4.0}, {1.0, 0.0, 2.0}), InvalidArgument);
  CHECK_THROWS_AS(fit_rate({2.0, 2.0, 2.0}, {1.0, 2.0, 3.0}), InvalidArgument);
  CHECK_THROWS_AS(fit_rate({1.0, 2.0, 4.0}, {1.0, 2.0}), InvalidArgument);
}

TEST_CASE("ladders") {
  const Grid2D g = make_grid(8.0, 1024);
  const std::vector<double> ladder{16, 32, 64, 128, 256, 512, 1024};
  CHECK(trim_ladder(g, ladder) == std::vector<double>{16, 32, 64, 128});
  CHECK(usable_ladder(g, {64, 16, 32, 16}) == std::vector<double>{16, 32, 64});
  CHECK_THROWS_AS(usable_ladder(make_grid(8.0, 64), ladder), InvalidArgument);
}

TEST_CASE("configuration parsing") {
  ExperimentConfig cfg;
  cfg.set("N", "256");
  cfg.set("taus", "16, 32,64");
  cfg.set("a", "0.1, 0.2, 0.8, 0.6, 0.3");
  cfg.set("v2", "none");
  CHECK(cfg.resolution == 256);
  CHECK(cfg.taus == std::vector<double>{16, 32, 64});
  REQUIRE(cfg.a.has_value());
  CHECK(cfg.a->amplitude == cplx(0.6, 0.3));
  CHECK_FALSE(cfg.v2.has_value());
  CHECK_THROWS_AS(cfg.set("bogus", "1"), ConfigError);
  CHECK_THROWS_AS(cfg.set("N", "-4"), ConfigError);
  CHECK_THROWS_AS(cfg.set("a", "0.1, 0.2"), ConfigError);

  cfg.set("s", "1.2");
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.set("s", "0.5");
  CHECK_NOTHROW(cfg.validate());
  cfg.set("v1", "0.5, 0.0, 1.0, 1.0");
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  const auto d = ExperimentConfig{}.derived_exponents();
  CHECK(d.at("p") == Approx(2.0));
  CHECK(d.at("q") == Approx(1.6));
  CHECK(d.at("p_star") == Approx(4.0 / 3.0));
}

TEST_CASE("config files and overrides") {
  const fs::path dir = scratch("config");
  write_text(dir / "run.conf", "# comment\nkind = reconstruct\nN = 128  # trailing\n\ntau = 32\n");
  ExperimentConfig cfg = load_config((dir / "run.conf").string());
  CHECK(cfg.kind == "reconstruct");
  CHECK(cfg.resolution == 128);
  CHECK(cfg.tau == 32.0);
  apply_overrides(cfg, {"N=64", "seed = 9"});
  CHECK(cfg.resolution == 64);
  CHECK(cfg.seed == 9);
  CHECK_THROWS_AS(apply_overrides(cfg, {"N"}), ConfigError);
  write_text(dir / "bad.conf", "N 128\n");
  CHECK_THROWS_AS(load_config((dir / "bad.conf").string()), ConfigError);
  CHECK_THROWS_AS(load_config((dir / "missing.conf").string()), ConfigError);
  // entries() round-trips through set().
  ExperimentConfig copy;
  for (const auto& [k, v] : cfg.entries()) copy.set(k, v);
  CHECK(copy.entries() == cfg.entries());
}

TEST_CASE("binary and CSV field IO") {
  const fs::path dir = scratch("io");
  const Grid2D g = make_grid(8.0, 32);
  std::mt19937_64 rng(3);
  const Field f = random_band_limited(g, 4, rng);
  write_field_binary(f, dir / "f.bin");
  const Field back = read_field_binary(dir / "f.bin");
  CHECK((back - f).max_abs() == 0.0);
  CHECK(fs::file_size(dir / "f.bin") == 24 + 16 * 32 * 32);
  write_field_binary(f.to_spectral(), dir / "s.bin");
  CHECK_FALSE(read_field_binary(dir / "s.bin").is_physical());

  write_field_csv(f, dir / "f.csv");
  const std::string csv = slurp(dir / "f.csv");
  CHECK(csv.rfind("x1,x2,re,im\r\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 32 * 32);

  write_text(dir / "trunc.bin", slurp(dir / "f.bin").substr(0, 100));
  CHECK_THROWS_AS(read_field_binary(dir / "trunc.bin"), Error);
}

TEST_CASE("content hash is FNV-1a") {
  const fs::path dir = scratch("hash");
  write_text(dir / "empty", "");
  write_text(dir / "a", "a");
  CHECK(content_hash(dir / "empty") == "cbf29ce484222325");
  CHECK(content_hash(dir / "a") == "af63dc4c8601ec8c");
}

TEST_CASE("CSV writer and rate CSV reader") {
  const fs::path dir = scratch("csv");
  {
    CsvWriter w(dir / "r.csv", {"value", "tau", "note"});
    w.cell(0.5).cell(16.0).cell(std::string("a,b")).end_row();
    w.cell(0.25).cell(32.0).cell(std::string("plain")).end_row();
    w.cell(0.125).cell(64.0).cell(std::string("x")).end_row();
  }
  {
    CsvWriter w(dir / "short.csv", {"a", "b"});
    CHECK_THROWS_AS(w.cell(1.0).end_row(), Error);
  }
  const std::string text = slurp(dir / "r.csv");
  CHECK(text.find("\"a,b\"") != std::string::npos);
  const auto pts = read_rate_csv(dir / "r.csv");
  REQUIRE(pts.size() == 3);
  CHECK(pts[1] == std::pair<double, double>{32.0, 0.25});
  CHECK(fit_rate(pts).exponent == Approx(1.0));
  write_text(dir / "bad.csv", "a,b\n1,2\n");
  CHECK_THROWS_AS(read_rate_csv(dir / "bad.csv"), Error);
}

TEST_CASE("manifest lists sorted keys and file hashes") {
  const fs::path dir = scratch("manifest");
  write_text(dir / "data.csv", "a");
  Manifest m;
  m.set("zeta", "1");
  m.set("alpha", 2.5);
  m.add_file(dir / "data.csv");
  m.write(dir / "manifest.txt");
  CHECK(slurp(dir / "manifest.txt") == "alpha = 2.5\nzeta = 1\nfile.data.csv = fnv1a64:af63dc4c8601ec8c\n");
}

TEST_CASE("run_experiment: norms") {
  ExperimentConfig cfg;
  cfg.resolution = 64;
  cfg.field = "zero";
  std::ostringstream log;
  const fs::path dir = scratch("norms");
  const ExperimentSummary s = run_experiment(cfg, dir, log);
  CHECK(s.all_pass());
  CHECK(fs::exists(dir / "norms.csv"));
  CHECK(fs::exists(dir / "manifest.txt"));
  cfg.kind = "no-such-kind";
  CHECK_THROWS_AS(run_experiment(cfg, scratch("norms_bad"), log), ConfigError);
}

TEST_CASE("run_experiment is deterministic") {
  ExperimentConfig cfg;
  cfg.kind = "mult-decay";
  cfg.resolution = 512;
  cfg.samples = 3;
  cfg.seed = 7;
  std::ostringstream log;
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const ExperimentSummary sa = run_experiment(cfg, a, log);
  run_experiment(cfg, b, log);
  CHECK(sa.all_pass());
  CHECK(content_hash(a / "mult_decay.csv") == content_hash(b / "mult_decay.csv"));
  const std::string manifest = slurp(a / "manifest.txt");
  CHECK(manifest.find("config.seed = 7") != std::string::npos);
  CHECK(manifest.find("derived.p = 2") != std::string::npos);
  CHECK(manifest.find("file.mult_decay.csv = fnv1a64:" + content_hash(a / "mult_decay.csv")) != std::string::npos);
}

TEST_CASE("run_experiment: equal potentials reconstruct to zero") {
  ExperimentConfig cfg;
  cfg.kind = "reconstruct";
  cfg.resolution = 128;
  cfg.taus = {8, 16};
  cfg.xs_count = 3;
  cfg.v2 = cfg.v1;
  std::ostringstream log;
  const ExperimentSummary s = run_experiment(cfg, scratch("recon_same"), log);
  CHECK(s.all_pass());
}
