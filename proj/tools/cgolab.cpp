// Command-line driver for the CGO lab experiments.
#include <CLI11.hpp>

#include <iostream>

#include "cgolab/errors.hpp"
#include "cgolab/fft.hpp"
#include "cgolab/harness/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Magnetic CGO lab: spectral operators, CGO solutions, reconstruction"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = "out";
  std::size_t threads = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::vector<std::string> overrides;
  bool measure = false;

  app.add_option("--config", config_path, "Flat key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory for CSV files and manifest.txt");
  app.add_option("--threads", threads, "Worker threads (overrides the config)");
  app.add_option_function<std::uint64_t>(
      "--seed", [&](std::uint64_t s) { seed = s, seed_set = true; }, "Random seed (overrides the config)");
  app.add_option("--set", overrides, "Override one config key, KEY=VALUE (repeatable)");
  app.add_flag("--fft-measure", measure,
               "Let FFTW time candidate plans (faster, but results may differ in the last bits between runs)");

  const std::vector<std::pair<std::string, std::string>> kinds{
      {"norms", "Sobolev, Besov and L2 norms of a field plus transform self-checks"},
      {"mult-decay", "Decay of the oscillatory multiplier in negative Sobolev norms (random bumps)"},
      {"cauchy-selftest", "Wirtinger / Cauchy inverse identities and the gauge phase identity"},
      {"cgo-build", "Fixed-point CGO construction along the tau ladder with operator probes"},
      {"rate-fit", "Fit a log-log decay exponent to a CSV with tau,value columns"},
      {"reconstruct", "Stationary-phase reconstruction of V1 - V2 on a sub-grid of the support box"},
      {"alessandrini-check", "Compare both sides of the integral identity with the Dirichlet solver"},
      {"dn-map", "Boundary pairing matrix and second-order check of the Dirichlet solver"},
  };
  std::string kind;
  for (const auto& [name, help] : kinds) {
    app.add_subcommand(name, help)->callback([&kind, name = name] { kind = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    cgolab::set_plan_rigor(measure ? cgolab::PlanRigor::kMeasure : cgolab::PlanRigor::kEstimate);
    cgolab::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = cgolab::load_config(config_path);
    cgolab::apply_overrides(cfg, overrides);
    cfg.kind = kind;
    if (threads > 0) cfg.threads = threads;
    if (seed_set) cfg.seed = seed;
    const auto summary = cgolab::run_experiment(cfg, out_dir, std::cout);
    std::cout << (summary.all_pass() ? "RESULT: PASS" : "RESULT: FAIL") << " (" << summary.checks.size()
              << " checks, output in " << out_dir << ")\n";
    return summary.all_pass() ? 0 : 1;
  } catch (const cgolab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
