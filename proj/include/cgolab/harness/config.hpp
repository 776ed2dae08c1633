#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cgolab/harness/bump.hpp"

namespace cgolab {

/// Flat experiment configuration. Text format: one `key = value` per line,
/// `#` starts a comment. Bumps are written `cx, cy, radius, amplitude` (V)
/// or `cx, cy, radius, re, im` (A), or `none`; lists are comma separated.
struct ExperimentConfig {
  std::string kind = "norms";
  double side_length = 8.0;
  std::size_t resolution = 1024;
  double s = 0.5;
  std::vector<double> taus{16, 32, 64, 128, 256, 512, 1024};
  double tau = 64.0;  // single-tau experiments (alessandrini)
  cplx x{0.0, 0.0};
  std::optional<BumpSpec> v1 = BumpSpec{{0.0, 0.0}, 1.0, {1.0, 0.0}};
  std::optional<BumpSpec> v2 = std::nullopt;
  std::optional<BumpSpec> a = std::nullopt;
  std::size_t xs_count = 17;
  double tol = 1e-10;
  std::size_t max_iter = 200;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::size_t samples = 20;
  std::size_t probes = 50;
  int band_modes = 6;
  double energy_k = 0.0;
  int dn_modes = 4;
  std::string field = "bump";  // norms: bump | zero
  std::string input;           // rate-fit: CSV with tau,value columns

  /// Sets one key; throws ConfigError for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);

  /// Throws ConfigError when s is outside (0, 1), the grid is invalid or a
  /// bump leaves the support box.
  void validate() const;

  /// Every key with its canonical text value, sorted by key.
  std::map<std::string, std::string> entries() const;

  /// Lebesgue exponents from the contraction estimate: p = 1/(1-s),
  /// q = 4/(3-s), p* = 2/(s+1).
  std::map<std::string, double> derived_exponents() const;
};

ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

/// Parses `key=value` override strings in order.
void apply_overrides(ExperimentConfig& cfg, const std::vector<std::string>& overrides);

}  // namespace cgolab
