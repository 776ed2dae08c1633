#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cgolab/dirichlet.hpp"
#include "cgolab/harness/config.hpp"
#include "cgolab/harness/rate_fit.hpp"
#include "cgolab/recon.hpp"

namespace cgolab {

/// Drops every tau above the admissible bound of the grid.
std::vector<double> trim_ladder(const Grid2D& grid, const std::vector<double>& taus);

/// Sorted unique ladder, at least three taus or InvalidArgument.
std::vector<double> usable_ladder(const Grid2D& grid, const std::vector<double>& taus);

// ---- studies: tau ladders of the measured estimates -----------------------

/// ||M_{+tau} F||_{H^-s2} / ||F||_{H^s1} for each field, one fit per field.
std::vector<RateFit> multiplier_decay_study(const std::vector<Field>& fields, double s1, double s2,
                                            const std::vector<double>& taus, cplx x,
                                            std::size_t threads = 1);

/// vdc_sup(F) along the ladder.
RateFit vdc_study(const Field& f, const std::vector<double>& taus, cplx x);

/// tau ||M_{+tau} F||_{B^-1_{2,inf}} / ||F||_{B^1_{2,1}} along the ladder.
std::vector<double> besov_ratio_study(const Field& f, const std::vector<double>& taus, cplx x);

/// ||Delta_psi^-1 F||_{H^s} along the ladder.
RateFit laplacian_inverse_study(const Field& f, const PotentialSet& p, const std::vector<double>& taus,
                                cplx x, double s);

struct ProbeStudy {
  RateFit hs;       // max_F ||S F||_{H^s} / ||F||_{H^s}
  RateFit hs_half;  // same in H^{(1-s)/2}
};

/// Operator-norm probes of S_tau with the given probe fields.
ProbeStudy operator_probe_study(const PotentialSet& p, const std::vector<Field>& probes,
                                const std::vector<double>& taus, cplx x, double s,
                                std::size_t threads = 1);

struct CgoLadderEntry {
  double tau;
  std::size_t iterations;
  double residual_fp;
  double residual_pde;
  double contraction;
  double w_norm;
};

struct CgoLadderStudy {
  std::vector<CgoLadderEntry> entries;
  RateFit w_norm;
};

CgoLadderStudy cgo_ladder_study(const PotentialSet& p, const std::vector<double>& taus, cplx x,
                                Sign sign, const CgoOptions& opts, std::size_t threads = 1);

struct RemainderStudy {
  std::vector<double> taus;
  std::vector<double> sup_w;
  std::vector<double> sup_ww;
  RateFit w;
  RateFit ww;
};

RemainderStudy remainder_study(const PotentialSet& p1, const PotentialSet& p2,
                               const std::vector<double>& taus, const std::vector<cplx>& xs,
                               const ReconOptions& opts);

/// Relative L2 error of the manufactured solution u = e^{x1} (with the
/// potential V = ((grad + iA)^2 u)/u computed analytically, A given) on Omega.
double manufactured_dirichlet_error(const Grid2D& grid, const BumpSpec& a);

// ---- CLI experiment driver -------------------------------------------------

struct Check {
  std::string name;
  double value;
  double threshold;
  bool pass;
  std::string note;
};

struct ExperimentSummary {
  std::vector<Check> checks;
  std::vector<std::filesystem::path> files;
  bool all_pass() const;
};

/// Runs cfg.kind (norms, mult-decay, cauchy-selftest, cgo-build, rate-fit,
/// reconstruct, alessandrini-check, dn-map), writes CSV files and
/// manifest.txt into out_dir and returns the checks. Progress goes to log.
ExperimentSummary run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                                 std::ostream& log);

}  // namespace cgolab
