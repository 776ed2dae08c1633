#pragma once

#include <string>
#include <vector>

#include "cgolab/cgo.hpp"

namespace cgolab {

struct ReconOptions {
  CgoOptions cgo{0.5, 1e-10, 200, false};
  std::size_t threads = 1;
};

/// One evaluation point of the reconstruction. The four T values are the
/// terms of T_{(1+w1)(1+conj w2)} = T_1 + T_{w1} + T_{conj w2} + T_{w1 conj w2}.
struct ReconPoint {
  cplx x;
  cplx recon{0.0, 0.0};
  cplx main{0.0, 0.0};
  cplx t_w1{0.0, 0.0};
  cplx t_w2{0.0, 0.0};
  cplx t_ww{0.0, 0.0};
  /// e^{ig}(V1 - V2) and V1 - V2 at the node nearest to x.
  cplx target_gauged{0.0, 0.0};
  double target = 0.0;
  cplx gauge_factor{1.0, 0.0};
  bool ok = true;
  std::string error;
};

struct ReconReport {
  double tau = 0.0;
  std::vector<ReconPoint> points;
  /// ||recon - e^{ig}(V1 - V2)|| / ||e^{ig}(V1 - V2)|| over successful points.
  double rel_l2_error = 0.0;
  /// sup over points of max(|T_{w1}|, |T_{conj w2}|).
  double remainder_w = 0.0;
  /// sup over points of |T_{w1 conj w2}|.
  double remainder_ww = 0.0;
  std::size_t failures = 0;
};

/// count x count uniform sub-grid of the support box, row-major in x1.
std::vector<cplx> support_subgrid(const Grid2D& grid, std::size_t count);

/// Builds w1 (sign +, V1) and w2 (sign -, V2) at every x and evaluates the
/// weighted stationary functional of V1 - V2. Point failures (no
/// contraction, etc.) are recorded and skipped.
ReconReport reconstruct_difference(const PotentialSet& p1, const PotentialSet& p2, double tau,
                                   const std::vector<cplx>& xs, const ReconOptions& opts = {});

struct RemainderNorms {
  double w = 0.0;   // max(|T_{w1}[F](x)|, |T_{conj w2}[F](x)|)
  double ww = 0.0;  // |T_{w1 conj w2}[F](x)|
};

RemainderNorms remainder_norms(const PotentialSet& p1, const PotentialSet& p2,
                               const PhaseContext& ctx, const CgoOptions& opts = {});

/// recon / e^{ig} pointwise (NaN at failed points).
std::vector<cplx> unwrap_gauge(const ReconReport& report, const PotentialSet& p);

/// ||unwrap - (V1 - V2)|| / ||V1 - V2|| over successful points.
double unwrapped_rel_error(const ReconReport& report, const PotentialSet& p);

/// Median of |unwrap/(V1 - V2) - 1| over points with |V1 - V2| >= fraction * max.
double median_ratio_deviation(const ReconReport& report, const PotentialSet& p,
                              double fraction = 0.1);

}  // namespace cgolab
